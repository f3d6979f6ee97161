#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "harmonic_groups/group.hpp"
#include "harmonic_groups/rational.hpp"

namespace hg {

struct Atom {
  Element element;
  Rational weight;
};

/// Finitely supported probability measure with exact rational weights.
/// Atoms are kept sorted by element so the support order is canonical.
class FiniteMeasure {
 public:
  /// Throws ValidationError unless weights are positive, support elements are
  /// distinct, and the weights sum to exactly one.
  FiniteMeasure(const Group& group, std::vector<Atom> atoms);

  /// Uniform measure on the listed elements (duplicates rejected).
  static FiniteMeasure uniform(const Group& group, const std::vector<Element>& support);
  static FiniteMeasure point_mass(const Group& group, const Element& at);
  /// Simple random walk: uniform on the generating set.
  static FiniteMeasure simple_random_walk(const GeneratingSet& s);

  const Group& group() const { return group_; }
  std::span<const Atom> atoms() const { return atoms_; }
  Rational weight_of(const Element& e) const;

 private:
  Group group_;
  std::vector<Atom> atoms_;
};

/// m_ab(mu) = sum_g mu(g) [g], exact.
RationalVector drift_abelian(const FiniteMeasure& mu);

struct SasReport {
  bool symmetric = false;
  /// Smallest r such that every generator is a product of at most r support
  /// elements; this certifies that the support semigroup is the whole group.
  std::optional<int> adapted_witness_radius;
  /// Always true: finite support has every exponential moment.
  bool smooth = true;
  /// sum_g mu(g) |g|_S.
  Rational first_moment;
};

SasReport check_sas(const FiniteMeasure& mu, const GeneratingSet& s, int probe_radius);

/// Exact sum_g mu(g) |g|_S. Throws CertificationError if a support element is
/// longer than `search_radius`.
Rational first_moment(const FiniteMeasure& mu, const GeneratingSet& s, int search_radius = 64);

/// (mu * nu)(z) = sum_{gh = z} mu(g) nu(h).
FiniteMeasure convolve(const FiniteMeasure& mu, const FiniteMeasure& nu);

/// Deterministic pseudo-random stream addressed by (seed, stream index).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over the canonical support order.
class MeasureSampler {
 public:
  explicit MeasureSampler(const FiniteMeasure& mu);

  const Element& draw(RngStream& rng) const;
  const Group& group() const { return group_; }

 private:
  Group group_;
  std::vector<Element> elements_;
  std::vector<double> cumulative_;
};

Element sample(const FiniteMeasure& mu, RngStream& rng);

}  // namespace hg
