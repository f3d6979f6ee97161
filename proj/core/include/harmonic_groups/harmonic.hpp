#pragma once

#include <map>
#include <optional>
#include <vector>

#include "harmonic_groups/affine.hpp"
#include "harmonic_groups/measure.hpp"
#include "harmonic_groups/subgroup.hpp"
#include "harmonic_groups/walks.hpp"

namespace hg {

/// sum_g mu(g) f(k g) - f(k), exact.
RationalVector harmonic_residual(const AffineHarmonic& f, const FiniteMeasure& mu, const Element& k);

/// Largest sup-norm residual over the points.
Rational verify_harmonic(const AffineHarmonic& f, const FiniteMeasure& mu, const std::vector<Element>& points);

/// Gradient sup-norm ||grad_S f||, with Euclidean norm on the value space (so
/// k = 2 is the complex modulus). Squared norms are kept exactly.
struct LipschitzReport {
  int radius = 0;
  Rational exact_squared;      // max_s |phi [s]|^2
  Rational empirical_squared;  // max over x in ball(radius), s in S of |f(x s) - f(x)|^2
  double exact = 0;
  double empirical = 0;
};

LipschitzReport lipschitz_seminorm(const AffineHarmonic& f, const GeneratingSet& s, int radius);

/// One report per radius 1..max_radius from a single ball enumeration.
std::vector<LipschitzReport> lipschitz_profile(const AffineHarmonic& f, const GeneratingSet& s, int max_radius);

/// Recovers phi from f on S u {e} by solving phi [s] = f(s) - f(e) exactly.
/// nullopt when the values are not those of an affine function. Throws
/// ValidationError naming the undetected directions when the Abelianized
/// generators do not span.
std::optional<RationalMatrix> theta_gradient(const std::map<Element, RationalVector>& values,
                                             const GeneratingSet& s);

/// Closed table of functions accepted by translate_defect. Only the affine
/// entries are harmonic; the others exist to falsify checks.
class TestFunction {
 public:
  static TestFunction affine(AffineHarmonic f);
  /// x -> x_axis^2 on Z^d.
  static TestFunction square_of_coordinate(const Group& group, std::size_t axis);

  const Group& group() const { return group_; }
  RationalVector operator()(const Element& x) const;

 private:
  enum class Kind { kAffine, kSquare };
  TestFunction(Kind kind, Group group, std::optional<AffineHarmonic> affine, std::size_t axis);

  Kind kind_;
  Group group_;
  std::optional<AffineHarmonic> affine_;
  std::size_t axis_ = 0;
};

/// sup_{x in ball(r)} |(g.f - f)(x) - (g.f - f)(e)| with (g.f)(x) = f(g^-1 x).
Rational translate_defect(const TestFunction& f, const Element& g, int radius);

/// Precomposition with the inclusion: (c, phi iota_ab) on the subgroup model.
AffineHarmonic restrict_affine(const AffineHarmonic& f, const MarkedSubgroup& h);

/// Point of the linear boundary: phi divided by the absolute value of its
/// first nonzero entry, so that entry becomes +-1 and the direction of phi is
/// kept. nullopt for phi = 0.
std::optional<RationalVector> linear_boundary_point(const RationalVector& phi);

enum class DeltaVerdict { kZero, kOne, kInconclusive };

const char* to_string(DeltaVerdict v);

struct Hf1Report {
  int rank = 0;
  DeltaVerdict delta = DeltaVerdict::kInconclusive;
  /// dim = rank + 1 - delta; when inconclusive the interval [rank, rank + 1].
  int dim_low = 0;
  int dim_high = 0;
  bool exact = false;
  std::vector<double> drift;
  std::vector<double> drift_standard_error;

  std::optional<int> dim() const;
};

inline constexpr double kAcceptSigma = 3.0;
inline constexpr double kRejectSigma = 5.0;

/// dim HF_1(G, mu) = R + 1 - delta(mu_N). Exact when the core is all of G,
/// otherwise from the Monte Carlo drift of the hitting measure on the core.
Hf1Report dim_hf1(const MarkedSubgroup& core, const WalkConfig& cfg);

/// |f(g^n) - f(e)| (sup-norm) for n = 1..n_max.
std::vector<Rational> liouville_growth(const AffineHarmonic& f, const Element& g, int n_max);

}  // namespace hg
