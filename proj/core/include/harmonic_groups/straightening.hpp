#pragma once

// Maps between nilpotent catalog lattices, their Abelian defect, the
// homogenized linearization L_ab and coarse harmonic coordinates.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "harmonic_groups/group.hpp"
#include "harmonic_groups/rational.hpp"
#include "harmonic_groups/subgroup.hpp"

namespace hg {

/// Integer matrix. On Z^d it maps to Z^rows; on H3 it must be 2 x 2 and acts
/// as the automorphism lifting M to the central coordinate.
struct LatticeLinear {
  std::vector<std::vector<std::int64_t>> matrix;
};

/// x -> by * x.
struct Translate {
  Element by;
};

enum class ShearKind { kSqrtFloor, kMod2, kZero };

/// x[axis] += g(x[of]) on Abelianized coordinates, with g from the catalog:
/// floor(sqrt|n|), n mod 2 (in {0, 1}), or 0.
struct Shear {
  std::size_t axis = 0;
  std::size_t of = 0;
  ShearKind kind = ShearKind::kZero;
};

/// new[i] = old[permutation[i]] on Abelianized coordinates.
struct Swap {
  std::vector<std::size_t> permutation;
};

using QiPrimitive = std::variant<LatticeLinear, Translate, Shear, Swap>;

std::int64_t shear_profile(ShearKind kind, std::int64_t n);
const char* to_string(ShearKind kind);

/// Composable map between Z^d / H3 lattices. A trailing translation is appended
/// when needed so that identity maps to identity.
class QiMapExpr {
 public:
  QiMapExpr(const Group& source, std::vector<QiPrimitive> pipeline);

  const Group& source() const { return stages_.front(); }
  const Group& target() const { return stages_.back(); }
  const std::vector<QiPrimitive>& pipeline() const { return pipeline_; }
  /// True when every stage is a group homomorphism.
  bool is_homomorphism() const;

  Element operator()(const Element& x) const;

 private:
  Element apply_raw(const Element& x) const;

  std::vector<QiPrimitive> pipeline_;
  std::vector<Group> stages_;  // stages_[i] is the domain of pipeline_[i]
};

Element eval_qi(const QiMapExpr& psi, const Element& x);

enum class ProbeShape {
  kBall,         // all x, y with |x|, |y| <= radius
  kAxisSegment,  // x, y on the line {e_axis^k : |k| <= radius}
};

struct DefectProbe {
  ProbeShape shape = ProbeShape::kBall;
  int radius = 8;
  std::size_t axis = 0;
  /// Exhaustive when the pair count is at most this, else a seeded uniform subsample.
  std::uint64_t pair_budget = 10'000'000;
  std::uint64_t seed = 0;
};

struct DefectWitness {
  Element x;
  Element y;
  std::vector<std::int64_t> defect;  // A(xy) - A(x) - A(y)
};

struct DefectReport {
  std::int64_t max_defect = 0;  // sup-norm
  std::optional<DefectWitness> argmax;
  /// (r, max defect over pairs with both lengths <= r), nondecreasing.
  std::vector<std::pair<int, std::int64_t>> growth_curve;
  DefectProbe probe;
  std::uint64_t pairs_evaluated = 0;
  /// A sampled maximum is only a lower bound on the true supremum.
  bool exhaustive = true;

  std::int64_t max_within(int r) const;
};

/// delta(x, y) = pi_M(Psi(xy)) - pi_M(Psi(x)) - pi_M(Psi(y)).
std::vector<std::int64_t> defect_at(const QiMapExpr& psi, const Element& x, const Element& y);

DefectReport abelian_defect(const QiMapExpr& psi, const DefectProbe& probe);

using ScalarMap = std::function<Rational(const Element&)>;

struct Homogenization {
  Rational a_bar;
  Rational error_bound;  // D / 2^k_used
  int k_used = 0;
  bool converged = false;
  /// a_k = a(x^(2^k)) / 2^k for k = 0 .. k_used + 1 (or k_max when not converged).
  std::vector<Rational> sequence;
};

inline constexpr int kDefaultHomogenizationDepth = 40;

/// Returns a_{k*} for the first k* with |a_{k*+1} - a_{k*}| <= tolerance, or
/// a_{k_max}. Throws ResourceError when x^(2^k) overflows.
Homogenization homogenize(const Group& group, const ScalarMap& a, const Element& x, int k_max,
                          const Rational& defect_bound, const Rational& tolerance = Rational(1, 1'000'000'000));

/// a_k for k = 0..k_max without early stopping.
std::vector<Rational> homogenization_sequence(const Group& group, const ScalarMap& a, const Element& x, int k_max);

struct LinearizationOptions {
  int k_max = kDefaultHomogenizationDepth;
  /// Ball radius of the defect probe; 0 picks the largest radius <= 32 whose
  /// ball has at most 3000 elements.
  int probe_radius = 0;
  bool enforce_gate = true;
  std::uint64_t seed = 0;
};

struct Linearization {
  RationalMatrix l_ab;   // R_M x R_N
  RationalMatrix t_psi;  // (L_ab^-1)^T, so phi -> T_psi phi acts on column vectors
  Rational residual_bound;  // sup over the probe ball of |A(x) - L_ab pi_N(x)|
  int k_used = 0;
  DefectReport gate;
};

/// Divergence gate: with D(r) the max defect over ball(r), reject when
/// D(r) > 1.5 D(floor(r / 4)) + 1.
bool defect_gate_rejects(const DefectReport& report);

/// Throws DivergenceError when the gate rejects and SingularError when L_ab is
/// not invertible.
Linearization extract_linearization(const QiMapExpr& psi, const LinearizationOptions& options = {});

/// F(x) = basis * [x] on a nilpotent group, or basis * [h] for x = h g_j when
/// built over a finite-index subgroup.
class HarmonicCoordinates {
 public:
  static HarmonicCoordinates core(const Group& group, RationalMatrix basis);
  static HarmonicCoordinates extended(const MarkedSubgroup& subgroup, RationalMatrix basis);

  const Group& domain() const { return domain_; }
  const RationalMatrix& basis() const { return basis_; }
  const std::optional<MarkedSubgroup>& subgroup() const { return subgroup_; }
  bool is_extended() const { return subgroup_.has_value(); }

  RationalVector operator()(const Element& x) const;

  /// Basis rows psi_i = phi_i o L^-1 on the target (P = Q L^-1), on `target`
  /// (a group) or over a finite-index subgroup of the target.
  HarmonicCoordinates transported(const Linearization& lin, const Group& target) const;
  HarmonicCoordinates transported(const Linearization& lin, const MarkedSubgroup& target) const;

 private:
  HarmonicCoordinates(Group domain, RationalMatrix basis, std::optional<MarkedSubgroup> subgroup);

  Group domain_;
  RationalMatrix basis_;
  std::optional<MarkedSubgroup> subgroup_;
};

RationalVector coordinates(const HarmonicCoordinates& f, const Element& x);

/// Phi(n g_j) = from_model(Psi(to_model(n))) * offsets[j] between groups with
/// finite-index nilpotent cores; offsets[0] must be the identity so Phi|_N = Psi.
class ExtendedQiMap {
 public:
  ExtendedQiMap(MarkedSubgroup source_core, MarkedSubgroup target_core, QiMapExpr core_map,
                std::vector<Element> coset_offsets);

  const Group& source() const { return source_core_.parent(); }
  const Group& target() const { return target_core_.parent(); }
  const MarkedSubgroup& source_core() const { return source_core_; }
  const MarkedSubgroup& target_core() const { return target_core_; }
  const QiMapExpr& core_map() const { return core_map_; }
  const std::vector<Element>& coset_offsets() const { return offsets_; }

  Element operator()(const Element& x) const;

 private:
  MarkedSubgroup source_core_;
  MarkedSubgroup target_core_;
  QiMapExpr core_map_;
  std::vector<Element> offsets_;
};

struct DeviationReport {
  Rational sup_deviation;
  Element argmax;
  std::size_t points = 0;
};

/// sup over the source ball of |F_tgt(map(x)) - F_src(x)|.
DeviationReport straightening_deviation(const QiMapExpr& psi, const HarmonicCoordinates& f_src,
                                        const HarmonicCoordinates& f_tgt, int radius);
DeviationReport straightening_deviation(const ExtendedQiMap& phi, const HarmonicCoordinates& f_src,
                                        const HarmonicCoordinates& f_tgt, int radius);

/// Extra deviation allowed on the extended groups: L_M * C_1 with L_M the
/// Lipschitz constant of F_M on the target model generators and C_1 the
/// longest core part of a coset offset.
struct ExtensionSlack {
  Rational lipschitz;
  int c1 = 0;
  Rational slack;
};

ExtensionSlack extension_slack(const ExtendedQiMap& phi, const HarmonicCoordinates& f_tgt);

struct CoarseAffinityReport {
  Rational c_hat;                 // sup over ball of |A(x) - (L pi_N(x) + v0)|
  Rational implied_defect_bound;  // 3 c_hat + |v0|
  std::int64_t measured_defect = 0;  // over x, y, xy all in the ball
  bool consistent = true;            // measured <= implied
};

CoarseAffinityReport check_coarsely_affine(const QiMapExpr& psi, const RationalMatrix& l, const RationalVector& v0,
                                           int radius);

}  // namespace hg
