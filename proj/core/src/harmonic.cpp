#include "harmonic_groups/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "harmonic_groups/errors.hpp"

namespace hg {

RationalVector harmonic_residual(const AffineHarmonic& f, const FiniteMeasure& mu, const Element& k) {
  if (!(f.group() == mu.group())) throw TypeError("function and measure live on different groups");
  const Group& g = f.group();
  RationalVector mean(f.value_dimension());
  for (const auto& atom : mu.atoms()) {
    const RationalVector v = f.evaluate(g.multiply(k, atom.element));
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += atom.weight * v[i];
  }
  return mean - f.evaluate(k);
}

Rational verify_harmonic(const AffineHarmonic& f, const FiniteMeasure& mu, const std::vector<Element>& points) {
  Rational worst = 0;
  for (const auto& p : points) worst = std::max(worst, sup_norm(harmonic_residual(f, mu, p)));
  return worst;
}

std::vector<LipschitzReport> lipschitz_profile(const AffineHarmonic& f, const GeneratingSet& s, int max_radius) {
  if (max_radius < 1) throw ValidationError("Lipschitz radius must be at least 1");
  if (!(f.group() == s.group())) throw TypeError("function and generating set live on different groups");
  Rational exact = 0;
  for (const auto& gen : s.elements()) exact = std::max(exact, squared_norm(f.increment(gen)));

  const BallIndex ball = enumerate_ball(s, max_radius);
  const Group& g = f.group();
  std::vector<LipschitzReport> reports;
  Rational running = 0;
  std::size_t next = 0;
  for (int r = 1; r <= max_radius; ++r) {
    const std::size_t stop = ball.count_within(r);
    for (; next < stop; ++next) {
      const Element& x = ball.elements()[next];
      const RationalVector fx = f.evaluate(x);
      for (const auto& gen : s.elements())
        running = std::max(running, squared_norm(f.evaluate(g.multiply(x, gen)) - fx));
    }
    LipschitzReport rep;
    rep.radius = r;
    rep.exact_squared = exact;
    rep.empirical_squared = running;
    rep.exact = std::sqrt(to_double(exact));
    rep.empirical = std::sqrt(to_double(running));
    reports.push_back(std::move(rep));
  }
  return reports;
}

LipschitzReport lipschitz_seminorm(const AffineHarmonic& f, const GeneratingSet& s, int radius) {
  return lipschitz_profile(f, s, radius).back();
}

std::optional<RationalMatrix> theta_gradient(const std::map<Element, RationalVector>& values,
                                             const GeneratingSet& s) {
  const Group& g = s.group();
  auto at = [&](const Element& x) -> const RationalVector& {
    auto it = values.find(x);
    if (it == values.end()) throw ValidationError("theta_gradient: missing value at " + format_element(x));
    return it->second;
  };
  const RationalVector& f_e = at(g.identity());
  const std::size_t k = f_e.size();
  const std::size_t rank_g = static_cast<std::size_t>(g.abelian_rank());
  const std::size_t n = s.size();

  RationalMatrix ab(n, rank_g);
  RationalMatrix rhs(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = g.abelianize(s.elements()[i]);
    for (std::size_t j = 0; j < rank_g; ++j) ab(i, j) = v[j];
    const RationalVector& f_s = at(s.elements()[i]);
    if (f_s.size() != k) throw TypeError("theta_gradient: value dimensions differ");
    for (std::size_t j = 0; j < k; ++j) rhs(i, j) = f_s[j] - f_e[j];
  }
  if (rank(ab) < rank_g) {
    std::string msg = "theta_gradient: generators do not span the Abelianization; undetected directions:";
    for (const auto& v : null_space(ab)) {
      msg += " [";
      for (std::size_t j = 0; j < v.size(); ++j) msg += (j ? "," : "") + to_string(v[j]);
      msg += "]";
    }
    throw ValidationError(msg);
  }
  auto x = solve(ab, rhs);
  if (!x) return std::nullopt;
  return x->transpose();
}

TestFunction::TestFunction(Kind kind, Group group, std::optional<AffineHarmonic> affine, std::size_t axis)
    : kind_(kind), group_(std::move(group)), affine_(std::move(affine)), axis_(axis) {}

TestFunction TestFunction::affine(AffineHarmonic f) {
  Group g = f.group();
  return TestFunction(Kind::kAffine, std::move(g), std::move(f), 0);
}

TestFunction TestFunction::square_of_coordinate(const Group& group, std::size_t axis) {
  if (group.kind() != GroupKind::kFreeAbelian || axis >= group.coordinate_count())
    throw TypeError("square_of_coordinate needs Z^d and a valid axis");
  return TestFunction(Kind::kSquare, group, std::nullopt, axis);
}

RationalVector TestFunction::operator()(const Element& x) const {
  group_.validate(x);
  if (kind_ == Kind::kAffine) return affine_->evaluate(x);
  const Rational v = x[axis_];
  return {v * v};
}

Rational translate_defect(const TestFunction& f, const Element& g, int radius) {
  const Group& group = f.group();
  group.validate(g);
  const Element g_inv = group.inverse(g);
  auto diff = [&](const Element& x) { return f(group.multiply(g_inv, x)) - f(x); };
  const RationalVector at_e = diff(group.identity());
  const BallIndex ball = enumerate_ball(group.default_generators(), radius);
  Rational worst = 0;
  for (const auto& x : ball.elements()) worst = std::max(worst, sup_norm(diff(x) - at_e));
  return worst;
}

AffineHarmonic restrict_affine(const AffineHarmonic& f, const MarkedSubgroup& h) {
  if (!(f.group() == h.parent())) throw TypeError("restrict_affine: function is not on the subgroup's parent");
  return AffineHarmonic(h.model(), f.constant_term(), f.phi() * h.inclusion_ab());
}

std::optional<RationalVector> linear_boundary_point(const RationalVector& phi) {
  for (const auto& v : phi) {
    if (v == 0) continue;
    const Rational scale = abs(v);
    RationalVector out;
    for (const auto& w : phi) out.push_back(w / scale);
    return out;
  }
  return std::nullopt;
}

const char* to_string(DeltaVerdict v) {
  switch (v) {
    case DeltaVerdict::kZero:
      return "0";
    case DeltaVerdict::kOne:
      return "1";
    case DeltaVerdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::optional<int> Hf1Report::dim() const {
  if (delta == DeltaVerdict::kInconclusive) return std::nullopt;
  return dim_low;
}

Hf1Report dim_hf1(const MarkedSubgroup& core, const WalkConfig& cfg) {
  if (!(cfg.measure.group() == core.parent())) throw TypeError("measure and core live on different groups");
  if (!core.model().is_nilpotent()) throw TypeError("dim_hf1 needs a nilpotent core");
  Hf1Report out;
  out.rank = core.model().abelian_rank();
  if (core.index() == 1) {
    const RationalVector drift = drift_abelian(cfg.measure);
    out.exact = true;
    out.drift = to_double(drift);
    out.drift_standard_error.assign(drift.size(), 0.0);
    const bool centered = std::all_of(drift.begin(), drift.end(), [](const Rational& v) { return v == 0; });
    out.delta = centered ? DeltaVerdict::kZero : DeltaVerdict::kOne;
  } else {
    const EmpiricalMeasure hit = hitting_measure(core, cfg);
    const DriftEstimate est = empirical_drift(hit, core.model());
    out.drift = est.mean;
    out.drift_standard_error = est.standard_error;
    bool all_accept = true;
    bool any_reject = false;
    for (std::size_t i = 0; i < est.mean.size(); ++i) {
      const double dev = std::abs(est.mean[i]);
      if (dev > kAcceptSigma * est.standard_error[i]) all_accept = false;
      if (dev > kRejectSigma * est.standard_error[i]) any_reject = true;
    }
    out.delta = all_accept ? DeltaVerdict::kZero : any_reject ? DeltaVerdict::kOne : DeltaVerdict::kInconclusive;
  }
  switch (out.delta) {
    case DeltaVerdict::kZero:
      out.dim_low = out.dim_high = out.rank + 1;
      break;
    case DeltaVerdict::kOne:
      out.dim_low = out.dim_high = out.rank;
      break;
    case DeltaVerdict::kInconclusive:
      out.dim_low = out.rank;
      out.dim_high = out.rank + 1;
      break;
  }
  return out;
}

std::vector<Rational> liouville_growth(const AffineHarmonic& f, const Element& g, int n_max) {
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  const Group& group = f.group();
  const RationalVector at_e = f.evaluate(group.identity());
  std::vector<Rational> out;
  Element x = group.identity();
  for (int n = 1; n <= n_max; ++n) {
    x = group.multiply(x, g);
    out.push_back(sup_norm(f.evaluate(x) - at_e));
  }
  return out;
}

}  // namespace hg
