#include "harmonic_groups/walks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harmonic_groups/errors.hpp"
#include "parallel.hpp"

namespace hg {

namespace {

// Running mean / M2 per value component (Welford), mergeable in a fixed order.
struct Moments {
  std::uint64_t n = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  void add(const std::vector<double>& x) {
    if (mean.empty()) {
      mean.assign(x.size(), 0.0);
      m2.assign(x.size(), 0.0);
    }
    ++n;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double delta = x[i] - mean[i];
      mean[i] += delta / static_cast<double>(n);
      m2[i] += delta * (x[i] - mean[i]);
    }
  }

  void merge(const Moments& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double total = na + nb;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double delta = other.mean[i] - mean[i];
      mean[i] += delta * nb / total;
      m2[i] += other.m2[i] + delta * delta * na * nb / total;
    }
    n += other.n;
  }

  std::vector<double> standard_error() const {
    std::vector<double> out(mean.size(), 0.0);
    if (n < 2) return out;
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = std::sqrt(m2[i] / static_cast<double>(n - 1) / static_cast<double>(n));
    return out;
  }
};

/// Throws past the hard threshold; returns true past the warning threshold.
bool check_censoring(std::uint64_t censored, std::uint64_t total, const char* what) {
  if (total == 0) return false;
  const double fraction = static_cast<double>(censored) / static_cast<double>(total);
  if (fraction > kCensoringFailFraction) {
    std::ostringstream msg;
    msg << what << ": " << censored << " of " << total << " walks censored (fraction " << fraction
        << " exceeds " << kCensoringFailFraction << ")";
    throw CensoringError(msg.str());
  }
  return fraction > kCensoringWarnFraction;
}

}  // namespace

void WalkConfig::validate() const {
  if (max_steps < 1) throw ValidationError("max_steps must be at least 1");
  if (n_samples < 1) throw ValidationError("n_samples must be at least 1");
}

HittingSample simulate_hit(const Element& start, const MarkedSubgroup& h, const MeasureSampler& sampler,
                           std::int64_t max_steps, RngStream& rng, HitMode mode) {
  const Group& g = h.parent();
  Element x = start;
  if (mode == HitMode::kTau && h.contains(x)) return {0, h.to_model(x)};
  for (std::int64_t t = 1; t <= max_steps; ++t) {
    x = g.multiply(x, sampler.draw(rng));
    if (h.contains(x)) return {t, h.to_model(x)};
  }
  return {};
}

HittingSample simulate_hit(const Element& start, const MarkedSubgroup& h, const WalkConfig& cfg, HitMode mode) {
  cfg.validate();
  if (!(cfg.measure.group() == h.parent())) throw TypeError("walk measure and subgroup live on different groups");
  h.parent().validate(start);
  RngStream rng(cfg.seed, 0);
  return simulate_hit(start, h, MeasureSampler(cfg.measure), cfg.max_steps, rng, mode);
}

double EmpiricalMeasure::frequency(const Element& m) const {
  auto it = counts.find(m);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

double EmpiricalMeasure::standard_error(const Element& m) const {
  if (total == 0) return 0.0;
  const double p = frequency(m);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

double EmpiricalMeasure::censored_fraction() const {
  return total == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(total);
}

FiniteMeasure EmpiricalMeasure::to_finite_measure(const Group& model) const {
  const std::uint64_t used = total - censored;
  if (used == 0) throw ValidationError("empirical measure has no uncensored samples");
  std::vector<Atom> atoms;
  for (const auto& [e, c] : counts)
    atoms.push_back({e, Rational(static_cast<long long>(c), static_cast<long long>(used))});
  return FiniteMeasure(model, std::move(atoms));
}

EmpiricalMeasure hitting_measure(const MarkedSubgroup& h, const WalkConfig& cfg) {
  cfg.validate();
  if (!(cfg.measure.group() == h.parent())) throw TypeError("walk measure and subgroup live on different groups");
  const MeasureSampler sampler(cfg.measure);
  const Element start = h.parent().identity();
  auto parts = detail::map_chunks<EmpiricalMeasure>(cfg.n_samples, [&](std::size_t begin, std::size_t end) {
    EmpiricalMeasure part;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(cfg.seed, i);
      const HittingSample s = simulate_hit(start, h, sampler, cfg.max_steps, rng, HitMode::kTauPlus);
      ++part.total;
      if (s.censored())
        ++part.censored;
      else
        ++part.counts[*s.landing];
    }
    return part;
  });
  EmpiricalMeasure result;
  for (const auto& p : parts) {
    result.total += p.total;
    result.censored += p.censored;
    for (const auto& [e, c] : p.counts) result.counts[e] += c;
  }
  check_censoring(result.censored, result.total, "hitting_measure");
  return result;
}

DriftEstimate empirical_drift(const EmpiricalMeasure& m, const Group& model) {
  const std::size_t r = static_cast<std::size_t>(model.abelian_rank());
  DriftEstimate out{std::vector<double>(r, 0.0), std::vector<double>(r, 0.0)};
  const std::uint64_t used = m.total - m.censored;
  if (used == 0) return out;
  const double n = static_cast<double>(used);
  for (const auto& [e, c] : m.counts) {
    const auto ab = model.abelianize(e);
    for (std::size_t i = 0; i < r; ++i) out.mean[i] += static_cast<double>(c) * static_cast<double>(ab[i]);
  }
  for (auto& v : out.mean) v /= n;
  if (used < 2) return out;
  std::vector<double> ss(r, 0.0);
  for (const auto& [e, c] : m.counts) {
    const auto ab = model.abelianize(e);
    for (std::size_t i = 0; i < r; ++i) {
      const double d = static_cast<double>(ab[i]) - out.mean[i];
      ss[i] += static_cast<double>(c) * d * d;
    }
  }
  for (std::size_t i = 0; i < r; ++i) out.standard_error[i] = std::sqrt(ss[i] / (n - 1.0) / n);
  return out;
}

TauEstimate estimate_T(const MarkedSubgroup& h, const WalkConfig& cfg) {
  cfg.validate();
  if (!(cfg.measure.group() == h.parent())) throw TypeError("walk measure and subgroup live on different groups");
  const MeasureSampler sampler(cfg.measure);
  TauEstimate out;
  std::uint64_t censored = 0;
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < h.index(); ++j) {
    const Element& start = h.transversal()[j];
    struct Part {
      Moments moments;
      std::uint64_t censored = 0;
    };
    auto parts = detail::map_chunks<Part>(cfg.n_samples, [&](std::size_t begin, std::size_t end) {
      Part part;
      for (std::size_t i = begin; i < end; ++i) {
        RngStream rng(cfg.seed, j * cfg.n_samples + i);
        const HittingSample s = simulate_hit(start, h, sampler, cfg.max_steps, rng, HitMode::kTau);
        if (s.censored())
          ++part.censored;
        else
          part.moments.add({static_cast<double>(*s.tau)});
      }
      return part;
    });
    Moments moments;
    for (const auto& p : parts) {
      moments.merge(p.moments);
      censored += p.censored;
    }
    total += cfg.n_samples;
    const double mean = moments.n ? moments.mean[0] : 0.0;
    const double se = moments.n ? moments.standard_error()[0] : 0.0;
    out.coset_mean.push_back(mean);
    out.coset_standard_error.push_back(se);
    if (j == 0 || mean > out.t_hat) {
      out.t_hat = mean;
      out.standard_error = se;
      out.argmax_coset = j;
    }
  }
  out.censoring_warning = check_censoring(censored, total, "estimate_T");
  out.censored_fraction = total ? static_cast<double>(censored) / static_cast<double>(total) : 0.0;
  return out;
}

InductionEstimate induce_harmonic(const AffineHarmonic& f_model, const Element& x, const MarkedSubgroup& h,
                                  const WalkConfig& cfg) {
  cfg.validate();
  if (!(f_model.group() == h.model())) throw TypeError("induced function must live on the subgroup model");
  if (!(cfg.measure.group() == h.parent())) throw TypeError("walk measure and subgroup live on different groups");
  h.parent().validate(x);
  InductionEstimate out;
  if (h.contains(x)) {
    out.value = f_model.evaluate_double(h.to_model(x));
    out.standard_error.assign(out.value.size(), 0.0);
    out.exact = true;
    return out;
  }
  const MeasureSampler sampler(cfg.measure);
  struct Part {
    Moments moments;
    std::uint64_t censored = 0;
    double max_abs = 0;
  };
  auto parts = detail::map_chunks<Part>(cfg.n_samples, [&](std::size_t begin, std::size_t end) {
    Part part;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(cfg.seed, i);
      const HittingSample s = simulate_hit(x, h, sampler, cfg.max_steps, rng, HitMode::kTau);
      if (s.censored()) {
        ++part.censored;
        continue;
      }
      const auto v = f_model.evaluate_double(*s.landing);
      for (double c : v) part.max_abs = std::max(part.max_abs, std::abs(c));
      part.moments.add(v);
    }
    return part;
  });
  Moments moments;
  double max_abs = 0;
  for (const auto& p : parts) {
    moments.merge(p.moments);
    out.censored += p.censored;
    max_abs = std::max(max_abs, p.max_abs);
  }
  out.used = moments.n;
  out.censoring_warning = check_censoring(out.censored, cfg.n_samples, "induce_harmonic");
  if (moments.n == 0) throw CensoringError("induce_harmonic: every walk was censored");
  out.value = moments.mean;
  out.standard_error = moments.standard_error();
  out.bias_bound = static_cast<double>(out.censored) / static_cast<double>(cfg.n_samples) * max_abs;
  return out;
}

InductionConstants induction_constants(const MarkedSubgroup& h, const GeneratingSet& s_g, const GeneratingSet& s_h,
                                       const WalkConfig& cfg, int certification_radius) {
  if (!(s_g.group() == h.parent())) throw TypeError("S_G must generate the parent group");
  if (!(s_h.group() == h.model())) throw TypeError("S_H must generate the subgroup model");
  if (certification_radius < 1) throw ValidationError("certification radius must be at least 1");
  InductionConstants out;
  out.certified_radius = certification_radius;

  // A: max |h|_{S_H} / |h|_{S_G} over nontrivial h in H within the certified ball.
  const BallIndex ball_g = enumerate_ball(s_g, certification_radius);
  std::vector<std::pair<Element, int>> members;
  for (std::size_t i = 1; i < ball_g.size(); ++i)
    if (h.contains(ball_g.elements()[i])) members.emplace_back(h.to_model(ball_g.elements()[i]), ball_g.lengths()[i]);
  if (members.empty())
    throw CertificationError("no nontrivial subgroup element within radius " + std::to_string(certification_radius));
  // No a priori bound on |h|_{S_H}; search up to 4 rho and fail if that is not enough.
  const int model_radius = 4 * certification_radius;
  const BallIndex ball_h = enumerate_ball(s_h, model_radius);
  Rational a = 0;
  for (const auto& [m, len_g] : members) {
    auto len_h = ball_h.length_of(m);
    if (!len_h)
      throw CertificationError("subgroup element " + format_element(m) + " not found within S_H radius " +
                               std::to_string(model_radius));
    a = std::max(a, Rational(*len_h, len_g));
  }
  out.a = a;

  constexpr int kSearch = 64;
  for (const auto& t : h.transversal()) {
    auto len = word_length(s_g, t, kSearch);
    if (!len) throw CertificationError("transversal element " + format_element(t) + " is too long");
    out.d = std::max(out.d, *len);
  }
  for (const auto& s : s_h.elements()) {
    auto len = word_length(s_g, h.from_model(s), kSearch);
    if (!len) throw CertificationError("subgroup generator " + format_element(s) + " is too long in S_G");
    out.c_hg = std::max(out.c_hg, *len);
  }
  out.m1 = first_moment(cfg.measure, s_g, kSearch);
  const TauEstimate tau = estimate_T(h, cfg);
  out.t_hat = tau.t_hat;
  out.t_standard_error = tau.standard_error;
  out.c_star = to_double(out.a) * ((4.0 * out.d + 1.0) + 2.0 * to_double(out.m1) * out.t_hat);
  return out;
}

}  // namespace hg
