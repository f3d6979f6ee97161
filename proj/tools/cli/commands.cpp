#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "checks.hpp"
#include "config.hpp"
#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/harmonic.hpp"
#include "harmonic_groups/straightening.hpp"
#include "harmonic_groups/walks.hpp"

namespace hg::cli {

namespace {

constexpr std::uint64_t kDefaultSamples = 100'000;

std::string rat(const Rational& r) { return to_string(r); }

std::uint64_t seed_of(const json& cfg, std::optional<std::uint64_t> flag, const std::string& why) {
  if (flag) return *flag;
  if (const json* s = optional_field(cfg, "seed")) {
    if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0))
      throw ConfigError("/seed", "seed must be a nonnegative integer");
    return s->get<std::uint64_t>();
  }
  throw ConfigError("/seed", "a seed is required for " + why + " (pass --seed or set \"seed\")");
}

std::uint64_t samples_of(const json& cfg, std::uint64_t mult) {
  const std::int64_t n = get_int(cfg, "samples", static_cast<std::int64_t>(kDefaultSamples), "");
  if (n < 1) throw ConfigError("/samples", "samples must be positive");
  return static_cast<std::uint64_t>(n) * mult;
}

WalkConfig walk_config(const Group& g, const json& cfg, std::uint64_t seed, std::uint64_t samples) {
  WalkConfig w{parse_measure(g, require(cfg, "measure", ""), "/measure"), kDefaultMaxSteps, seed, samples};
  w.max_steps = get_int(cfg, "max_steps", kDefaultMaxSteps, "");
  if (w.max_steps < 1) throw ConfigError("/max_steps", "max_steps must be positive");
  return w;
}

// Independent seed per evaluation point; streams inside a point are (seed', i).
std::uint64_t point_seed(std::uint64_t seed, std::size_t p) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(p) + 1));
}

std::vector<Element> points_of(const Group& g, const json& cfg, int default_radius) {
  if (const json* p = optional_field(cfg, "points")) return parse_elements(g, *p, "/points");
  const std::int64_t r = get_int(cfg, "radius", default_radius, "");
  if (r < 0) throw ConfigError("/radius", "radius must be nonnegative");
  return enumerate_ball(g.default_generators(), static_cast<int>(r)).elements();
}

json censoring_json(std::uint64_t total, std::uint64_t censored) {
  const double f = total ? static_cast<double>(censored) / static_cast<double>(total) : 0.0;
  return {{"runs", total},
          {"censored", censored},
          {"fraction", f},
          {"warning", f > kCensoringWarnFraction},
          {"fail_threshold", kCensoringFailFraction}};
}

json rng_json(std::uint64_t seed, std::uint64_t streams, const std::string& layout) {
  return {{"generator", "mt19937_64 seeded by splitmix64 of (seed, stream)"},
          {"seed", seed},
          {"streams", streams},
          {"layout", layout}};
}

QiMapExpr pipeline_map(const Group& source, const json& cfg) {
  return QiMapExpr(source, parse_pipeline(source, require(cfg, "pipeline", ""), "/pipeline"));
}

RunResult cmd_verify(const json& cfg) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const FiniteMeasure mu = parse_measure(g, require(cfg, "measure", ""), "/measure");
  const AffineHarmonic f = parse_function(g, require(cfg, "function", ""), "/function");
  const auto points = points_of(g, cfg, 2);
  RunResult out;
  out.table.header = {"point", "component", "residual", "stderr"};
  Rational worst = 0;
  for (const auto& p : points) {
    const RationalVector r = harmonic_residual(f, mu, p);
    for (std::size_t i = 0; i < r.size(); ++i) out.table.add({format_coords(p), std::to_string(i), rat(r[i]), kExactMarker});
    worst = std::max(worst, sup_norm(r));
  }
  out.summary["max_residual"] = Quantity::of_exact(worst);
  out.summary["points"] = Quantity::of_exact(static_cast<long long>(points.size()));
  return out;
}

RunResult cmd_lipnorm(const json& cfg) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const AffineHarmonic f = parse_function(g, require(cfg, "function", ""), "/function");
  const GeneratingSet s = parse_generators(g, optional_field(cfg, "generators"), "/generators");
  const std::int64_t radius = get_int(cfg, "radius", 6, "");
  if (radius < 1) throw ConfigError("/radius", "radius must be at least 1");
  RunResult out;
  out.table.header = {"radius", "exact_squared", "empirical_squared", "exact", "empirical", "stderr"};
  bool equal = true;
  const auto reports = lipschitz_profile(f, s, static_cast<int>(radius));
  for (const auto& r : reports) {
    out.table.add({std::to_string(r.radius), rat(r.exact_squared), rat(r.empirical_squared), format_double(r.exact),
                   format_double(r.empirical), kExactMarker});
    equal = equal && r.exact_squared == r.empirical_squared;
  }
  out.summary["exact_squared"] = Quantity::of_exact(reports.back().exact_squared);
  out.summary["empirical_squared"] = Quantity::of_exact(reports.back().empirical_squared);
  out.summary["equal"] = Quantity::of_exact(equal ? 1 : 0);
  return out;
}

RunResult cmd_dimension(const json& cfg, std::optional<std::uint64_t> seed_flag, std::uint64_t mult) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const MarkedSubgroup core = parse_subgroup(g, optional_field(cfg, "subgroup"), "/subgroup");
  RunResult out;
  const bool stochastic = core.index() > 1;
  const std::uint64_t seed = stochastic ? seed_of(cfg, seed_flag, "Monte Carlo dimension estimates") : 0;
  const std::uint64_t n = stochastic ? samples_of(cfg, mult) : 1;
  const WalkConfig w = walk_config(g, cfg, seed, n);
  const Hf1Report rep = dim_hf1(core, w);
  out.stochastic = stochastic;
  const char* verdict_marker = rep.exact ? kExactMarker : "verdict";
  out.table.header = {"quantity", "value", "stderr"};
  out.table.add({"rank", std::to_string(rep.rank), kExactMarker});
  for (std::size_t i = 0; i < rep.drift.size(); ++i)
    out.table.add({"drift_" + std::to_string(i), format_double(rep.drift[i]),
                   rep.exact ? std::string(kExactMarker) : format_double(rep.drift_standard_error[i])});
  out.table.add({"delta", to_string(rep.delta), verdict_marker});
  out.table.add({"dim_low", std::to_string(rep.dim_low), verdict_marker});
  out.table.add({"dim_high", std::to_string(rep.dim_high), verdict_marker});
  out.summary["rank"] = Quantity::of_exact(rep.rank);
  out.summary["dim_low"] = Quantity::of_exact(rep.dim_low);
  out.summary["dim_high"] = Quantity::of_exact(rep.dim_high);
  if (rep.dim()) out.summary["dim"] = Quantity::of_exact(*rep.dim());
  if (rep.delta != DeltaVerdict::kInconclusive) out.summary["delta"] = Quantity::of_exact(rep.delta == DeltaVerdict::kOne);
  for (std::size_t i = 0; i < rep.drift.size(); ++i)
    out.summary["drift_" + std::to_string(i)] =
        rep.exact ? Quantity::of_exact(drift_abelian(w.measure)[i])
                  : Quantity::of_estimate(rep.drift[i], rep.drift_standard_error[i]);
  out.details["core"] = core.description();
  if (stochastic) out.details["rng"] = rng_json(seed, n, "stream i = excursion i");
  return out;
}

RunResult cmd_liouville(const json& cfg) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const AffineHarmonic f = parse_function(g, require(cfg, "function", ""), "/function");
  const Element step = optional_field(cfg, "g") ? parse_element(g, cfg["g"], "/g") : g.default_generators().elements()[0];
  const std::int64_t n_max = get_int(cfg, "n_max", 10, "");
  const auto seq = liouville_growth(f, step, static_cast<int>(n_max));
  RunResult out;
  out.table.header = {"n", "value", "stderr"};
  bool linear = true;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    out.table.add({std::to_string(n + 1), rat(seq[n]), kExactMarker});
    linear = linear && seq[n] == seq[0] * static_cast<long long>(n + 1);
  }
  out.summary["slope"] = Quantity::of_exact(seq[0]);
  out.summary["linear"] = Quantity::of_exact(linear ? 1 : 0);
  return out;
}

RunResult cmd_hitting(const json& cfg, std::optional<std::uint64_t> seed_flag, std::uint64_t mult) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const MarkedSubgroup h = parse_subgroup(g, optional_field(cfg, "subgroup"), "/subgroup");
  const std::uint64_t seed = seed_of(cfg, seed_flag, "hitting measures");
  const WalkConfig w = walk_config(g, cfg, seed, samples_of(cfg, mult));
  const EmpiricalMeasure m = hitting_measure(h, w);
  RunResult out;
  out.stochastic = true;
  out.table.header = {"model", "parent", "count", "frequency", "stderr"};
  for (const auto& [e, c] : m.counts) {
    const std::string parent = format_coords(h.from_model(e));
    out.table.add({format_coords(e), parent, std::to_string(c), format_double(m.frequency(e)),
                   format_double(m.standard_error(e))});
    out.summary["p(" + parent + ")"] = Quantity::of_estimate(m.frequency(e), m.standard_error(e));
  }
  const double cf = m.censored_fraction();
  out.summary["censored_fraction"] =
      Quantity::of_estimate(cf, std::sqrt(cf * (1 - cf) / static_cast<double>(std::max<std::uint64_t>(m.total, 1))));
  out.details["censoring"] = censoring_json(m.total, m.censored);
  out.details["rng"] = rng_json(seed, w.n_samples, "stream i = excursion i");
  out.details["subgroup"] = h.description();
  return out;
}

RunResult cmd_induce(const json& cfg, std::optional<std::uint64_t> seed_flag, std::uint64_t mult) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const MarkedSubgroup h = parse_subgroup(g, optional_field(cfg, "subgroup"), "/subgroup");
  const AffineHarmonic f = parse_function(h.model(), require(cfg, "function", ""), "/function");
  const std::uint64_t seed = seed_of(cfg, seed_flag, "harmonic induction");
  WalkConfig w = walk_config(g, cfg, seed, samples_of(cfg, mult));
  const auto points = points_of(g, cfg, 2);
  RunResult out;
  out.stochastic = true;
  out.table.header = {"point", "component", "value", "stderr"};
  std::uint64_t total = 0, censored = 0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    w.seed = point_seed(seed, p);
    const InductionEstimate est = induce_harmonic(f, points[p], h, w);
    total += est.exact ? 0 : est.used + est.censored;
    censored += est.censored;
    const std::string coords = format_coords(points[p]);
    for (std::size_t i = 0; i < est.value.size(); ++i) {
      out.table.add({coords, std::to_string(i), format_double(est.value[i]),
                     est.exact ? std::string(kExactMarker) : format_double(est.standard_error[i])});
      const std::string key = "value(" + coords + ")" + (est.value.size() > 1 ? "[" + std::to_string(i) + "]" : "");
      out.summary[key] = est.exact ? Quantity::of_exact(f.evaluate(h.to_model(points[p]))[i])
                                   : Quantity::of_estimate(est.value[i], est.standard_error[i]);
    }
  }
  out.details["censoring"] = censoring_json(total, censored);
  out.details["rng"] = rng_json(seed, total, "point p uses seed ^ (0x9E3779B97F4A7C15 * (p + 1)), stream i = walk i");
  return out;
}

RunResult cmd_constants(const json& cfg, std::optional<std::uint64_t> seed_flag, std::uint64_t mult) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const MarkedSubgroup h = parse_subgroup(g, optional_field(cfg, "subgroup"), "/subgroup");
  const GeneratingSet s_g = parse_generators(g, optional_field(cfg, "generators"), "/generators");
  const GeneratingSet s_h =
      parse_generators(h.model(), optional_field(cfg, "subgroup_generators"), "/subgroup_generators");
  const std::uint64_t seed = seed_of(cfg, seed_flag, "estimating T");
  const WalkConfig w = walk_config(g, cfg, seed, samples_of(cfg, mult));
  const std::int64_t radius = get_int(cfg, "radius", 20, "");
  const InductionConstants c = induction_constants(h, s_g, s_h, w, static_cast<int>(radius));
  RunResult out;
  out.stochastic = true;
  out.table.header = {"constant", "value", "stderr"};
  const double c_star_se = to_double(c.a) * 2.0 * to_double(c.m1) * c.t_standard_error;
  out.table.add({"A", rat(c.a), kExactMarker});
  out.table.add({"certified_radius", std::to_string(c.certified_radius), kExactMarker});
  out.table.add({"D", std::to_string(c.d), kExactMarker});
  out.table.add({"m1", rat(c.m1), kExactMarker});
  out.table.add({"T_hat", format_double(c.t_hat), format_double(c.t_standard_error)});
  out.table.add({"C_star", format_double(c.c_star), format_double(c_star_se)});
  out.table.add({"C_HG", std::to_string(c.c_hg), kExactMarker});
  out.summary["A"] = Quantity::of_exact(c.a);
  out.summary["D"] = Quantity::of_exact(c.d);
  out.summary["m1"] = Quantity::of_exact(c.m1);
  out.summary["C_HG"] = Quantity::of_exact(c.c_hg);
  out.summary["T_hat"] = Quantity::of_estimate(c.t_hat, c.t_standard_error);
  out.summary["C_star"] = Quantity::of_estimate(c.c_star, c_star_se);
  out.details["rng"] = rng_json(seed, w.n_samples * h.index(), "stream j * samples + i = walk i from transversal j");
  return out;
}

DefectProbe probe_of(const json& cfg, std::uint64_t seed) {
  DefectProbe p;
  p.seed = seed;
  if (const json* pj = optional_field(cfg, "probe")) {
    const std::string shape = pj->value("shape", std::string("ball"));
    if (shape == "ball") p.shape = ProbeShape::kBall;
    else if (shape == "axis") p.shape = ProbeShape::kAxisSegment;
    else throw ConfigError("/probe/shape", "shape must be \"ball\" or \"axis\"");
    p.radius = static_cast<int>(get_int(*pj, "radius", p.radius, "/probe"));
    p.axis = static_cast<std::size_t>(get_int(*pj, "axis", 0, "/probe"));
    const std::int64_t budget = get_int(*pj, "budget", static_cast<std::int64_t>(p.pair_budget), "/probe");
    if (budget < 1) throw ConfigError("/probe/budget", "budget must be positive");
    p.pair_budget = static_cast<std::uint64_t>(budget);
  }
  if (p.radius < 1) throw ConfigError("/probe/radius", "radius must be at least 1");
  return p;
}

json witness_json(const DefectReport& r) {
  if (!r.argmax) return nullptr;
  return {{"x", format_coords(r.argmax->x)}, {"y", format_coords(r.argmax->y)}, {"defect", r.argmax->defect}};
}

RunResult cmd_defect(const json& cfg, std::optional<std::uint64_t> seed_flag) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const QiMapExpr psi = pipeline_map(g, cfg);
  const std::uint64_t seed = seed_flag ? *seed_flag : static_cast<std::uint64_t>(get_int(cfg, "seed", 0, ""));
  const DefectReport r = abelian_defect(psi, probe_of(cfg, seed));
  RunResult out;
  out.table.header = {"radius", "max_defect", "stderr"};
  const char* marker = r.exhaustive ? kExactMarker : "sampled_lower_bound";
  for (const auto& [radius, d] : r.growth_curve) out.table.add({std::to_string(radius), std::to_string(d), marker});
  out.summary["max_defect"] = Quantity::of_exact(static_cast<long long>(r.max_defect));
  out.details["witness"] = witness_json(r);
  out.details["exhaustive"] = r.exhaustive;
  out.details["pairs_evaluated"] = r.pairs_evaluated;
  if (!r.exhaustive) out.details["rng"] = rng_json(seed, (r.pairs_evaluated + 4095) / 4096, "stream c = chunk c of 4096 pairs");
  return out;
}

RunResult cmd_homogenize(const json& cfg, std::optional<std::uint64_t> seed_flag) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const QiMapExpr psi = pipeline_map(g, cfg);
  const std::int64_t coord = get_int(cfg, "coordinate", 0, "");
  if (coord < 0 || coord >= psi.target().abelian_rank())
    throw ConfigError("/coordinate", "coordinate must index the target Abelianization");
  const Element x = parse_element(g, require(cfg, "x", ""), "/x");
  const std::int64_t k_max = get_int(cfg, "k_max", kDefaultHomogenizationDepth, "");
  const Rational tol = optional_field(cfg, "tolerance") ? parse_rational_value(cfg["tolerance"], "/tolerance")
                                                        : Rational(1, 1'000'000'000);
  RunResult out;
  Rational d_bound;
  if (const json* d = optional_field(cfg, "defect_bound")) {
    d_bound = parse_rational_value(*d, "/defect_bound");
    out.details["defect_bound_source"] = "config";
  } else {
    const std::uint64_t seed = seed_flag ? *seed_flag : static_cast<std::uint64_t>(get_int(cfg, "seed", 0, ""));
    d_bound = abelian_defect(psi, probe_of(cfg, seed)).max_defect;
    out.details["defect_bound_source"] = "measured on the probe (a lower bound of the true defect)";
  }
  const auto a = [&](const Element& y) { return Rational(psi.target().abelianize(psi(y))[static_cast<std::size_t>(coord)]); };
  const Homogenization h = homogenize(g, a, x, static_cast<int>(k_max), d_bound, tol);
  out.table.header = {"k", "a_k", "a_k_exact", "stderr"};
  for (std::size_t k = 0; k < h.sequence.size(); ++k)
    out.table.add({std::to_string(k), format_double(to_double(h.sequence[k])), rat(h.sequence[k]), kExactMarker});
  out.summary["a_bar"] = Quantity::of_exact(h.a_bar);
  out.summary["k_used"] = Quantity::of_exact(h.k_used);
  out.summary["error_bound"] = Quantity::of_exact(h.error_bound);
  out.summary["converged"] = Quantity::of_exact(h.converged ? 1 : 0);
  return out;
}

LinearizationOptions linearization_options(const json& cfg, std::optional<std::uint64_t> seed_flag) {
  LinearizationOptions o;
  o.k_max = static_cast<int>(get_int(cfg, "k_max", kDefaultHomogenizationDepth, ""));
  o.probe_radius = static_cast<int>(get_int(cfg, "probe_radius", 0, ""));
  o.enforce_gate = get_bool(cfg, "enforce_gate", true, "");
  o.seed = seed_flag ? *seed_flag : static_cast<std::uint64_t>(get_int(cfg, "seed", 0, ""));
  return o;
}

void add_matrix(RunResult& out, const std::string& name, const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.summary[name + "(" + std::to_string(i) + "," + std::to_string(j) + ")"] = Quantity::of_exact(m(i, j));
}

RunResult cmd_linearize(const json& cfg, std::optional<std::uint64_t> seed_flag) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const QiMapExpr psi = pipeline_map(g, cfg);
  const Linearization lin = extract_linearization(psi, linearization_options(cfg, seed_flag));
  RunResult out;
  out.table.header = {"row", "col", "l_ab", "t_psi", "stderr"};
  for (std::size_t i = 0; i < lin.l_ab.rows(); ++i)
    for (std::size_t j = 0; j < lin.l_ab.cols(); ++j)
      out.table.add({std::to_string(i), std::to_string(j), rat(lin.l_ab(i, j)), rat(lin.t_psi(i, j)), kExactMarker});
  add_matrix(out, "l_ab", lin.l_ab);
  add_matrix(out, "t_psi", lin.t_psi);
  out.summary["residual_bound"] = Quantity::of_exact(lin.residual_bound);
  out.summary["k_used"] = Quantity::of_exact(lin.k_used);
  out.summary["gate_defect"] = Quantity::of_exact(static_cast<long long>(lin.gate.max_defect));
  out.details["gate"] = {{"radius", lin.gate.probe.radius},
                         {"defect_at_radius", lin.gate.max_within(lin.gate.probe.radius)},
                         {"defect_at_quarter_radius", lin.gate.max_within(lin.gate.probe.radius / 4)},
                         {"exhaustive", lin.gate.exhaustive}};
  return out;
}

RunResult cmd_straighten(const json& cfg, std::optional<std::uint64_t> seed_flag) {
  const Group g = parse_group(require(cfg, "group", ""), "/group");
  const std::int64_t radius = get_int(cfg, "radius", 20, "");
  RunResult out;
  out.table.header = {"quantity", "value", "stderr"};
  auto row = [&](const std::string& name, const Rational& v) {
    out.table.add({name, rat(v), kExactMarker});
    out.summary[name] = Quantity::of_exact(v);
  };

  const json* ext = optional_field(cfg, "extended");
  const MarkedSubgroup src_core =
      ext ? parse_subgroup(g, optional_field(*ext, "source_core"), "/extended/source_core") : MarkedSubgroup::whole(g);
  const Group& src_model = src_core.model();
  const QiMapExpr psi = pipeline_map(src_model, cfg);
  const Linearization lin = extract_linearization(psi, linearization_options(cfg, seed_flag));

  const auto rank = static_cast<std::size_t>(src_model.abelian_rank());
  const RationalMatrix q = optional_field(cfg, "basis") ? parse_rational_matrix(cfg["basis"], rank, "/basis")
                                                        : RationalMatrix::identity(rank);
  const RationalMatrix p = q * lin.t_psi.transpose();
  row("p_l_minus_q_max", (p * lin.l_ab - q).max_abs());
  row("p_norm_inf", p.operator_norm_inf());
  row("residual_bound", lin.residual_bound);
  row("measured_defect_on_probe", static_cast<long long>(lin.gate.max_defect));
  add_matrix(out, "l_ab", lin.l_ab);

  DeviationReport dev;
  if (ext) {
    const Group tg = optional_field(*ext, "target_group") ? parse_group((*ext)["target_group"], "/extended/target_group") : g;
    const MarkedSubgroup tgt_core = parse_subgroup(tg, optional_field(*ext, "target_core"), "/extended/target_core");
    const auto offsets = parse_elements(tg, require(*ext, "offsets", "/extended"), "/extended/offsets");
    const ExtendedQiMap phi(src_core, tgt_core, psi, offsets);
    const HarmonicCoordinates f_src = HarmonicCoordinates::extended(src_core, q);
    const HarmonicCoordinates f_tgt = f_src.transported(lin, tgt_core);
    dev = straightening_deviation(phi, f_src, f_tgt, static_cast<int>(radius));
    const ExtensionSlack slack = extension_slack(phi, f_tgt);
    row("extension_lipschitz", slack.lipschitz);
    row("extension_c1", slack.c1);
    row("extension_slack", slack.slack);
  } else {
    const HarmonicCoordinates f_src = HarmonicCoordinates::core(g, q);
    const HarmonicCoordinates f_tgt = f_src.transported(lin, psi.target());
    dev = straightening_deviation(psi, f_src, f_tgt, static_cast<int>(radius));
  }
  row("sup_deviation", dev.sup_deviation);
  out.table.add({"argmax", format_coords(dev.argmax), kExactMarker});
  out.details["argmax"] = format_coords(dev.argmax);
  out.details["points"] = dev.points;

  if (const json* coarse = optional_field(cfg, "coarse")) {
    if (ext) throw ConfigError("/coarse", "coarse affinity is checked on core maps only");
    const auto r_m = static_cast<std::size_t>(psi.target().abelian_rank());
    const RationalMatrix l = optional_field(*coarse, "l") ? parse_rational_matrix((*coarse)["l"], rank, "/coarse/l")
                                                          : lin.l_ab;
    const RationalVector v0 = optional_field(*coarse, "v0") ? parse_rational_vector((*coarse)["v0"], "/coarse/v0")
                                                            : RationalVector(r_m);
    const std::int64_t cr = get_int(*coarse, "radius", 10, "/coarse");
    const CoarseAffinityReport rep = check_coarsely_affine(psi, l, v0, static_cast<int>(cr));
    row("c_hat", rep.c_hat);
    row("implied_defect_bound", rep.implied_defect_bound);
    row("in_ball_defect", static_cast<long long>(rep.measured_defect));
    row("coarse_consistent", rep.consistent ? 1 : 0);
  }
  return out;
}

using Handler = std::function<RunResult(const json&, std::optional<std::uint64_t>, std::uint64_t)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"verify", [](const json& c, auto, auto) { return cmd_verify(c); }},
      {"lipnorm", [](const json& c, auto, auto) { return cmd_lipnorm(c); }},
      {"dimension", [](const json& c, auto s, auto m) { return cmd_dimension(c, s, m); }},
      {"liouville", [](const json& c, auto, auto) { return cmd_liouville(c); }},
      {"hitting-measure", [](const json& c, auto s, auto m) { return cmd_hitting(c, s, m); }},
      {"induce", [](const json& c, auto s, auto m) { return cmd_induce(c, s, m); }},
      {"constants", [](const json& c, auto s, auto m) { return cmd_constants(c, s, m); }},
      {"defect", [](const json& c, auto s, auto) { return cmd_defect(c, s); }},
      {"homogenize", [](const json& c, auto s, auto) { return cmd_homogenize(c, s); }},
      {"linearize", [](const json& c, auto s, auto) { return cmd_linearize(c, s); }},
      {"straighten", [](const json& c, auto s, auto) { return cmd_straighten(c, s); }},
  };
  return table;
}

bool expected_is_exact(const json& want) { return want.is_number_integer() || want.is_string(); }

std::string describe(const Quantity& q) {
  if (q.exact) return to_string(*q.exact);
  std::string s = format_double(q.value);
  if (q.standard_error) s += " +- " + format_double(*q.standard_error);
  return s;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify",  "lipnorm",    "dimension", "liouville",
                                                 "hitting-measure", "induce", "constants", "defect",
                                                 "homogenize", "linearize", "straighten", "check-all"};
  return names;
}

bool is_stochastic_command(const std::string& command, const json& config) {
  if (command == "hitting-measure" || command == "induce" || command == "constants" || command == "check-all")
    return true;
  if (command == "dimension") {
    try {
      const Group g = parse_group(require(config, "group", ""), "/group");
      return parse_subgroup(g, optional_field(config, "subgroup"), "/subgroup").index() > 1;
    } catch (...) {
      return false;
    }
  }
  return false;
}

RunResult execute(const std::string& command, const json& config, std::optional<std::uint64_t> seed,
                  std::uint64_t sample_multiplier) {
  if (!config.is_object()) throw ConfigError("", "config must be a JSON object");
  if (const json* op = optional_field(config, "operation"))
    if (!op->is_string() || op->get<std::string>() != command)
      throw ConfigError("/operation", "config is for '" + op->dump() + "', not '" + command + "'");
  const auto& table = handlers();
  auto it = table.find(command);
  if (it == table.end()) throw ConfigError("", "unknown command '" + command + "'");
  return it->second(config, seed, sample_multiplier);
}

ExpectationReport compare_expectations(const json& expect, const RunResult& result) {
  if (!expect.is_object()) throw ConfigError("/expect", "expected an object of result names");
  ExpectationReport rep;
  for (const auto& [key, want] : expect.items()) {
    auto it = result.summary.find(key);
    if (it == result.summary.end()) {
      std::string names;
      for (const auto& [k, _] : result.summary) names += (names.empty() ? "" : ", ") + k;
      throw ConfigError("/expect/" + key, "no such result; available: " + names);
    }
    const Quantity& q = it->second;
    const json& target = want.is_object() ? require(want, "value", "/expect/" + key) : want;
    const json* tol_json = want.is_object() ? optional_field(want, "tolerance") : nullptr;
    bool ok = false;
    std::string how;
    if (q.exact && expected_is_exact(target) && !tol_json) {
      const Rational want = parse_rational_value(target, "/expect/" + key);
      ok = *q.exact == want;
      how = "exact, want " + to_string(want);
    } else {
      const double want = target.is_string() ? to_double(parse_rational_value(target, "/expect/" + key))
                                             : target.get<double>();
      double tol = 1e-9;
      if (tol_json) tol = tol_json->get<double>();
      else if (q.standard_error) tol = 3.0 * *q.standard_error;
      ok = std::abs(q.value - want) <= tol;
      how = "want " + format_double(want) + " within " + format_double(tol);
      if (!ok && q.standard_error && !tol_json) rep.any_statistical_miss = true;
    }
    rep.passed = rep.passed && ok;
    rep.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + key + ": got " + describe(q) + " (" + how + ")");
  }
  return rep;
}

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const TypeError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e))
    return kExitSchema;
  if (dynamic_cast<const ResourceError*>(&e)) return kExitResource;
  if (dynamic_cast<const CensoringError*>(&e)) return kExitCensoring;
  return kExitOther;
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << bytes;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome outcome;
  json manifest = {{"tool", kToolName}, {"version", kToolVersion}, {"command", cfg.command}, {"config", cfg.config}};
  if (cfg.seed) manifest["seed_flag"] = *cfg.seed;
  try {
    RunResult result;
    ExpectationReport check;
    bool retried = false;
    if (cfg.command == "check-all") {
      const std::uint64_t seed = cfg.seed ? *cfg.seed : static_cast<std::uint64_t>(get_int(cfg.config, "seed", kDefaultCheckSeed, ""));
      result = run_check_all(seed);
      check.passed = result.summary.at("failed").value == 0;
      for (const auto& r : result.table.rows) check.lines.push_back((r[2] == "true" ? "PASS " : "FAIL ") + r[0] + " " + r[1]);
    } else {
      result = execute(cfg.command, cfg.config, cfg.seed);
      if (cfg.check) {
        const json& expect = require(cfg.config, "expect", "");
        check = compare_expectations(expect, result);
        if (!check.passed && check.any_statistical_miss && result.stochastic) {
          result = execute(cfg.command, cfg.config, cfg.seed, 4);
          check = compare_expectations(expect, result);
          retried = true;
        }
      }
    }
    outcome.csv = result.table.render();
    outcome.digest = sha256_hex(outcome.csv);
    json summary = json::object();
    for (const auto& [k, q] : result.summary) {
      json v = {{"value", q.value}};
      if (q.exact) v["exact"] = to_string(*q.exact);
      if (q.standard_error) v["stderr"] = *q.standard_error;
      summary[k] = v;
    }
    manifest["summary"] = summary;
    manifest["details"] = result.details;
    manifest["digest"] = {{"algorithm", "sha256"}, {"value", outcome.digest}};
    if (cfg.check || cfg.command == "check-all") {
      manifest["check"] = {{"passed", check.passed}, {"retried_with_4x_samples", retried}, {"lines", check.lines}};
      for (const auto& l : check.lines) outcome.message += l + "\n";
      if (!check.passed) outcome.exit_code = kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    outcome.exit_code = exit_code_for(e);
    outcome.message = e.what();
    manifest["error"] = {{"exit_code", outcome.exit_code}, {"message", e.what()}};
  }
  manifest["exit_code"] = outcome.exit_code;
  manifest["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  outcome.manifest = manifest;
  if (cfg.out_dir) {
    try {
      std::filesystem::create_directories(*cfg.out_dir);
      if (!outcome.csv.empty()) write_file(*cfg.out_dir / (cfg.command + ".csv"), outcome.csv);
      write_file(*cfg.out_dir / (cfg.command + ".manifest.json"), manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
      outcome.exit_code = kExitOther;
      outcome.message += std::string("\n") + e.what();
    }
  }
  return outcome;
}

}  // namespace hg::cli
