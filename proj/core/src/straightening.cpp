#include "harmonic_groups/straightening.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/measure.hpp"
#include "parallel.hpp"

namespace hg {
namespace {

std::int64_t add_or_throw(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceError("map coordinate overflow");
  return out;
}

std::int64_t mul_or_throw(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("map coordinate overflow");
  return out;
}

std::int64_t isqrt(std::int64_t n) {
  const auto u = static_cast<std::uint64_t>(n);
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(u)));
  while (r * r > u) --r;
  while ((r + 1) * (r + 1) <= u) ++r;
  return static_cast<std::int64_t>(r);
}

// n (n - 1) / 2 without intermediate overflow for even/odd splits.
std::int64_t choose2(std::int64_t n) {
  return n % 2 == 0 ? mul_or_throw(n / 2, n - 1) : mul_or_throw(n, (n - 1) / 2);
}

std::size_t abelian_coords(const Group& g) { return g.kind() == GroupKind::kHeisenberg3 ? 2 : g.coordinate_count(); }

Element from_vector(const std::vector<std::int64_t>& v) { return Element(std::span<const std::int64_t>(v)); }

Group stage_output(const Group& in, const QiPrimitive& p) {
  if (const auto* lin = std::get_if<LatticeLinear>(&p)) {
    const std::size_t cols = abelian_coords(in);
    if (lin->matrix.empty()) throw TypeError("linear: empty matrix");
    for (const auto& row : lin->matrix)
      if (row.size() != cols)
        throw TypeError("linear: matrix has " + std::to_string(row.size()) + " columns, " + in.name() +
                        " needs " + std::to_string(cols));
    if (in.kind() == GroupKind::kHeisenberg3) {
      if (lin->matrix.size() != 2) throw TypeError("linear: Heisenberg maps need a 2 x 2 matrix");
      return in;
    }
    return Group::free_abelian(static_cast<int>(lin->matrix.size()));
  }
  if (const auto* t = std::get_if<Translate>(&p)) {
    in.validate(t->by);
    return in;
  }
  if (const auto* sh = std::get_if<Shear>(&p)) {
    const std::size_t n = abelian_coords(in);
    if (sh->axis >= n || sh->of >= n) throw TypeError("shear: axis out of range for " + in.name());
    return in;
  }
  const auto& sw = std::get<Swap>(p);
  const std::size_t n = abelian_coords(in);
  std::vector<std::size_t> sorted = sw.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != n) throw TypeError("swap: not a permutation of the Abelianized coordinates");
  return in;
}

Element apply_primitive(const Group& in, const QiPrimitive& p, const Element& x) {
  if (const auto* lin = std::get_if<LatticeLinear>(&p)) {
    const auto& m = lin->matrix;
    if (in.kind() == GroupKind::kHeisenberg3) {
      const std::int64_t a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
      const std::int64_t det = a * d - b * c;
      const std::int64_t X = add_or_throw(mul_or_throw(a, x[0]), mul_or_throw(b, x[1]));
      const std::int64_t Y = add_or_throw(mul_or_throw(c, x[0]), mul_or_throw(d, x[1]));
      std::int64_t Z = mul_or_throw(det, x[2]);
      Z = add_or_throw(Z, mul_or_throw(mul_or_throw(a, c), choose2(x[0])));
      Z = add_or_throw(Z, mul_or_throw(mul_or_throw(b, d), choose2(x[1])));
      Z = add_or_throw(Z, mul_or_throw(mul_or_throw(b, c), mul_or_throw(x[0], x[1])));
      return Element{X, Y, Z};
    }
    std::vector<std::int64_t> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) out[i] = add_or_throw(out[i], mul_or_throw(m[i][j], x[j]));
    return from_vector(out);
  }
  if (const auto* t = std::get_if<Translate>(&p)) return in.multiply(t->by, x);
  if (const auto* sh = std::get_if<Shear>(&p)) {
    Element out = x;
    out[sh->axis] = add_or_throw(out[sh->axis], shear_profile(sh->kind, x[sh->of]));
    return out;
  }
  const auto& perm = std::get<Swap>(p).permutation;
  Element out = x;
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = x[perm[i]];
  return out;
}

bool primitive_is_homomorphism(const Group& in, const QiPrimitive& p) {
  if (std::holds_alternative<LatticeLinear>(p)) return true;
  if (const auto* t = std::get_if<Translate>(&p)) return t->by == in.identity();
  if (const auto* sh = std::get_if<Shear>(&p)) return sh->kind == ShearKind::kZero;
  const auto& perm = std::get<Swap>(p).permutation;
  if (in.kind() == GroupKind::kFreeAbelian) return true;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

std::vector<std::int64_t> projected(const QiMapExpr& psi, const Element& x) {
  return psi.target().abelianize(psi(x));
}

std::int64_t sup_abs(const std::vector<std::int64_t>& v) {
  std::int64_t m = 0;
  for (auto c : v) m = std::max(m, c < 0 ? -c : c);
  return m;
}

RationalVector to_rational(const std::vector<std::int64_t>& v) { return RationalVector(v.begin(), v.end()); }

struct PairMax {
  std::int64_t max = -1;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::int64_t> bucket_max;  // indexed by max(len_i, len_j)
  std::uint64_t pairs = 0;
};

}  // namespace

std::int64_t shear_profile(ShearKind kind, std::int64_t n) {
  switch (kind) {
    case ShearKind::kSqrtFloor:
      return isqrt(n < 0 ? -n : n);
    case ShearKind::kMod2:
      return ((n % 2) + 2) % 2;
    case ShearKind::kZero:
      return 0;
  }
  return 0;
}

const char* to_string(ShearKind kind) {
  switch (kind) {
    case ShearKind::kSqrtFloor:
      return "sqrt_floor";
    case ShearKind::kMod2:
      return "mod2";
    case ShearKind::kZero:
      return "zero";
  }
  return "?";
}

QiMapExpr::QiMapExpr(const Group& source, std::vector<QiPrimitive> pipeline) : pipeline_(std::move(pipeline)) {
  if (source.kind() != GroupKind::kFreeAbelian && source.kind() != GroupKind::kHeisenberg3)
    throw TypeError("maps are defined on Z^d and the Heisenberg group, not " + source.name());
  stages_.push_back(source);
  for (std::size_t i = 0; i < pipeline_.size(); ++i) {
    try {
      stages_.push_back(stage_output(stages_.back(), pipeline_[i]));
    } catch (const TypeError& e) {
      throw TypeError("pipeline stage " + std::to_string(i) + ": " + e.what());
    }
  }
  const Element at_e = apply_raw(source.identity());
  if (!(at_e == target().identity())) {
    pipeline_.push_back(Translate{target().inverse(at_e)});
    stages_.push_back(target());
  }
}

bool QiMapExpr::is_homomorphism() const {
  for (std::size_t i = 0; i < pipeline_.size(); ++i)
    if (!primitive_is_homomorphism(stages_[i], pipeline_[i])) return false;
  return true;
}

Element QiMapExpr::apply_raw(const Element& x) const {
  Element cur = x;
  for (std::size_t i = 0; i < pipeline_.size(); ++i) cur = apply_primitive(stages_[i], pipeline_[i], cur);
  return cur;
}

Element QiMapExpr::operator()(const Element& x) const {
  source().validate(x);
  return apply_raw(x);
}

Element eval_qi(const QiMapExpr& psi, const Element& x) { return psi(x); }

std::int64_t DefectReport::max_within(int r) const {
  std::int64_t best = 0;
  for (const auto& [radius, value] : growth_curve)
    if (radius <= r) best = std::max(best, value);
  return best;
}

std::vector<std::int64_t> defect_at(const QiMapExpr& psi, const Element& x, const Element& y) {
  const auto axy = projected(psi, psi.source().multiply(x, y));
  const auto ax = projected(psi, x);
  const auto ay = projected(psi, y);
  std::vector<std::int64_t> out(axy.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = axy[i] - ax[i] - ay[i];
  return out;
}

DefectReport abelian_defect(const QiMapExpr& psi, const DefectProbe& probe) {
  if (probe.radius < 1) throw ValidationError("defect probe radius must be at least 1");
  const Group& src = psi.source();

  // Points of the probe, their lengths and a way to get A at a product.
  std::vector<Element> points;
  std::vector<int> lengths;
  std::vector<std::vector<std::int64_t>> a_points;
  std::function<std::vector<std::int64_t>(std::size_t, std::size_t)> a_product;

  std::vector<std::vector<std::int64_t>> a_line;  // axis mode: A(e_axis^k), k in [-2N, 2N]
  const std::int64_t n = probe.radius;
  if (probe.shape == ProbeShape::kAxisSegment) {
    if (probe.axis >= abelian_coords(src)) throw TypeError("defect probe axis out of range");
    for (std::int64_t k = -2 * n; k <= 2 * n; ++k) {
      Element e = src.identity();
      e[probe.axis] = k;
      a_line.push_back(projected(psi, e));
    }
    for (std::int64_t k = -n; k <= n; ++k) {
      Element e = src.identity();
      e[probe.axis] = k;
      points.push_back(e);
      lengths.push_back(static_cast<int>(k < 0 ? -k : k));
      a_points.push_back(a_line[static_cast<std::size_t>(k + 2 * n)]);
    }
    a_product = [&, n](std::size_t i, std::size_t j) {
      const std::int64_t k = (static_cast<std::int64_t>(i) - n) + (static_cast<std::int64_t>(j) - n);
      return a_line[static_cast<std::size_t>(k + 2 * n)];
    };
  } else {
    const BallIndex ball = enumerate_ball(src.default_generators(), probe.radius);
    points = ball.elements();
    lengths = ball.lengths();
    for (const auto& p : points) a_points.push_back(projected(psi, p));
    a_product = [&](std::size_t i, std::size_t j) { return projected(psi, src.multiply(points[i], points[j])); };
  }

  const std::uint64_t m = points.size();
  const std::uint64_t total = m * m;
  const bool exhaustive = total <= probe.pair_budget;
  const std::uint64_t evaluations = exhaustive ? total : probe.pair_budget;
  const std::size_t buckets = static_cast<std::size_t>(probe.radius) + 1;

  auto chunks = detail::map_chunks<PairMax>(static_cast<std::size_t>(evaluations), [&](std::size_t begin,
                                                                                        std::size_t end) {
    PairMax acc;
    acc.bucket_max.assign(buckets, 0);
    RngStream rng(probe.seed, begin / detail::kChunkSize);
    for (std::size_t t = begin; t < end; ++t) {
      std::size_t i, j;
      if (exhaustive) {
        i = t / m;
        j = t % m;
      } else {
        i = rng.next() % m;
        j = rng.next() % m;
      }
      const auto axy = a_product(i, j);
      std::int64_t d = 0;
      for (std::size_t c = 0; c < axy.size(); ++c) {
        const std::int64_t v = axy[c] - a_points[i][c] - a_points[j][c];
        d = std::max(d, v < 0 ? -v : v);
      }
      const auto b = static_cast<std::size_t>(std::max(lengths[i], lengths[j]));
      acc.bucket_max[b] = std::max(acc.bucket_max[b], d);
      if (d > acc.max) {
        acc.max = d;
        acc.i = i;
        acc.j = j;
      }
      ++acc.pairs;
    }
    return acc;
  });

  DefectReport report;
  report.probe = probe;
  report.exhaustive = exhaustive;
  std::vector<std::int64_t> bucket_max(buckets, 0);
  PairMax best;
  for (const auto& c : chunks) {
    report.pairs_evaluated += c.pairs;
    for (std::size_t b = 0; b < buckets; ++b) bucket_max[b] = std::max(bucket_max[b], c.bucket_max[b]);
    if (c.max > best.max) best = c;  // strict: earliest chunk wins ties
  }
  std::int64_t running = bucket_max[0];
  for (int r = 1; r <= probe.radius; ++r) {
    running = std::max(running, bucket_max[static_cast<std::size_t>(r)]);
    report.growth_curve.emplace_back(r, running);
  }
  report.max_defect = std::max<std::int64_t>(best.max, 0);
  if (best.max >= 0) {
    DefectWitness w{points[best.i], points[best.j], {}};
    const auto axy = a_product(best.i, best.j);
    for (std::size_t c = 0; c < axy.size(); ++c) w.defect.push_back(axy[c] - a_points[best.i][c] - a_points[best.j][c]);
    report.argmax = std::move(w);
  }
  return report;
}

std::vector<Rational> homogenization_sequence(const Group& group, const ScalarMap& a, const Element& x, int k_max) {
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  group.validate(x);
  std::vector<Rational> out;
  Element p = x;
  Integer scale = 1;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      p = group.multiply(p, p);
      scale *= 2;
    }
    out.push_back(a(p) / Rational(scale));
  }
  return out;
}

Homogenization homogenize(const Group& group, const ScalarMap& a, const Element& x, int k_max,
                          const Rational& defect_bound, const Rational& tolerance) {
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  group.validate(x);
  Homogenization out;
  Element p = x;
  Integer scale = 1;
  out.sequence.push_back(a(p));
  for (int k = 0; k < k_max; ++k) {
    p = group.multiply(p, p);
    scale *= 2;
    out.sequence.push_back(a(p) / Rational(scale));
    if (abs(out.sequence[k + 1] - out.sequence[k]) <= tolerance) {
      out.k_used = k;
      out.converged = true;
      break;
    }
  }
  if (!out.converged) out.k_used = k_max;
  out.a_bar = out.sequence[static_cast<std::size_t>(out.k_used)];
  out.error_bound = defect_bound / Rational(Integer(1) << out.k_used);
  return out;
}

bool defect_gate_rejects(const DefectReport& report) {
  const int r = report.probe.radius;
  const std::int64_t far = report.max_within(r);
  const std::int64_t near = report.max_within(r / 4);
  // D(r) > 1.5 D(r/4) + 1, in integers.
  return 2 * far > 3 * near + 2;
}

Linearization extract_linearization(const QiMapExpr& psi, const LinearizationOptions& options) {
  const Group& src = psi.source();
  const Group& tgt = psi.target();
  const auto r_n = static_cast<std::size_t>(src.abelian_rank());
  const auto r_m = static_cast<std::size_t>(tgt.abelian_rank());

  int radius = options.probe_radius;
  if (radius <= 0) {
    radius = 1;
    for (int r = 2; r <= 32; ++r) {
      try {
        if (enumerate_ball(src.default_generators(), r, 3000).size() > 3000) break;
      } catch (const ResourceError&) {
        break;
      }
      radius = r;
    }
  }
  DefectProbe probe;
  probe.radius = radius;
  probe.seed = options.seed;
  Linearization out;
  out.gate = abelian_defect(psi, probe);
  if (options.enforce_gate && defect_gate_rejects(out.gate))
    throw DivergenceError("Abelian defect grows from " + std::to_string(out.gate.max_within(radius / 4)) +
                          " at radius " + std::to_string(radius / 4) + " to " +
                          std::to_string(out.gate.max_within(radius)) + " at radius " + std::to_string(radius) +
                          "; defect does not look bounded");

  out.l_ab = RationalMatrix(r_m, r_n);
  const Rational d_bound = out.gate.max_defect;
  for (std::size_t i = 0; i < r_n; ++i) {
    Element lift = src.identity();
    lift[i] = 1;
    for (std::size_t j = 0; j < r_m; ++j) {
      const auto h = homogenize(
          src, [&](const Element& x) { return Rational(projected(psi, x)[j]); }, lift, options.k_max, d_bound);
      out.l_ab(j, i) = h.a_bar;
      out.k_used = std::max(out.k_used, h.k_used);
    }
  }
  const auto inv = inverse(out.l_ab);
  if (!inv) throw SingularError("linearization not invertible");
  out.t_psi = inv->transpose();

  const BallIndex ball = enumerate_ball(src.default_generators(), radius);
  out.residual_bound = 0;
  for (const auto& x : ball.elements()) {
    const RationalVector lx = out.l_ab * to_rational(src.abelianize(x));
    out.residual_bound = std::max(out.residual_bound, sup_norm(to_rational(projected(psi, x)) - lx));
  }
  return out;
}

HarmonicCoordinates::HarmonicCoordinates(Group domain, RationalMatrix basis, std::optional<MarkedSubgroup> subgroup)
    : domain_(std::move(domain)), basis_(std::move(basis)), subgroup_(std::move(subgroup)) {}

namespace {

void require_full_rank(const RationalMatrix& basis, const Group& model) {
  const auto r = static_cast<std::size_t>(model.abelian_rank());
  if (basis.cols() != r || basis.rows() != r || rank(basis) != r)
    throw ValidationError("coordinate basis must be an invertible " + std::to_string(r) + " x " + std::to_string(r) +
                          " matrix on " + model.name());
}

}  // namespace

HarmonicCoordinates HarmonicCoordinates::core(const Group& group, RationalMatrix basis) {
  if (!group.is_nilpotent()) throw TypeError("core coordinates need a nilpotent group, got " + group.name());
  require_full_rank(basis, group);
  return HarmonicCoordinates(group, std::move(basis), std::nullopt);
}

HarmonicCoordinates HarmonicCoordinates::extended(const MarkedSubgroup& subgroup, RationalMatrix basis) {
  require_full_rank(basis, subgroup.model());
  return HarmonicCoordinates(subgroup.parent(), std::move(basis), subgroup);
}

RationalVector HarmonicCoordinates::operator()(const Element& x) const {
  if (!subgroup_) return basis_ * to_rational(domain_.abelianize(x));
  const CosetDecomposition dec = subgroup_->decompose(x);
  return basis_ * to_rational(subgroup_->model().abelianize(dec.h_model));
}

HarmonicCoordinates HarmonicCoordinates::transported(const Linearization& lin, const Group& target) const {
  return core(target, basis_ * lin.t_psi.transpose());
}

HarmonicCoordinates HarmonicCoordinates::transported(const Linearization& lin, const MarkedSubgroup& target) const {
  return extended(target, basis_ * lin.t_psi.transpose());
}

RationalVector coordinates(const HarmonicCoordinates& f, const Element& x) { return f(x); }

ExtendedQiMap::ExtendedQiMap(MarkedSubgroup source_core, MarkedSubgroup target_core, QiMapExpr core_map,
                             std::vector<Element> coset_offsets)
    : source_core_(std::move(source_core)),
      target_core_(std::move(target_core)),
      core_map_(std::move(core_map)),
      offsets_(std::move(coset_offsets)) {
  if (!(core_map_.source() == source_core_.model()) || !(core_map_.target() == target_core_.model()))
    throw TypeError("core map does not go between the subgroup models");
  if (offsets_.size() != source_core_.index())
    throw ValidationError("need one coset offset per coset (" + std::to_string(source_core_.index()) + ")");
  for (const auto& o : offsets_) target().validate(o);
  if (!(offsets_[0] == target().identity())) throw ValidationError("offset of the trivial coset must be the identity");
}

Element ExtendedQiMap::operator()(const Element& x) const {
  const CosetDecomposition dec = source_core_.decompose(x);
  const Element core_image = target_core_.from_model(core_map_(dec.h_model));
  return target().multiply(core_image, offsets_[dec.coset]);
}

namespace {

template <class Map>
DeviationReport deviation_over_ball(const Group& source, const Map& map, const HarmonicCoordinates& f_src,
                                    const HarmonicCoordinates& f_tgt, int radius) {
  if (radius < 0) throw ValidationError("radius must be nonnegative");
  const BallIndex ball = enumerate_ball(source.default_generators(), radius);
  struct Best {
    Rational value = -1;
    std::size_t index = 0;
  };
  const auto& pts = ball.elements();
  auto chunks = detail::map_chunks<Best>(pts.size(), [&](std::size_t begin, std::size_t end) {
    Best b;
    for (std::size_t i = begin; i < end; ++i) {
      const Rational d = sup_norm(f_tgt(map(pts[i])) - f_src(pts[i]));
      if (d > b.value) {
        b.value = d;
        b.index = i;
      }
    }
    return b;
  });
  Best best;
  for (const auto& c : chunks)
    if (c.value > best.value) best = c;
  return DeviationReport{best.value, pts[best.index], pts.size()};
}

}  // namespace

DeviationReport straightening_deviation(const QiMapExpr& psi, const HarmonicCoordinates& f_src,
                                        const HarmonicCoordinates& f_tgt, int radius) {
  if (!(f_src.domain() == psi.source()) || !(f_tgt.domain() == psi.target()))
    throw TypeError("coordinates do not live on the map's source and target");
  return deviation_over_ball(psi.source(), psi, f_src, f_tgt, radius);
}

DeviationReport straightening_deviation(const ExtendedQiMap& phi, const HarmonicCoordinates& f_src,
                                        const HarmonicCoordinates& f_tgt, int radius) {
  if (!(f_src.domain() == phi.source()) || !(f_tgt.domain() == phi.target()))
    throw TypeError("coordinates do not live on the map's source and target");
  return deviation_over_ball(phi.source(), phi, f_src, f_tgt, radius);
}

ExtensionSlack extension_slack(const ExtendedQiMap& phi, const HarmonicCoordinates& f_tgt) {
  const MarkedSubgroup& tc = phi.target_core();
  const Group& model = tc.model();
  ExtensionSlack out;
  out.lipschitz = 0;
  const GeneratingSet gens = model.default_generators();
  for (const auto& s : gens.elements())
    out.lipschitz = std::max(out.lipschitz, sup_norm(f_tgt.basis() * to_rational(model.abelianize(s))));
  for (const auto& o : phi.coset_offsets()) {
    const auto len = word_length(model.default_generators(), tc.decompose(o).h_model, 64);
    if (!len) throw CertificationError("coset offset core part is longer than 64");
    out.c1 = std::max(out.c1, *len);
  }
  out.slack = out.lipschitz * out.c1;
  return out;
}

CoarseAffinityReport check_coarsely_affine(const QiMapExpr& psi, const RationalMatrix& l, const RationalVector& v0,
                                           int radius) {
  const Group& src = psi.source();
  if (l.rows() != static_cast<std::size_t>(psi.target().abelian_rank()) ||
      l.cols() != static_cast<std::size_t>(src.abelian_rank()) || v0.size() != l.rows())
    throw TypeError("L and v0 do not match the Abelianized ranks");
  const BallIndex ball = enumerate_ball(src.default_generators(), radius);
  const auto& pts = ball.elements();
  CoarseAffinityReport out;
  out.c_hat = 0;
  std::vector<std::vector<std::int64_t>> a_pts;
  for (const auto& x : pts) {
    a_pts.push_back(projected(psi, x));
    const RationalVector fit = l * to_rational(src.abelianize(x)) + v0;
    out.c_hat = std::max(out.c_hat, sup_norm(to_rational(a_pts.back()) - fit));
  }
  out.implied_defect_bound = 3 * out.c_hat + sup_norm(v0);

  auto chunks = detail::map_chunks<std::int64_t>(pts.size(), [&](std::size_t begin, std::size_t end) {
    std::int64_t worst = 0;
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const auto k = ball.index_of(src.multiply(pts[i], pts[j]));
        if (!k) continue;
        std::vector<std::int64_t> d(a_pts[i].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = a_pts[*k][c] - a_pts[i][c] - a_pts[j][c];
        worst = std::max(worst, sup_abs(d));
      }
    return worst;
  }, 64);
  for (auto w : chunks) out.measured_defect = std::max(out.measured_defect, w);
  out.consistent = Rational(out.measured_defect) <= out.implied_defect_bound;
  return out;
}

}  // namespace hg
