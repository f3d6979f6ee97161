#include "oracles.hpp"

#include "harmonic_groups/errors.hpp"

namespace hg::oracle {

ExactHitLaw first_hit_law(const MarkedSubgroup& h, const FiniteMeasure& mu, const Element& start, HitMode mode,
                          int depth) {
  const Group& g = h.parent();
  ExactHitLaw out;
  if (mode == HitMode::kTau && h.label(start) == 0) {
    out.law[h.to_model(start)] = 1;
    out.unresolved = 0;
    return out;
  }
  std::map<Element, Rational> alive{{start, Rational(1)}};
  for (int t = 0; t < depth && !alive.empty(); ++t) {
    std::map<Element, Rational> next;
    for (const auto& [pos, mass] : alive)
      for (const auto& atom : mu.atoms()) {
        const Element y = g.multiply(pos, atom.element);
        if (h.label(y) == 0)
          out.law[h.to_model(y)] += mass * atom.weight;
        else
          next[y] += mass * atom.weight;
      }
    alive = std::move(next);
  }
  out.unresolved = 0;
  for (const auto& [_, m] : alive) out.unresolved += m;
  return out;
}

Rational dihedral_extension_offset(const FiniteMeasure& mu) {
  const Group& g = mu.group();
  if (!(g == Group::dihedral_infinite())) throw TypeError("dihedral oracle needs D_inf");
  const Element r{1, 0}, r_inv{-1, 0}, s{0, 1};
  Rational covered = mu.weight_of(r) + mu.weight_of(r_inv) + mu.weight_of(s);
  if (covered != 1) throw ValidationError("dihedral oracle needs support inside {r, r^-1, s}");
  if (mu.weight_of(s) == 0) throw ValidationError("dihedral oracle needs mu(s) > 0");
  return (mu.weight_of(r_inv) - mu.weight_of(r)) / mu.weight_of(s);
}

Rational dihedral_extension_residual(const FiniteMeasure& mu, int radius) {
  const Rational t = dihedral_extension_offset(mu);
  const Group& g = mu.group();
  auto psi = [&](const Element& x) { return Rational(x[0]) + (x[1] ? t : Rational(0)); };
  Rational worst = 0;
  const BallIndex ball = enumerate_ball(g.default_generators(), radius);
  for (const auto& k : ball.elements()) {
    Rational mean = 0;
    for (const auto& atom : mu.atoms()) mean += atom.weight * psi(g.multiply(k, atom.element));
    worst = std::max(worst, abs(mean - psi(k)));
  }
  return worst;
}

Rational random_rational(RngStream& rng, int max_num, int max_den) {
  const auto span = static_cast<std::uint64_t>(2 * max_num + 1);
  const auto num = static_cast<long long>(rng.next() % span) - max_num;
  const auto den = static_cast<long long>(rng.next() % static_cast<std::uint64_t>(max_den)) + 1;
  return Rational(num, den);
}

}  // namespace hg::oracle
