#include <doctest.h>

#include <cmath>
#include <map>

#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/threads.hpp"
#include "harmonic_groups/walks.hpp"
#include "test_support.hpp"

using namespace hg;
using namespace hg::test;

namespace {

const Group kZ = Group::free_abelian(1);
const Group kD = Group::dihedral_infinite();

FiniteMeasure srw(const Group& g) { return FiniteMeasure::simple_random_walk(g.default_generators()); }

FiniteMeasure dihedral_uniform() {
  return FiniteMeasure(kD, {{Element{1, 0}, q(1, 3)}, {Element{-1, 0}, q(1, 3)}, {Element{0, 1}, q(1, 3)}});
}

// Exact law of the first return to H (tau_plus from e) by expanding all paths
// that stay outside H, up to `depth` steps. Returns the law and the leftover mass.
std::pair<std::map<Element, Rational>, Rational> first_return_law(const MarkedSubgroup& h, const FiniteMeasure& mu,
                                                                  int depth) {
  const Group& g = h.parent();
  std::map<Element, Rational> law;
  std::map<Element, Rational> alive{{g.identity(), Rational(1)}};
  for (int t = 1; t <= depth && !alive.empty(); ++t) {
    std::map<Element, Rational> next;
    for (const auto& [x, p] : alive)
      for (const auto& a : mu.atoms()) {
        const Element y = g.multiply(x, a.element);
        if (h.contains(y))
          law[h.to_model(y)] += p * a.weight;
        else
          next[y] += p * a.weight;
      }
    alive = std::move(next);
  }
  Rational left = 0;
  for (const auto& [x, p] : alive) left += p;
  return {law, left};
}

}  // namespace

TEST_SUITE("walks") {

TEST_CASE("tau is zero on the subgroup") {
  const auto two_z = MarkedSubgroup::coordinate_modulus(kZ, 0, 2);
  const WalkConfig cfg{srw(kZ), 100, 1, 1};
  const auto s = simulate_hit(Element{4}, two_z, cfg, HitMode::kTau);
  CHECK(s.tau == 0);
  CHECK(s.landing == Element{2});
}

TEST_CASE("simple walk on Z returns to 2Z after exactly two steps") {
  const auto two_z = MarkedSubgroup::coordinate_modulus(kZ, 0, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const WalkConfig cfg{srw(kZ), 100, seed, 1};
    const auto s = simulate_hit(Element{0}, two_z, cfg, HitMode::kTauPlus);
    CHECK(s.tau == 2);
    const auto x = simulate_hit(Element{1}, two_z, cfg, HitMode::kTau);
    CHECK(x.tau == 1);
  }
}

TEST_CASE("hitting measures agree with exact path enumeration") {
  struct Case {
    MarkedSubgroup h;
    FiniteMeasure mu;
  };
  const Group z2 = Group::free_abelian(2);
  std::vector<Case> cases{
      {MarkedSubgroup::coordinate_modulus(kZ, 0, 2), FiniteMeasure(kZ, {{Element{1}, q(2, 3)}, {Element{-1}, q(1, 3)}})},
      {MarkedSubgroup::coordinate_modulus(kZ, 0, 3), srw(kZ)},
      {MarkedSubgroup::even_sum(z2), srw(z2)},
      {MarkedSubgroup::rotation_core(kD), dihedral_uniform()},
  };
  for (const auto& c : cases) {
    CAPTURE(c.h.description());
    const auto [law, left] = first_return_law(c.h, c.mu, 40);
    CHECK(to_double(left) < 1e-4);
    const WalkConfig cfg{c.mu, 10'000, 123, 200'000};
    const auto emp = hitting_measure(c.h, cfg);
    CHECK(emp.censored == 0);
    std::uint64_t sum = 0;
    for (const auto& [e, n] : emp.counts) sum += n;
    CHECK(sum == emp.total);
    for (const auto& [e, p] : law) {
      if (to_double(p) < 1e-3) continue;
      CAPTURE(format_element(e));
      CHECK(z_score(emp.frequency(e), to_double(p), emp.standard_error(e)) < 4.0);
    }
  }
}

TEST_CASE("hitting measure of the whole group is the step law") {
  const auto gens = Group::free_abelian(2).default_generators();
  const auto mu = FiniteMeasure::simple_random_walk(gens);
  const auto emp = hitting_measure(MarkedSubgroup::whole(mu.group()), WalkConfig{mu, 10, 9, 100'000});
  CHECK(emp.counts.size() == 4);
  for (const auto& a : mu.atoms()) CHECK(z_score(emp.frequency(a.element), 0.25, emp.standard_error(a.element)) < 4.0);
}

TEST_CASE("symmetric step law gives a driftless hitting measure") {
  const Group z2 = Group::free_abelian(2);
  const auto h = MarkedSubgroup::even_sum(z2);
  const auto emp = hitting_measure(h, WalkConfig{srw(z2), 1000, 4, 200'000});
  const auto drift = empirical_drift(emp, h.model());
  for (std::size_t i = 0; i < drift.mean.size(); ++i) CHECK(z_score(drift.mean[i], 0.0, drift.standard_error[i]) < 4.0);
}

TEST_CASE("results do not depend on the worker count") {
  const auto h = MarkedSubgroup::rotation_core(kD);
  const WalkConfig cfg{dihedral_uniform(), 1000, 77, 20'000};
  set_worker_threads(1);
  const auto one = hitting_measure(h, cfg);
  const auto t1 = estimate_T(h, cfg);
  set_worker_threads(3);
  const auto three = hitting_measure(h, cfg);
  const auto t3 = estimate_T(h, cfg);
  set_worker_threads(0);
  CHECK(one.counts == three.counts);
  CHECK(t1.t_hat == t3.t_hat);
}

TEST_CASE("expected hitting time on the dihedral group") {
  // From s the walk leaves the coset with probability 1/3 per step.
  const auto h = MarkedSubgroup::rotation_core(kD);
  const auto t = estimate_T(h, WalkConfig{dihedral_uniform(), 10'000, 5, 100'000});
  CHECK(t.argmax_coset == 1);
  CHECK(t.coset_mean[0] == 0);
  CHECK(z_score(t.t_hat, 3.0, t.standard_error) < 4.0);
  CHECK_FALSE(t.censoring_warning);
}

TEST_CASE("censoring thresholds") {
  const auto h = MarkedSubgroup::rotation_core(kD);
  // P(tau_plus > m) = (1/3)(2/3)^(m-1).
  CHECK_THROWS_AS(hitting_measure(h, WalkConfig{dihedral_uniform(), 1, 1, 10'000}), CensoringError);
  const auto emp = hitting_measure(h, WalkConfig{dihedral_uniform(), 10, 1, 100'000});
  CHECK(emp.censored_fraction() > kCensoringWarnFraction);
  CHECK(emp.censored_fraction() < kCensoringFailFraction);
  const auto t = estimate_T(h, WalkConfig{dihedral_uniform(), 12, 1, 100'000});
  CHECK(t.censoring_warning);
  CHECK_THROWS_AS(estimate_T(h, WalkConfig{dihedral_uniform(), 4, 1, 10'000}), CensoringError);
}

TEST_CASE("invalid walk configs") {
  const auto h = MarkedSubgroup::rotation_core(kD);
  CHECK_THROWS_AS(hitting_measure(h, WalkConfig{dihedral_uniform(), 0, 1, 10}), ValidationError);
  CHECK_THROWS_AS(hitting_measure(h, WalkConfig{dihedral_uniform(), 10, 1, 0}), ValidationError);
  CHECK_THROWS_AS(hitting_measure(h, WalkConfig{srw(kZ), 10, 1, 10}), TypeError);
}

TEST_CASE("induction is exact on the subgroup and for constants") {
  const auto two_z = MarkedSubgroup::coordinate_modulus(kZ, 0, 2);
  const WalkConfig cfg{srw(kZ), 1000, 3, 1000};
  const auto on = induce_harmonic(AffineHarmonic::scalar(kZ, 5, {q(2)}), Element{6}, two_z, cfg);
  CHECK(on.exact);
  CHECK(on.value[0] == doctest::Approx(11.0));
  const auto c = induce_harmonic(AffineHarmonic::constant(kZ, {q(7, 2)}), Element{3}, two_z, cfg);
  CHECK(c.value[0] == doctest::Approx(3.5));
  CHECK(c.standard_error[0] == 0.0);
}

TEST_CASE("induced simple-walk coordinate is the identity") {
  const auto two_z = MarkedSubgroup::coordinate_modulus(kZ, 0, 2);
  const auto f = AffineHarmonic::scalar(kZ, 0, {q(2)});
  for (std::int64_t x : {-5, -1, 1, 3}) {
    const auto est = induce_harmonic(f, Element{x}, two_z, WalkConfig{srw(kZ), 1000, 8, 100'000});
    CHECK(z_score(est.value[0], static_cast<double>(x), est.standard_error[0]) < 4.0);
  }
}

TEST_CASE("restricting then inducing a constant on the dihedral group") {
  const auto h = MarkedSubgroup::rotation_core(kD);
  const auto f = AffineHarmonic::constant(kD, {q(-2)});
  const AffineHarmonic restricted(h.model(), f.constant_term(), RationalMatrix(1, 1));
  for (const auto& x : enumerate_ball(kD.default_generators(), 3).elements()) {
    const auto est = induce_harmonic(restricted, x, h, WalkConfig{dihedral_uniform(), 1000, 2, 2000});
    CHECK(est.value[0] == -2.0);
  }
}

TEST_CASE("two-stage induction through 4Z < 2Z < Z matches one stage") {
  const auto mu = srw(kZ);
  const auto two_z = MarkedSubgroup::coordinate_modulus(kZ, 0, 2);
  const auto four_z = MarkedSubgroup::coordinate_modulus(kZ, 0, 4);
  // Hitting measure of 2Z in model coordinates, exact.
  const FiniteMeasure mu_h(kZ, {{Element{-1}, q(1, 4)}, {Element{0}, q(1, 2)}, {Element{1}, q(1, 4)}});
  // 4Z inside the 2Z model is the even integers of the model.
  const auto inner_h = MarkedSubgroup::coordinate_modulus(kZ, 0, 2);
  const auto f_inner = AffineHarmonic::scalar(kZ, 0, {q(4)});  // f(4k) = 4k
  const auto f_direct = AffineHarmonic::scalar(kZ, 0, {q(4)});

  for (std::int64_t x : {1, 3, -2}) {
    CAPTURE(x);
    // Outer landing law from x.
    const std::uint64_t n_outer = 20'000;
    const MeasureSampler sampler(mu);
    std::map<Element, std::uint64_t> landings;
    for (std::uint64_t i = 0; i < n_outer; ++i) {
      RngStream rng(31, i);
      const auto s = simulate_hit(Element{x}, two_z, sampler, 1000, rng, HitMode::kTau);
      REQUIRE_FALSE(s.censored());
      ++landings[*s.landing];
    }
    double two_stage = 0, var_inner = 0, second = 0;
    for (const auto& [y, n] : landings) {
      const auto g = induce_harmonic(f_inner, y, inner_h, WalkConfig{mu_h, 1000, 41, 20'000});
      const double p = static_cast<double>(n) / n_outer;
      two_stage += p * g.value[0];
      second += p * g.value[0] * g.value[0];
      var_inner += p * p * g.standard_error[0] * g.standard_error[0];
    }
    const double var_outer = (second - two_stage * two_stage) / n_outer;
    const auto one = induce_harmonic(f_direct, Element{x}, four_z, WalkConfig{mu, 10'000, 43, 20'000});
    const double se = std::sqrt(var_outer + var_inner + one.standard_error[0] * one.standard_error[0]);
    CHECK(z_score(two_stage, one.value[0], se) < 4.0);
    CHECK(z_score(one.value[0], static_cast<double>(x), one.standard_error[0]) < 4.0);
  }
}

TEST_CASE("induction commutes with translation by the subgroup") {
  const Group z2 = Group::free_abelian(2);
  const auto h = MarkedSubgroup::even_sum(z2);
  const FiniteMeasure mu(z2, {{Element{1, 0}, q(1, 2)}, {Element{-1, 0}, q(1, 6)}, {Element{0, 1}, q(1, 6)},
                              {Element{0, -1}, q(1, 6)}});
  const auto f = AffineHarmonic::scalar(h.model(), 1, {q(3), q(-1)});
  const WalkConfig cfg{mu, 10'000, 17, 5000};
  for (const Element& hm : {Element{1, 0}, Element{-1, 2}}) {
    const Element hg_ = h.from_model(hm);
    for (const Element& x : {Element{1, 0}, Element{0, 3}, Element{2, -3}}) {
      const auto lhs = induce_harmonic(f.translated(hm), x, h, cfg);
      const auto rhs = induce_harmonic(f, z2.multiply(z2.inverse(hg_), x), h, cfg);
      CHECK(lhs.value[0] == doctest::Approx(rhs.value[0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("induction constants") {
  const Group z2 = Group::free_abelian(2);
  const auto gens = z2.default_generators();
  const auto whole = induction_constants(MarkedSubgroup::whole(z2), gens, gens, WalkConfig{srw(z2), 100, 1, 1000}, 6);
  CHECK(whole.a == 1);
  CHECK(whole.d == 0);
  CHECK(whole.m1 == 1);
  CHECK(whole.c_hg == 1);
  CHECK(whole.t_hat == 0.0);
  CHECK(whole.c_star == doctest::Approx(1.0));

  const auto rot = MarkedSubgroup::rotation_core(kD);
  const auto k = induction_constants(rot, kD.default_generators(), rot.model().default_generators(),
                                     WalkConfig{dihedral_uniform(), 10'000, 1, 100'000}, 10);
  CHECK(k.a == 1);
  CHECK(k.d == 1);
  CHECK(k.m1 == 1);
  CHECK(k.c_hg == 1);
  CHECK(z_score(k.t_hat, 3.0, k.t_standard_error) < 4.0);
  CHECK(k.c_star == doctest::Approx(5.0 + 2.0 * k.t_hat));
}

}
