#include <doctest.h>

#include <random>

#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/harmonic.hpp"
#include "test_support.hpp"

using namespace hg;
using namespace hg::test;

namespace {

std::map<Element, RationalVector> values_on(const GeneratingSet& s, const std::function<RationalVector(const Element&)>& f) {
  std::map<Element, RationalVector> out{{s.group().identity(), f(s.group().identity())}};
  for (const auto& x : s.elements()) out[x] = f(x);
  return out;
}

RationalMatrix random_phi(std::mt19937_64& rng, std::size_t k, std::size_t r) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  RationalMatrix m(k, r);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = Rational(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_SUITE("harmonic") {

TEST_CASE("harmonicity of affine functions") {
  const Group z2 = Group::free_abelian(2);
  const auto pts = enumerate_ball(z2.default_generators(), 4).elements();
  const auto srw2 = FiniteMeasure::simple_random_walk(z2.default_generators());
  CHECK(verify_harmonic(AffineHarmonic::scalar(z2, 0, {q(1), q(0)}), srw2, pts) == 0);

  const Group z = Group::free_abelian(1);
  const FiniteMeasure biased(z, {{Element{1}, q(2, 3)}, {Element{-1}, q(1, 3)}});
  CHECK(verify_harmonic(AffineHarmonic::scalar(z, 0, {q(1)}), biased, {Element{0}, Element{5}}) == q(1, 3));

  const Group h = Group::heisenberg3();
  const auto srw_h = FiniteMeasure::simple_random_walk(h.default_generators());
  CHECK(verify_harmonic(AffineHarmonic::scalar(h, 2, {q(1), q(-3)}), srw_h,
                        enumerate_ball(h.default_generators(), 3).elements()) == 0);
}

TEST_CASE("residual equals phi applied to the drift at every point") {
  std::mt19937_64 rng(11);
  const Group h = Group::heisenberg3();
  const FiniteMeasure mu(h, {{Element{1, 0, 0}, q(1, 2)}, {Element{0, -1, 3}, q(1, 3)}, {Element{-2, 1, 0}, q(1, 6)}});
  const RationalVector drift = drift_abelian(mu);
  for (int t = 0; t < 20; ++t) {
    const AffineHarmonic f(h, {q(t), q(1)}, random_phi(rng, 2, 2));
    const RationalVector expected = f.phi() * drift;
    for (const auto& k : enumerate_ball(h.default_generators(), 2).elements())
      CHECK(harmonic_residual(f, mu, k) == expected);
  }
}

TEST_CASE("lipschitz seminorm") {
  const Group z2 = Group::free_abelian(2);
  const auto gens = z2.default_generators();
  const auto x1 = lipschitz_seminorm(AffineHarmonic::scalar(z2, 0, {q(1), q(0)}), gens, 4);
  CHECK(x1.exact_squared == 1);
  CHECK(x1.empirical_squared == 1);
  const auto mixed = lipschitz_seminorm(AffineHarmonic::scalar(z2, 0, {q(3), q(-4)}), gens, 4);
  CHECK(mixed.exact_squared == 16);
  CHECK(mixed.empirical_squared == 16);
  CHECK(mixed.exact == doctest::Approx(4.0));
  const auto king = lipschitz_seminorm(AffineHarmonic::scalar(z2, 0, {q(3), q(-4)}), king_move_generators(), 3);
  CHECK(king.exact_squared == 49);
  CHECK(lipschitz_seminorm(AffineHarmonic::constant(z2, {q(5)}), gens, 3).exact_squared == 0);
  // Complex-valued: Euclidean norm on the two components.
  const AffineHarmonic c(z2, {q(0), q(0)}, RationalMatrix::from_integers({{3, 0}, {4, 0}}));
  CHECK(lipschitz_seminorm(c, gens, 2).exact_squared == 25);
}

TEST_CASE("lipschitz profile is flat for affine functions") {
  const Group h = Group::heisenberg3();
  const auto prof = lipschitz_profile(AffineHarmonic::scalar(h, 0, {q(2), q(1)}), h.default_generators(), 4);
  REQUIRE(prof.size() == 4);
  for (const auto& r : prof) CHECK(r.empirical_squared == 4);
}

TEST_CASE("theta recovers the gradient") {
  const Group z2 = Group::free_abelian(2);
  const auto gens = z2.default_generators();
  const auto f = AffineHarmonic::scalar(z2, 0, {q(1), q(0)});
  const auto theta = theta_gradient(values_on(gens, [&](const Element& x) { return f.evaluate(x); }), gens);
  REQUIRE(theta.has_value());
  CHECK(*theta == RationalMatrix::from_integers({{1, 0}}));

  const auto sq = TestFunction::square_of_coordinate(z2, 0);
  CHECK_FALSE(theta_gradient(values_on(gens, [&](const Element& x) { return sq(x); }), gens).has_value());
}

TEST_CASE("theta round trip and isometry") {
  std::mt19937_64 rng(23);
  const Group h = Group::heisenberg3();
  const auto gens = h.default_generators();
  for (int t = 0; t < 100; ++t) {
    const AffineHarmonic f(h, {q(t % 7), q(-t)}, random_phi(rng, 2, 2));
    const auto theta = theta_gradient(values_on(gens, [&](const Element& x) { return f.evaluate(x); }), gens);
    REQUIRE(theta.has_value());
    CHECK(*theta == f.phi());
    Rational worst = 0;
    for (const auto& s : gens.elements()) {
      const auto ab = h.abelianize(s);
      worst = std::max(worst, squared_norm(*theta * RationalVector(ab.begin(), ab.end())));
    }
    CHECK(worst == lipschitz_seminorm(f, gens, 1).exact_squared);
  }
}

TEST_CASE("theta names undetected directions") {
  const Group z2 = Group::free_abelian(2);
  const GeneratingSet partial(z2, {Element{1, 0}, Element{-1, 0}}, {"a", "A"});
  const auto f = AffineHarmonic::scalar(z2, 0, {q(1), q(1)});
  try {
    (void)theta_gradient(values_on(partial, [&](const Element& x) { return f.evaluate(x); }), partial);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("[0,1]") != std::string::npos);
  }
}

TEST_CASE("translate defect") {
  const Group z2 = Group::free_abelian(2);
  const auto affine = TestFunction::affine(AffineHarmonic::scalar(z2, 0, {q(2), q(-1)}));
  CHECK(translate_defect(affine, Element{3, 1}, 5) == 0);
  const auto sq = TestFunction::square_of_coordinate(z2, 0);
  // (g.f - f)(x) = (x - 1)^2 - x^2 = 1 - 2x; over |x| <= 4 the spread is 8.
  CHECK(translate_defect(sq, Element{1, 0}, 4) == 8);
  CHECK(translate_defect(sq, Element{0, 0}, 4) == 0);
  CHECK(translate_defect(sq, Element{0, 1}, 4) == 0);
}

TEST_CASE("restriction to subgroups") {
  const Group z = Group::free_abelian(1);
  const auto two_z = MarkedSubgroup::coordinate_modulus(z, 0, 2);
  const auto r = restrict_affine(AffineHarmonic::scalar(z, 1, {q(1)}), two_z);
  CHECK(r.phi() == RationalMatrix::from_integers({{2}}));
  CHECK(r.constant_term() == RationalVector{q(1)});
  const auto d = MarkedSubgroup::rotation_core(Group::dihedral_infinite());
  const auto c = restrict_affine(AffineHarmonic::constant(d.parent(), {q(4)}), d);
  CHECK(c.phi() == RationalMatrix(1, 1));
}

TEST_CASE("restriction commutes with evaluation and theta") {
  std::mt19937_64 rng(29);
  const Group z2 = Group::free_abelian(2);
  for (const auto& h : {MarkedSubgroup::even_sum(z2), MarkedSubgroup::coordinate_modulus(z2, 1, 3)}) {
    for (int t = 0; t < 10; ++t) {
      const AffineHarmonic f(z2, {q(t)}, random_phi(rng, 1, 2));
      const auto r = restrict_affine(f, h);
      for (const auto& y : enumerate_ball(h.model().default_generators(), 3).elements())
        CHECK(r.evaluate(y) == f.evaluate(h.from_model(y)));
      const auto mg = h.model().default_generators();
      const auto theta = theta_gradient(values_on(mg, [&](const Element& y) { return f.evaluate(h.from_model(y)); }), mg);
      REQUIRE(theta.has_value());
      CHECK(*theta == f.phi() * h.inclusion_ab());
    }
  }
}

TEST_CASE("linear boundary points") {
  CHECK(linear_boundary_point({q(0), q(-3), q(6)}) == RationalVector{q(0), q(-1), q(2)});
  CHECK(linear_boundary_point({q(1, 2), q(1)}) == RationalVector{q(1), q(2)});
  CHECK(linear_boundary_point({q(-2), q(1)}) != linear_boundary_point({q(2), q(-1)}));
  CHECK_FALSE(linear_boundary_point({q(0), q(0)}).has_value());
}

TEST_CASE("dimension of the harmonic space") {
  const Group z = Group::free_abelian(1);
  const auto srw = FiniteMeasure::simple_random_walk(z.default_generators());
  const auto a = dim_hf1(MarkedSubgroup::whole(z), WalkConfig{srw, 100, 1, 1});
  CHECK(a.exact);
  CHECK(a.dim() == 2);
  const FiniteMeasure biased(z, {{Element{1}, q(2, 3)}, {Element{-1}, q(1, 3)}});
  CHECK(dim_hf1(MarkedSubgroup::whole(z), WalkConfig{biased, 100, 1, 1}).dim() == 1);

  const Group z2 = Group::free_abelian(2);
  CHECK(dim_hf1(MarkedSubgroup::whole(z2), WalkConfig{FiniteMeasure::simple_random_walk(king_move_generators()), 100, 1, 1})
            .dim() == 3);
  CHECK(dim_hf1(MarkedSubgroup::whole(Group::heisenberg3()),
                WalkConfig{FiniteMeasure::simple_random_walk(Group::heisenberg3().default_generators()), 100, 1, 1})
            .dim() == 3);

  const Group d = Group::dihedral_infinite();
  const FiniteMeasure dm(d, {{Element{1, 0}, q(1, 4)}, {Element{-1, 0}, q(1, 4)}, {Element{0, 1}, q(1, 2)}});
  const auto rep = dim_hf1(MarkedSubgroup::rotation_core(d), WalkConfig{dm, 10'000, 5, 100'000});
  CHECK_FALSE(rep.exact);
  CHECK(rep.rank == 1);
  CHECK(rep.dim() == 2);
}

TEST_CASE("liouville growth") {
  const Group z2 = Group::free_abelian(2);
  CHECK(liouville_growth(AffineHarmonic::scalar(z2, 0, {q(1), q(0)}), Element{1, 0}, 3) ==
        std::vector<Rational>{1, 2, 3});
  CHECK(liouville_growth(AffineHarmonic::scalar(z2, 0, {q(1), q(0)}), Element{0, 1}, 3) ==
        std::vector<Rational>{0, 0, 0});
  const Group h = Group::heisenberg3();
  CHECK(liouville_growth(AffineHarmonic::scalar(h, 0, {q(1), q(1)}), Element{0, 0, 1}, 4) ==
        std::vector<Rational>{0, 0, 0, 0});
  CHECK(liouville_growth(AffineHarmonic::scalar(h, 0, {q(1, 2), q(0)}), Element{1, 1, 0}, 2) ==
        std::vector<Rational>{q(1, 2), q(1)});
}

}
