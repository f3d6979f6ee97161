#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/measure.hpp"
#include "test_support.hpp"

using namespace hg;
using namespace hg::test;

namespace {

FiniteMeasure biased_z() {
  const Group z = Group::free_abelian(1);
  return FiniteMeasure(z, {{Element{1}, q(2, 3)}, {Element{-1}, q(1, 3)}});
}

// Two-step law by explicit enumeration of step pairs.
std::map<Vec, Rational> two_step_law(const FiniteMeasure& mu, const Law& mul) {
  std::map<Vec, Rational> out;
  for (const auto& a : mu.atoms())
    for (const auto& b : mu.atoms()) out[mul(to_vec(a.element), to_vec(b.element))] += a.weight * b.weight;
  return out;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("drift") {
  const auto srw2 = FiniteMeasure::simple_random_walk(Group::free_abelian(2).default_generators());
  CHECK(drift_abelian(srw2) == RationalVector{q(0), q(0)});
  CHECK(drift_abelian(biased_z()) == RationalVector{q(1, 3)});
  const Group d = Group::dihedral_infinite();
  const FiniteMeasure dm(d, {{Element{1, 0}, q(1, 2)}, {Element{-1, 0}, q(1, 4)}, {Element{0, 1}, q(1, 4)}});
  CHECK(drift_abelian(dm).empty());
}

TEST_CASE("symmetric measures have zero drift") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-3, 3), w(1, 5);
  const Group h = Group::heisenberg3();
  for (int t = 0; t < 30; ++t) {
    std::map<Element, Rational> weights;
    for (int k = 0; k < 4; ++k) {
      const Element x{c(rng), c(rng), c(rng)};
      if (x == h.identity()) continue;
      const Rational wt = w(rng);
      weights[x] += wt;
      weights[h.inverse(x)] += wt;
    }
    if (weights.empty()) continue;
    Rational total = 0;
    for (auto& [e, wt] : weights) total += wt;
    std::vector<Atom> atoms;
    for (auto& [e, wt] : weights) atoms.push_back({e, wt / total});
    const FiniteMeasure mu(h, atoms);
    CHECK(drift_abelian(mu) == RationalVector{q(0), q(0)});
    CHECK(check_sas(mu, h.default_generators(), 4).symmetric);
  }
}

TEST_CASE("check_sas") {
  const auto gens2 = Group::free_abelian(2).default_generators();
  const auto srw = FiniteMeasure::simple_random_walk(gens2);
  const auto rep = check_sas(srw, gens2, 5);
  CHECK(rep.symmetric);
  CHECK(rep.adapted_witness_radius == 1);
  CHECK(rep.smooth);
  CHECK(rep.first_moment == 1);

  const auto zgens = Group::free_abelian(1).default_generators();
  const auto b = check_sas(biased_z(), zgens, 5);
  CHECK_FALSE(b.symmetric);
  CHECK(b.adapted_witness_radius == 1);

  // Support {+2, -1}: +1 = 2 + (-1) takes two steps.
  const Group z = Group::free_abelian(1);
  const FiniteMeasure skew(z, {{Element{2}, q(1, 3)}, {Element{-1}, q(2, 3)}});
  const auto s = check_sas(skew, zgens, 6);
  CHECK(s.adapted_witness_radius == 2);
  CHECK(s.first_moment == q(4, 3));

  // Positive steps only never reach -1.
  const FiniteMeasure pos(z, {{Element{1}, q(1, 2)}, {Element{2}, q(1, 2)}});
  CHECK_FALSE(check_sas(pos, zgens, 6).adapted_witness_radius.has_value());
  CHECK_FALSE(check_sas(FiniteMeasure::point_mass(z, Element{0}), zgens, 3).adapted_witness_radius.has_value());
}

TEST_CASE("first moment in H3 uses the word metric") {
  const Group h = Group::heisenberg3();
  const FiniteMeasure mu(h, {{Element{0, 0, 1}, q(1, 2)}, {Element{0, 0, -1}, q(1, 2)}});
  CHECK(first_moment(mu, h.default_generators()) == 4);
}

TEST_CASE("convolution") {
  const Group z = Group::free_abelian(1);
  const auto srw = FiniteMeasure::simple_random_walk(z.default_generators());
  const auto two = convolve(srw, srw);
  CHECK(two.weight_of(Element{-2}) == q(1, 4));
  CHECK(two.weight_of(Element{0}) == q(1, 2));
  CHECK(two.weight_of(Element{2}) == q(1, 4));
  CHECK(two.weight_of(Element{1}) == 0);

  const auto delta = FiniteMeasure::point_mass(z, Element{0});
  const auto same = convolve(delta, biased_z());
  CHECK(same.weight_of(Element{1}) == q(2, 3));
  CHECK(same.weight_of(Element{-1}) == q(1, 3));
}

TEST_CASE("convolution in H3 matches step-pair enumeration") {
  const Group h = Group::heisenberg3();
  const FiniteMeasure mu(h, {{Element{1, 0, 0}, q(1, 2)}, {Element{0, 1, 0}, q(1, 3)}, {Element{0, -1, 2}, q(1, 6)}});
  const auto conv = convolve(mu, mu);
  const auto oracle = two_step_law(mu, h3_mul);
  CHECK(conv.atoms().size() == oracle.size());
  Rational total = 0;
  for (const auto& a : conv.atoms()) {
    CHECK(oracle.at(to_vec(a.element)) == a.weight);
    total += a.weight;
  }
  CHECK(total == 1);
  const auto d = drift_abelian(conv);
  const auto d1 = drift_abelian(mu);
  CHECK(d == d1 + d1);
  const auto gens = h.default_generators();
  CHECK(first_moment(conv, gens) <= 2 * first_moment(mu, gens));
}

TEST_CASE("validation") {
  const Group z = Group::free_abelian(1);
  try {
    FiniteMeasure(z, {{Element{1}, q(49, 100)}, {Element{-1}, q(1, 2)}});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("99/100") != std::string::npos);
  }
  CHECK_THROWS_AS(FiniteMeasure(z, {{Element{1}, q(1, 2)}, {Element{1}, q(1, 2)}}), ValidationError);
  CHECK_THROWS_AS(FiniteMeasure(z, {{Element{1}, q(3, 2)}, {Element{-1}, q(-1, 2)}}), ValidationError);
  CHECK_THROWS_AS(FiniteMeasure(z, {{Element{1, 1}, q(1)}}), TypeError);
}

TEST_CASE("sampling frequencies") {
  const auto mu = biased_z();
  RngStream rng(99, 0);
  const int n = 200000;
  int plus = 0;
  for (int i = 0; i < n; ++i) plus += sample(mu, rng) == Element{1};
  const double p = 2.0 / 3.0;
  CHECK(z_score(static_cast<double>(plus) / n, p, std::sqrt(p * (1 - p) / n)) < 4.0);

  RngStream point(1, 0);
  const auto delta = FiniteMeasure::point_mass(Group::heisenberg3(), Element{1, 2, 3});
  for (int i = 0; i < 100; ++i) CHECK(sample(delta, point) == Element{1, 2, 3});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differs_stream = false, differs_seed = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs_stream |= x != c.next();
    differs_seed |= x != d.next();
  }
  CHECK(differs_stream);
  CHECK(differs_seed);
}

}
