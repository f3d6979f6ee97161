#include <doctest.h>

#include <random>

#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/group.hpp"
#include "harmonic_groups/threads.hpp"
#include "test_support.hpp"

using namespace hg;
using namespace hg::test;

namespace {

std::vector<Group> catalog() {
  return {Group::free_abelian(1), Group::free_abelian(2), Group::heisenberg3(), Group::dihedral_infinite(),
          Group::direct_product({Group::free_abelian(1), Group::dihedral_infinite()}),
          Group::direct_product({Group::heisenberg3(), Group::free_abelian(1)})};
}

std::vector<Vec> as_vecs(const GeneratingSet& s) {
  std::vector<Vec> out;
  for (const auto& e : s.elements()) out.push_back(to_vec(e));
  return out;
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("heisenberg products") {
  const Group h = Group::heisenberg3();
  const Element a{1, 0, 0}, b{0, 1, 0};
  CHECK(h.multiply(a, b) == Element{1, 1, 1});
  CHECK(h.multiply(b, a) == Element{1, 1, 0});
  const Element comm = h.multiply(h.multiply(a, b), h.multiply(h.inverse(a), h.inverse(b)));
  CHECK(comm == Element{0, 0, 1});
  CHECK(h.inverse(Element{2, 3, 5}) == Element{-2, -3, 1});
  CHECK(h.abelianize(Element{4, -1, 9}) == std::vector<std::int64_t>{4, -1});
}

TEST_CASE("dihedral products") {
  const Group d = Group::dihedral_infinite();
  const Element r{1, 0}, s{0, 1};
  CHECK(d.multiply(s, r) == Element{-1, 1});
  CHECK(d.multiply(r, s) == Element{1, 1});
  CHECK(d.multiply(s, s) == d.identity());
  CHECK(d.abelian_rank() == 0);
  CHECK(d.abelianize(Element{5, 1}).empty());
  CHECK_FALSE(d.is_nilpotent());
}

TEST_CASE("word lengths") {
  const Group h = Group::heisenberg3();
  CHECK(word_length(h.default_generators(), Element{0, 0, 1}, 10) == 4);
  CHECK(word_length(h.default_generators(), h.identity(), 10) == 0);
  const Group z2 = Group::free_abelian(2);
  CHECK(word_length(z2.default_generators(), Element{2, -1}, 10) == 3);
  CHECK(word_length(king_move_generators(), Element{2, -1}, 10) == 2);
  CHECK_FALSE(word_length(z2.default_generators(), Element{20, 0}, 5).has_value());
}

TEST_CASE("ball sizes") {
  const Group z2 = Group::free_abelian(2);
  CHECK(enumerate_ball(z2.default_generators(), 1).size() == 5);
  CHECK(enumerate_ball(z2.default_generators(), 2).size() == 13);
  CHECK(enumerate_ball(Group::dihedral_infinite().default_generators(), 1).size() == 4);
  for (int r = 0; r <= 8; ++r)
    CHECK(enumerate_ball(z2.default_generators(), r).size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
}

TEST_CASE("ball sizes match a naive breadth-first search") {
  const Group h = Group::heisenberg3();
  const auto ball = enumerate_ball(h.default_generators(), 7);
  const auto sizes = bfs_sphere_sizes(as_vecs(h.default_generators()), h3_mul, {0, 0, 0}, 7);
  std::size_t cumulative = 0;
  for (int r = 0; r <= 7; ++r) {
    cumulative += sizes[r];
    CHECK(ball.count_within(r) == cumulative);
  }
  const Group d = Group::dihedral_infinite();
  CHECK(enumerate_ball(d.default_generators(), 9).size() ==
        bfs_ball_size(as_vecs(d.default_generators()), dinf_mul, {0, 0}, 9));
  CHECK(enumerate_ball(king_move_generators(), 6).size() ==
        bfs_ball_size(as_vecs(king_move_generators()), zd_mul, {0, 0}, 6));
}

TEST_CASE("ball is ordered by length and indexable") {
  const Group h = Group::heisenberg3();
  const auto ball = enumerate_ball(h.default_generators(), 5);
  for (std::size_t i = 1; i < ball.size(); ++i) CHECK(ball.lengths()[i - 1] <= ball.lengths()[i]);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    CHECK(ball.index_of(ball.elements()[i]) == i);
    CHECK(ball.length_of(ball.elements()[i]) == ball.lengths()[i]);
  }
  CHECK_FALSE(ball.index_of(Element{100, 0, 0}).has_value());
}

TEST_CASE("ball cap is enforced with a message naming the cap") {
  const Group h = Group::heisenberg3();
  try {
    (void)enumerate_ball(h.default_generators(), 30, 1000);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
}

TEST_CASE("group laws hold on balls of radius 4") {
  for (const Group& g : catalog()) {
    CAPTURE(g.name());
    const auto pts = enumerate_ball(g.default_generators(), g.kind() == GroupKind::kDirectProduct ? 3 : 4).elements();
    const Element e = g.identity();
    for (const auto& a : pts) {
      CHECK(g.multiply(a, e) == a);
      CHECK(g.multiply(e, a) == a);
      CHECK(g.multiply(a, g.inverse(a)) == e);
      CHECK(g.multiply(g.inverse(a), a) == e);
    }
    const std::size_t n = std::min<std::size_t>(pts.size(), 60);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto ab = g.abelianize(g.multiply(pts[i], pts[j]));
        const auto a = g.abelianize(pts[i]);
        const auto b = g.abelianize(pts[j]);
        for (std::size_t k = 0; k < ab.size(); ++k) CHECK(ab[k] == a[k] + b[k]);
        for (std::size_t l = 0; l < n; l += 3)
          CHECK(g.multiply(g.multiply(pts[i], pts[j]), pts[l]) == g.multiply(pts[i], g.multiply(pts[j], pts[l])));
      }
  }
}

TEST_CASE("heisenberg law matches unitriangular matrices") {
  const Group h = Group::heisenberg3();
  const auto pts = enumerate_ball(h.default_generators(), 3).elements();
  for (const auto& a : pts)
    for (const auto& b : pts) CHECK(to_vec(h.multiply(a, b)) == h3_mul(to_vec(a), to_vec(b)));
}

TEST_CASE("power by squaring agrees with repeated multiplication") {
  const Group h = Group::heisenberg3();
  const Element x{2, -1, 3};
  Element acc = h.identity();
  for (int n = 0; n <= 12; ++n) {
    CHECK(h.power(x, n) == acc);
    CHECK(h.power(x, -n) == h.inverse(acc));
    acc = h.multiply(acc, x);
  }
  CHECK_THROWS_AS(h.power(Element{1, 1, 0}, std::int64_t{1} << 40), ResourceError);
}

TEST_CASE("word metric is symmetric and satisfies the triangle inequality") {
  const Group h = Group::heisenberg3();
  const auto gens = h.default_generators();
  const auto ball = enumerate_ball(gens, 3);
  const auto& pts = ball.elements();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& a = pts[pick(rng)];
    const auto& b = pts[pick(rng)];
    const auto ab = word_length(gens, h.multiply(a, b), 12);
    REQUIRE(ab.has_value());
    CHECK(*ab <= *ball.length_of(a) + *ball.length_of(b));
    CHECK(word_length(gens, h.inverse(a), 12) == ball.length_of(a));
  }
}

TEST_CASE("generator comparability on Z^2") {
  const auto standard = Group::free_abelian(2).default_generators();
  const auto king = king_move_generators();
  CHECK(generator_comparability(standard, king) == 1);
  CHECK(generator_comparability(king, standard) == 2);
  for (const auto& x : enumerate_ball(king, 6).elements()) {
    const auto ls = word_length(standard, x, 20);
    const auto lk = word_length(king, x, 20);
    CHECK(*ls == std::abs(x[0]) + std::abs(x[1]));
    CHECK(*lk == std::max(std::abs(x[0]), std::abs(x[1])));
    CHECK(*lk <= *ls);
    CHECK(*ls <= 2 * *lk);
  }
}

TEST_CASE("generating set validation") {
  const Group z = Group::free_abelian(1);
  CHECK_THROWS_AS(GeneratingSet(z, {Element{1}}, {"a"}), ValidationError);
  CHECK_THROWS_AS(GeneratingSet(z, {Element{0}, Element{1}, Element{-1}}, {"e", "a", "A"}), ValidationError);
  CHECK_THROWS_AS(GeneratingSet(z, {Element{1, 0}, Element{-1, 0}}, {"a", "A"}), TypeError);
  const GeneratingSet dup(z, {Element{1}, Element{-1}, Element{1}}, {"a", "A", "a"});
  CHECK(dup.size() == 2);
}

TEST_CASE("type checks") {
  const Group d = Group::dihedral_infinite();
  CHECK_THROWS_AS(d.validate(Element{0, 2}), TypeError);
  CHECK_THROWS_AS(d.validate(Element{1, 0, 0}), TypeError);
  CHECK(d.contains(Element{-4, 1}));
}

TEST_CASE("direct products act factorwise") {
  const Group p = Group::direct_product({Group::heisenberg3(), Group::dihedral_infinite()});
  CHECK(p.coordinate_count() == 5);
  CHECK(p.abelian_rank() == 2);
  const Element a{1, 0, 0, 1, 0}, b{0, 1, 0, 0, 1};
  CHECK(p.multiply(a, b) == Element{1, 1, 1, 1, 1});
  CHECK(p.abelianize(Element{3, 4, 5, 6, 1}) == std::vector<std::int64_t>{3, 4});
}

TEST_CASE("ball enumeration does not depend on the worker count") {
  const auto gens = Group::heisenberg3().default_generators();
  set_worker_threads(1);
  const auto one = enumerate_ball(gens, 6).elements();
  set_worker_threads(4);
  const auto four = enumerate_ball(gens, 6).elements();
  set_worker_threads(0);
  CHECK(one == four);
}

}
