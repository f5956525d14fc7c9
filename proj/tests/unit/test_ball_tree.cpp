#include <doctest.h>

#include "oracles.hpp"
#include "ultra/ball_tree.hpp"
#include "ultra/error.hpp"
#include "ultra/lab.hpp"

using ultra::BallTree;
using ultra::DistanceMatrix;
using ultra::DistanceSet;
using ultra::FiniteMetric;
using ultra::Rational;

namespace {

FiniteMetric metric(std::initializer_list<std::initializer_list<Rational>> rows) {
  DistanceMatrix m;
  for (const auto& row : rows) m.emplace_back(row);
  return FiniteMetric::from_matrix(m);
}

BallTree pair_at(Rational r, const char* a = "a", const char* b = "b") {
  return BallTree::internal(r, {BallTree::leaf(a), BallTree::leaf(b)});
}

}  // namespace

TEST_CASE("ball tree invariants are enforced") {
  CHECK_THROWS_AS(BallTree::internal(1, {BallTree::leaf("a")}), ultra::PreconditionError);
  CHECK_THROWS_AS(BallTree::internal(0, {BallTree::leaf("a"), BallTree::leaf("b")}),
                  ultra::PreconditionError);
  CHECK_THROWS_AS(BallTree::internal(1, {pair_at(1), BallTree::leaf("c")}), ultra::PreconditionError);
  CHECK_THROWS_AS(BallTree::internal(1, {pair_at(2), BallTree::leaf("c")}), ultra::PreconditionError);
}

TEST_CASE("to_ball_tree examples") {
  const BallTree one = ultra::to_ball_tree(metric({{0}}));
  CHECK(one.is_leaf());

  const BallTree two = ultra::to_ball_tree(metric({{0, 1}, {1, 0}}));
  REQUIRE_FALSE(two.is_leaf());
  CHECK(two.label() == Rational(1));
  CHECK(two.children().size() == 2);
  CHECK(two.children()[0].is_leaf());

  const BallTree three = ultra::to_ball_tree(FiniteMetric::from_matrix(oracle::max_formula({0, 1, 2})));
  CHECK(three.label() == Rational(2));
  REQUIRE(three.children().size() == 2);
  bool has_inner = false;
  for (const BallTree& c : three.children()) {
    if (!c.is_leaf()) {
      has_inner = true;
      CHECK(c.label() == Rational(1));
      CHECK(c.children().size() == 2);
    }
  }
  CHECK(has_inner);
  CHECK(ultra::isometric(three, ultra::canonical_space_of(DistanceSet::of({0, 1, 2}))));
}

TEST_CASE("to_ball_tree rejects non-ultrametrics with a witness triple") {
  try {
    ultra::to_ball_tree(metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
    FAIL("expected NotUltrametricError");
  } catch (const ultra::NotUltrametricError& e) {
    const auto [i, j, k] = e.witness();
    const auto m = metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    CHECK(m.at(i, j) > std::max(m.at(i, k), m.at(k, j)));
  }
}

TEST_CASE("from_ball_tree evaluates least common ancestors") {
  CHECK(ultra::from_ball_tree(BallTree::leaf("x")).matrix() == DistanceMatrix{{Rational(0)}});
  CHECK(ultra::from_ball_tree(pair_at(1)).matrix() ==
        DistanceMatrix{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  const BallTree t = BallTree::internal(2, {pair_at(1, "p", "q"), BallTree::leaf("r")});
  const FiniteMetric m = ultra::from_ball_tree(t);
  CHECK(m.names() == t.points());
  const auto expected = oracle::max_formula({0, 1, 2});
  CHECK(ultra::brute_isometric(m, FiniteMetric::from_matrix(expected)));
}

TEST_CASE("canonical codes ignore point names and child order") {
  const BallTree a = BallTree::internal(3, {pair_at(1, "a", "b"), BallTree::leaf("c")});
  const BallTree b = BallTree::internal(3, {BallTree::leaf("z"), pair_at(1, "y", "x")});
  CHECK(ultra::canonical_code(a) == ultra::canonical_code(b));
  CHECK(ultra::isometric(a, b));
  CHECK_FALSE(ultra::canonical_code(pair_at(1)) == ultra::canonical_code(pair_at(2)));
  CHECK(ultra::canonical_code(a).hex().size() == 2 * ultra::canonical_code(a).bytes().size());
}

TEST_CASE("isometric and embeds examples") {
  const BallTree a = pair_at(1);
  CHECK(ultra::isometric(a, a));
  CHECK_FALSE(ultra::isometric(pair_at(1), pair_at(2)));
  CHECK(ultra::embeds(BallTree::leaf("x"), pair_at(5)));
  CHECK_FALSE(ultra::embeds(pair_at(1), pair_at(2)));
  const BallTree u = ultra::canonical_space_of(DistanceSet::of({0, 1, 2, 3}));
  CHECK(ultra::embeds(ultra::canonical_space_of(DistanceSet::of({0, 1, 3})), u));
  CHECK_FALSE(ultra::embeds(u, ultra::canonical_space_of(DistanceSet::of({0, 1, 3}))));
  // Two children of label 1 need two distinct target balls.
  const BallTree twin = BallTree::internal(2, {pair_at(1, "a", "b"), pair_at(1, "c", "d")});
  const BallTree single = BallTree::internal(2, {pair_at(1, "a", "b"), BallTree::leaf("c"),
                                                 BallTree::leaf("d")});
  CHECK_FALSE(ultra::embeds(twin, single));
  CHECK(ultra::embeds(single, BallTree::internal(2, {pair_at(1, "a", "b"), pair_at(1, "c", "d"),
                                                      BallTree::leaf("e")})));
}

TEST_CASE("brute oracles") {
  const FiniteMetric u = FiniteMetric::from_matrix(oracle::max_formula({0, 1, 2}));
  const FiniteMetric path = metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK_FALSE(ultra::brute_isometric(u, path));
  const std::vector<std::size_t> perm{1, 2, 0};
  CHECK(ultra::brute_isometric(path, path.permuted(perm)));
  CHECK_FALSE(ultra::brute_isometric(u, metric({{0, 1}, {1, 0}})));
  CHECK(ultra::brute_embeds(metric({{0}}), path));
  CHECK_FALSE(ultra::brute_embeds(metric({{0, 1}, {1, 0}}),
                                  FiniteMetric::from_matrix(oracle::max_formula({0, 2, 3}))));
  CHECK_FALSE(ultra::brute_embeds(path, metric({{0, 1}, {1, 0}})));
}

TEST_CASE("brute oracles refuse oversized input") {
  const FiniteMetric big = ultra::from_ball_tree(
      ultra::canonical_space_of(DistanceSet::of({1, 2, 3, 4, 5, 6, 7, 8, 9})));
  CHECK_THROWS_AS(ultra::brute_isometric(big, big), ultra::LimitError);
  CHECK_THROWS_AS(ultra::brute_embeds(big, big, 8), ultra::LimitError);
  CHECK(ultra::brute_isometric(big, big, 10));
}

TEST_CASE("canonical space of D") {
  CHECK(ultra::canonical_space_of(DistanceSet()).is_leaf());
  const BallTree two = ultra::canonical_space_of(DistanceSet::of({1}));
  CHECK(two.label() == Rational(1));
  CHECK(two.children().size() == 2);
  for (const auto& d : {DistanceSet::of({1, 2}), DistanceSet::of({Rational(1, 2), 3, 7}),
                        DistanceSet::of({1, 2, 3, 4, 5})}) {
    const BallTree t = ultra::canonical_space_of(d);
    CHECK(ultra::realized_distances(t) == d);
    const std::vector<Rational> values(d.values().begin(), d.values().end());
    CHECK(ultra::brute_isometric(ultra::from_ball_tree(t),
                                 FiniteMetric::from_matrix(oracle::max_formula(values))));
  }
}

TEST_CASE("realized distances of a ball tree") {
  const BallTree t = BallTree::internal(3, {pair_at(Rational(1, 2)), BallTree::leaf("c")});
  CHECK(ultra::realized_distances(t) == DistanceSet::of({0, Rational(1, 2), 3}));
}

TEST_CASE("round trip, isosceles law, and relation laws on random samples") {
  ultra::lab::Rng rng(11);
  std::vector<BallTree> sample;
  for (int i = 0; i < 60; ++i) {
    const DistanceSet d = ultra::lab::gen_distance_set(rng, 1 + rng.below(3));
    sample.push_back(ultra::lab::gen_ball_tree(rng, d, 6));
  }
  for (const BallTree& t : sample) {
    const FiniteMetric m = ultra::from_ball_tree(t);
    CHECK(ultra::to_ball_tree(m).code() == t.code());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        for (std::size_t k = 0; k < m.size(); ++k) {
          std::array<Rational, 3> s = {m.at(i, j), m.at(j, k), m.at(i, k)};
          std::sort(s.begin(), s.end());
          if (i != j && j != k && i != k) CHECK(s[1] == s[2]);
        }
      }
    }
  }
  for (const BallTree& a : sample) {
    CHECK(ultra::embeds(a, a));
    for (const BallTree& b : sample) {
      const bool ab = ultra::embeds(a, b);
      const bool ba = ultra::embeds(b, a);
      CHECK(ultra::isometric(a, b) == (ab && ba));
      if (!ab) continue;
      for (const BallTree& c : sample) {
        if (ultra::embeds(b, c)) CHECK(ultra::embeds(a, c));
      }
    }
  }
}
