#include <doctest.h>

#include "oracles.hpp"
#include "ultra/error.hpp"
#include "ultra/lab.hpp"
#include "ultra/reductions.hpp"

using namespace ultra::reduce;
using ultra::BallTree;
using ultra::DistanceSet;
using ultra::FiniteMetric;
using ultra::Rational;

namespace {

using Parents = std::vector<std::optional<std::size_t>>;

bool same_space(const BallTree& t, const ultra::DistanceMatrix& m) {
  return ultra::isometric(t, ultra::to_ball_tree(FiniteMetric::from_matrix(m)));
}

BallTree pair_at(Rational r) {
  return BallTree::internal(r, {BallTree::leaf("a"), BallTree::leaf("b")});
}

}  // namespace

TEST_CASE("rooted trees") {
  const RootedTree t = RootedTree::from_parents({std::nullopt, 0, 0, 1});
  CHECK(t.size() == 4);
  CHECK(t.height() == 2);
  CHECK(t.rank(0) == 2);
  CHECK(t.depth(3) == 2);
  CHECK(t.meet(3, 2) == 0);
  CHECK(t.meet(3, 1) == 1);
  CHECK(t.is_leaf(2));
  CHECK_THROWS_AS(RootedTree::from_parents({0}), ultra::InputError);
  CHECK_THROWS_AS(RootedTree::from_parents({std::nullopt, 1}), ultra::InputError);
  CHECK_THROWS_AS(RootedTree::from_parents({}), ultra::InputError);
}

TEST_CASE("theta examples") {
  const std::vector<Rational> r{3, 2, 1};
  const BallTree one = theta(RootedTree::from_parents({std::nullopt}), r);
  CHECK(one.size() == 1);
  const BallTree path = theta(RootedTree::from_parents({std::nullopt, 0, 1}), r);
  CHECK(same_space(path, oracle::theta_matrix({std::nullopt, 0, 1}, r)));
  CHECK(ultra::realized_distances(path) == DistanceSet::of({2, 3}));
  CHECK_THROWS_AS(theta(RootedTree::from_parents({std::nullopt, 0, 1}), std::vector<Rational>{2}),
                  ultra::PreconditionError);
  CHECK_THROWS_AS(theta(RootedTree::from_parents({std::nullopt, 0}), std::vector<Rational>{1, 2}),
                  ultra::PreconditionError);
}

TEST_CASE("theta and rank_space match their defining formulas") {
  ultra::lab::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const RootedTree t = ultra::lab::gen_tree(rng, 8);
    std::vector<Rational> dec;
    for (std::size_t k = 0; k <= t.height(); ++k) dec.push_back(Rational(static_cast<std::int64_t>(t.height() + 2 - k)));
    CHECK(same_space(theta(t, dec), oracle::theta_matrix(t.parents(), dec)));
    std::vector<Rational> inc{0};
    for (std::size_t k = 0; k <= t.rank(0) + 1; ++k) inc.push_back(Rational(static_cast<std::int64_t>(3 * k + 1), 2));
    CHECK(same_space(rank_space(t, inc), oracle::rank_matrix(t.parents(), inc)));
  }
}

TEST_CASE("rank_space on a two-node chain") {
  const RootedTree chain = RootedTree::from_parents({std::nullopt, 0});
  const std::vector<Rational> r{0, 1, 3};
  const BallTree s = rank_space(chain, r);
  CHECK(s.size() == 3);
  CHECK(s.label() == Rational(3));
  CHECK_THROWS_AS(rank_space(chain, std::vector<Rational>{0, 1}), ultra::PreconditionError);
  CHECK_THROWS_AS(rank_space(chain, std::vector<Rational>{1, 2, 3}), ultra::PreconditionError);
}

TEST_CASE("rooted tree relations") {
  const RootedTree a = RootedTree::from_parents({std::nullopt, 0, 0, 1});
  const RootedTree b = RootedTree::from_parents({std::nullopt, 0, 1, 0});
  const RootedTree c = RootedTree::from_parents({std::nullopt, 0, 0});
  CHECK(rooted_tree_iso(a, b));
  CHECK(brute_rooted_iso(a, b));
  CHECK_FALSE(rooted_tree_iso(a, c));
  CHECK(rooted_tree_embeds(c, a));
  CHECK(brute_rooted_embeds(c, a));
  CHECK_FALSE(rooted_tree_embeds(a, c));
  CHECK_FALSE(brute_rooted_embeds(a, c));
  // Two children of the root cannot both go to the single child of the path.
  const RootedTree path = RootedTree::from_parents({std::nullopt, 0, 1});
  CHECK_FALSE(rooted_tree_embeds(c, path));
  CHECK_FALSE(brute_rooted_embeds(c, path));
}

TEST_CASE("glue_star") {
  const DistanceSet d = DistanceSet::of({1, 3, 7});
  const BallTree g = glue_star(pair_at(1), d, 7);
  // u realizes only 1, so nothing puts 3 back.
  CHECK(ultra::realized_distances(g).subset_of(d));
  CHECK(d.without(3).subset_of(ultra::realized_distances(g)));
  CHECK(ultra::realized_distances(glue_star(pair_at(3), d, 7)) == d);
  CHECK_THROWS_AS(glue_star(pair_at(7), d, 7), ultra::PreconditionError);
  CHECK_THROWS_AS(glue_star(pair_at(1), d, 1), ultra::PreconditionError);
}

TEST_CASE("add_tail realizes exactly D") {
  const DistanceSet d = DistanceSet::of({1, 3, 7});
  const BallTree t = add_tail(pair_at(1), d);
  CHECK(ultra::realized_distances(t) == d);
  CHECK(t.label() == Rational(7));
  CHECK(t.size() == 2 + 3);
  CHECK(ultra::realized_distances(add_tail(pair_at(7), d)) == d);
  CHECK_THROWS_AS(add_tail(pair_at(9), d), ultra::PreconditionError);
}

TEST_CASE("phi_union and decompose") {
  const std::vector<BallTree> xs{pair_at(1), BallTree::leaf("c")};
  const BallTree u = phi_union(xs, 5);
  CHECK(u.size() == 3);
  CHECK(u.label() == Rational(5));
  CHECK_THROWS_AS(phi_union(xs, 1), ultra::PreconditionError);
  CHECK_THROWS_AS(phi_union(std::vector<BallTree>{}, 1), ultra::PreconditionError);

  const DistanceSet d = DistanceSet::of({1, 3, 7});
  const BallTree x = BallTree::internal(7, {pair_at(1), pair_at(3), BallTree::leaf("c")});
  const std::vector<BallTree> parts = decompose(x, d);
  REQUIRE(parts.size() == 3);
  for (const BallTree& p : parts) CHECK(p.label() == Rational(3));
  std::size_t total = 0;
  for (const BallTree& p : parts) total += p.size() - 1;
  CHECK(total == x.size());
}

TEST_CASE("list matchings") {
  const std::vector<BallTree> xs{pair_at(1), BallTree::leaf("c")};
  const std::vector<BallTree> ys{BallTree::leaf("z"), pair_at(1)};
  const std::vector<BallTree> zs{pair_at(1), pair_at(2)};
  CHECK(list_inj(xs, ys));
  CHECK(list_bij_isometric(xs, ys));
  CHECK(list_inj(xs, zs));
  CHECK_FALSE(list_bij_isometric(xs, zs));
  CHECK_FALSE(list_inj(zs, ys));
  CHECK_FALSE(list_inj(std::vector<BallTree>{pair_at(1), pair_at(1)}, std::vector<BallTree>{pair_at(1)}));
}

TEST_CASE("graph_space") {
  const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const FiniteMetric m = graph_space(path, 1, 2);
  CHECK(m.at(0, 1) == Rational(1));
  CHECK(m.at(0, 2) == Rational(2));
  CHECK_THROWS_AS(graph_space(path, 1, 3), ultra::PreconditionError);
  CHECK_THROWS_AS(graph_space(path, 1, 1), ultra::PreconditionError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), ultra::InputError);
  CHECK(Graph::from_edges(3, {}).is_trivial());
  CHECK_FALSE(path.is_trivial());
  const Graph other = Graph::from_edges(3, {{0, 2}, {2, 1}});
  CHECK(brute_graph_iso(path, other));
  CHECK(ultra::brute_isometric(m, graph_space(other, 1, 2)));
  CHECK(brute_graph_embeds(Graph::from_edges(2, {{0, 1}}), path));
  CHECK_FALSE(brute_graph_embeds(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), path));
}

TEST_CASE("powerset_space") {
  const std::vector<Rational> x{1, 2, 5};
  const BallTree p = powerset_space(x);
  CHECK(p.size() == 4);
  CHECK(ultra::realized_distances(p) == DistanceSet::of({1, 2, 5}));
  CHECK(ultra::embeds(powerset_space(std::vector<Rational>{1, 5}), p));
  CHECK_FALSE(ultra::embeds(powerset_space(std::vector<Rational>{3}), p));
  CHECK(powerset_space(std::vector<Rational>{}).is_leaf());
}

TEST_CASE("worked examples") {
  const DistanceSet d = DistanceSet::of({1, 3, 7});
  const BallTree two = BallTree::internal(7, {BallTree::leaf("x"), BallTree::leaf("y")});
  const std::vector<BallTree> parts = decompose(two, d);
  REQUIRE(parts.size() == 2);
  for (const BallTree& p : parts) CHECK(ultra::isometric(p, pair_at(3)));
  const BallTree low = pair_at(1);
  REQUIRE(decompose(low, d).size() == 1);
  CHECK(decompose(low, d)[0].size() == 3);
  CHECK_THROWS_AS(decompose(BallTree::leaf("p"), DistanceSet::of({3})), ultra::PreconditionError);

  const std::vector<BallTree> xs{ultra::canonical_space_of(DistanceSet::of({1})), BallTree::leaf("z")};
  const BallTree comb = phi_union(xs, 2);
  CHECK(ultra::isometric(comb, ultra::canonical_space_of(DistanceSet::of({1, 2}))));
  const std::vector<BallTree> swapped{xs[1], xs[0]};
  CHECK(ultra::isometric(comb, phi_union(swapped, 2)));

  const BallTree single = rank_space(RootedTree::from_parents({std::nullopt}), std::vector<Rational>{0, 1});
  CHECK(ultra::isometric(single, pair_at(1)));

  const BallTree glued = glue_star(BallTree::leaf("u"), d, 7);
  CHECK(glued.size() == 1 + ultra::canonical_space_of(d.without(1)).size());
}
