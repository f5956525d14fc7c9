#include <doctest.h>

#include <set>

#include "ultra/error.hpp"
#include "ultra/lab.hpp"

using namespace ultra;
using namespace ultra::lab;

TEST_CASE("rng is deterministic and in range") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(1);
  std::set<std::size_t> seen;
  for (int i = 0; i < 500; ++i) {
    const std::size_t v = r.below(5);
    CHECK(v < 5);
    seen.insert(v);
    const std::size_t w = r.between(3, 4);
    CHECK((w == 3 || w == 4));
  }
  CHECK(seen.size() == 5);
  CHECK_FALSE(r.chance(Rational(0)));
  CHECK(r.chance(Rational(1)));
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(0, 1) != mix_seed(1, 1));
  auto p = random_permutation(r, 6);
  std::sort(p.begin(), p.end());
  CHECK(p == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("generators respect their bounds") {
  for (Seed s = 0; s < 100; ++s) {
    CHECK(gen_tree(s, 6).size() <= 6);
    const DistanceSet d = DistanceSet::of({1, 2, 5});
    const BallTree t = gen_ball_tree(s, d, 5);
    CHECK(t.size() <= 5);
    CHECK(realized_distances(t).subset_of(d));
    const qo::QuasiOrder q = gen_qo(s, 4, Rational(1, 2), true);
    CHECK(q.size() == 4);
    const qo::OmegaMultiset m = gen_multiset(s, q, 3, Rational(0), true);
    CHECK(m.is_omega_total());
    CHECK(m.support().size() <= 3);
    CHECK_FALSE(gen_multiset(s, q, 3, Rational(0)).is_omega_total());
    Rng rng(s);
    CHECK(gen_distance_set(rng, 3).positive().size() == 3);
    CHECK(gen_graph(rng, 5).size() <= 5);
    CHECK(gen_equivalence(rng, 4).is_equivalence());
  }
  CHECK(gen_tree(7, 9) == gen_tree(7, 9));
}

TEST_CASE("mutations: relabels are isomorphic, both branches occur") {
  Rng rng(3);
  std::set<Mutation> kinds_tree;
  std::set<Mutation> kinds_space;
  std::set<Mutation> kinds_graph;
  std::set<Mutation> kinds_multiset;
  const DistanceSet d = DistanceSet::of({1, 2, 4});
  for (int i = 0; i < 200; ++i) {
    const auto pt = mutate_pair(rng, gen_tree(rng, 7), 7);
    kinds_tree.insert(pt.kind);
    CHECK(pt.mutated.size() <= 7);
    if (pt.kind == Mutation::kRelabel) CHECK(reduce::rooted_tree_iso(pt.original, pt.mutated));

    const FiniteMetric u = from_ball_tree(gen_ball_tree(rng, d, 6));
    const auto ps = mutate_pair(rng, u, d, 6);
    kinds_space.insert(ps.kind);
    CHECK(ps.mutated.size() <= 6);
    CHECK(realized_distances(to_ball_tree(ps.mutated)).subset_of(d));
    if (ps.kind == Mutation::kRelabel) CHECK(brute_isometric(ps.original, ps.mutated));

    const auto pg = mutate_pair(rng, gen_graph(rng, 6), 6);
    kinds_graph.insert(pg.kind);
    if (pg.kind == Mutation::kRelabel) CHECK(reduce::brute_graph_iso(pg.original, pg.mutated));

    const qo::QuasiOrder q = gen_qo(rng, 4, Rational(1, 2), true);
    const auto pm = mutate_pair(rng, gen_multiset(rng, q, 3, Rational(1, 3)));
    kinds_multiset.insert(pm.kind);
    if (pm.kind == Mutation::kRelabel) {
      CHECK(qo::inj_le(pm.original, pm.mutated).holds);
      CHECK(qo::inj_le(pm.mutated, pm.original).holds);
    }
  }
  CHECK(kinds_tree.size() == 2);
  CHECK(kinds_space.size() == 2);
  CHECK(kinds_graph.size() == 2);
  CHECK(kinds_multiset.size() == 2);
}

TEST_CASE("every property is registered") {
  const Registry reg = Registry::standard();
  const std::vector<std::string> expected{
      "add-tail-embed",   "add-tail-iso",       "canon-vs-brute",     "cf-support-only",
      "decompose",        "embed-vs-brute",     "glue-star",          "graph-metric-embed",
      "graph-metric-iso", "inj-counts-equiv",   "inj-flow-vs-char",   "inj-flow-vs-wqo",
      "iterate-sanity",   "phi-union",          "powerset-embed",     "rank-tree",
      "theta-embed",      "theta-iso",          "triangle-wellspaced", "witness-levels"};
  CHECK(reg.names() == expected);
  CHECK_THROWS_AS(reg.get("nope"), InputError);
  CHECK_THROWS_AS(run_campaign(reg, "nope", 1, 0), InputError);
}

TEST_CASE("zero trials pass trivially") {
  const CampaignReport r = run_campaign(Registry::standard(), "theta-iso", 0, 5);
  CHECK(r.pass());
  CHECK(r.trials == 0);
  CHECK(r.positives + r.negatives == 0);
}

TEST_CASE("campaign reports are deterministic and thread-invariant") {
  const Registry reg = Registry::standard();
  for (const std::string& name : reg.names()) {
    CAPTURE(name);
    const auto one = to_json(run_campaign(reg, name, 60, 17), false).dump();
    CHECK(one == to_json(run_campaign(reg, name, 60, 17), false).dump());
    CHECK(one == to_json(run_campaign(reg, name, 60, 17, {}, 3), false).dump());
  }
  const io::Json with = to_json(run_campaign(reg, "theta-iso", 5, 1), true);
  CHECK(with.contains("elapsed_ms"));
  CHECK_FALSE(to_json(run_campaign(reg, "theta-iso", 5, 1), false).contains("elapsed_ms"));
}

TEST_CASE("relational properties see both outcomes") {
  const Registry reg = Registry::standard();
  for (const char* name :
       {"canon-vs-brute", "embed-vs-brute", "theta-iso", "theta-embed", "inj-flow-vs-char",
        "inj-flow-vs-wqo", "inj-counts-equiv", "phi-union", "decompose", "add-tail-iso",
        "add-tail-embed", "rank-tree", "graph-metric-iso", "graph-metric-embed"}) {
    CAPTURE(name);
    const CampaignReport r = run_campaign(reg, name, 1000, 123);
    CHECK(r.pass());
    CHECK(r.positives > 0);
    CHECK(r.negatives > 0);
    CHECK(r.positives * 20 >= r.trials);
    CHECK(r.negatives * 20 >= r.trials);
  }
}

TEST_CASE("a broken construction is caught and its failure replays") {
  Registry reg;
  reg.add("broken-theta", make_theta_iso([](const reduce::RootedTree& t, std::span<const Rational> r) {
            if (t.size() == 1) return BallTree::leaf("0");
            std::vector<BallTree> leaves;
            for (std::size_t v = 0; v < t.size(); ++v) leaves.push_back(BallTree::leaf(std::to_string(v)));
            return BallTree::internal(r[0], std::move(leaves));
          }));
  const CampaignReport r = run_campaign(reg, "broken-theta", 300, 9);
  REQUIRE_FALSE(r.pass());
  const Failure& f = r.failures.front();
  CHECK(f.expected != f.got);
  CHECK(f.inputs.contains("trial_seed"));
  CHECK(f.trial_seed == mix_seed(9, f.trial));
  const TrialResult again = replay_trial(reg, "broken-theta", f.trial_seed);
  CHECK_FALSE(again.ok);
  CHECK(again.expected == f.expected);
  CHECK(again.got == f.got);

  Registry good;
  good.add("theta-iso", make_theta_iso([](const reduce::RootedTree& t, std::span<const Rational> r) {
             return reduce::theta(t, r);
           }));
  CHECK(run_campaign(good, "theta-iso", 300, 9).pass());
}

TEST_CASE("exhaustive checks") {
  const ExhaustiveReport canon = exhaustive_canon_vs_brute({1, 3}, 3);
  CHECK(canon.pass());
  CHECK(canon.cases > 0);
  CHECK(canon.positives > 0);
  CHECK(exhaustive_powerset_embed({1, 2, 4}).cases == 64);
  CHECK(exhaustive_powerset_embed({1, 2, 4}).pass());
  const ExhaustiveReport tri = exhaustive_triangle_wellspaced(3);
  CHECK(tri.pass());
  CHECK(tri.positives > 0);
  CHECK(tri.positives < tri.cases);
}
