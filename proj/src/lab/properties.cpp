#include <algorithm>
#include <array>
#include <set>

#include "ultra/error.hpp"
#include "ultra/lab.hpp"

namespace ultra::lab {

using io::Json;
using qo::Element;
using qo::Multiplicity;
using qo::OmegaMultiset;
using qo::QuasiOrder;
using reduce::Graph;
using reduce::RootedTree;

namespace {

std::string flag(const char* name, bool value) {
  return std::string(name) + "=" + (value ? "true" : "false");
}

/// Records the first failed check of a trial.
class Checker {
 public:
  explicit Checker(TrialResult& r) : r_(r) {}

  void agree(const char* expected_name, bool expected, const char* got_name, bool got) {
    if (expected != got) fail(flag(expected_name, expected), flag(got_name, got));
  }
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what, "violated");
  }
  void fail(std::string expected, std::string got) {
    if (!r_.ok) return;
    r_.ok = false;
    r_.expected = std::move(expected);
    r_.got = std::move(got);
  }

 private:
  TrialResult& r_;
};

std::size_t resolve(const std::optional<std::size_t>& v, std::size_t fallback) {
  const std::size_t n = v.value_or(fallback);
  if (n == 0) throw InputError("size bounds must be positive");
  return n;
}

std::size_t brute_bound(std::size_t n) { return std::max<std::size_t>(kDefaultBruteBound, n); }

const char* mutation_tag(Mutation m) { return m == Mutation::kRelabel ? "relabel" : "edit"; }

DistanceSet pick_distances(Rng& rng, std::size_t lo, std::size_t hi) {
  return gen_distance_set(rng, rng.between(lo, hi));
}

DistanceSet below(const DistanceSet& d, const Rational& bound) {
  std::vector<Rational> out;
  for (const Rational& r : d.values()) {
    if (r < bound) out.push_back(r);
  }
  return DistanceSet::of(std::move(out));
}

FiniteMetric ultrametric(Rng& rng, const DistanceSet& d, std::size_t max_points) {
  return from_ball_tree(gen_ball_tree(rng, d, max_points));
}

/// A candidate subspace of `big`: a random restriction (sometimes followed
/// by an edit), or an unrelated space.
FiniteMetric smaller_candidate(Rng& rng, const FiniteMetric& big, const DistanceSet& d,
                               std::size_t max_points) {
  if (rng.chance(Rational(1, 2))) {
    std::vector<std::size_t> pts = random_permutation(rng, big.size());
    pts.resize(rng.between(1, std::min(max_points, big.size())));
    FiniteMetric sub = big.restrict_to(pts);
    if (rng.chance(Rational(1, 3))) sub = mutate_pair(rng, sub, d, max_points).mutated;
    return sub;
  }
  return ultrametric(rng, d, max_points);
}

/// Strictly decreasing positive sequence of the given length.
std::vector<Rational> decreasing(Rng& rng, std::size_t len) {
  DistanceSet d = gen_distance_set(rng, len);
  std::vector<Rational> r = d.positive();
  std::reverse(r.begin(), r.end());
  return r;
}

/// 0 followed by `len - 1` strictly increasing positive values.
std::vector<Rational> increasing_from_zero(Rng& rng, std::size_t len) {
  std::vector<Rational> r{Rational(0)};
  for (const Rational& x : gen_distance_set(rng, len - 1).positive()) r.push_back(x);
  return r;
}

Json rationals_json(std::span<const Rational> r) {
  Json out = Json::array();
  for (const Rational& x : r) out.push_back(x.to_string());
  return out;
}

Json list_json(std::span<const BallTree> xs) {
  Json out = Json::array();
  for (const BallTree& x : xs) out.push_back(io::to_json(x));
  return out;
}

bool isosceles_everywhere(const FiniteMetric& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      for (std::size_t k = j + 1; k < m.size(); ++k) {
        std::array<Rational, 3> s = {m.at(i, j), m.at(j, k), m.at(i, k)};
        std::sort(s.begin(), s.end());
        if (s[1] != s[2]) return false;
      }
    }
  }
  return true;
}

// --- metric_core -----------------------------------------------------------

TrialResult canon_vs_brute(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 7);
  TrialResult r;
  Checker check(r);
  const DistanceSet d = rng.chance(Rational(1, 4)) ? DistanceSet::of({1, 3, 7})
                                                   : pick_distances(rng, 1, 4);
  const BallTree a = gen_ball_tree(rng, d, n);
  const FiniteMetric ma = from_ball_tree(a);
  const auto pair = mutate_pair(rng, ma, d, n);
  const FiniteMetric& mb = pair.mutated;
  r.inputs = {{"a", io::to_json(ma)}, {"b", io::to_json(mb)}};
  r.tags.push_back(mutation_tag(pair.kind));

  const BallTree ta = to_ball_tree(ma);
  const BallTree tb = to_ball_tree(mb);
  check.require(ta.code() == a.code(), "round trip preserves the canonical code");
  check.require(validate(ma.matrix()).is_ultrametric && isosceles_everywhere(ma) &&
                    isosceles_everywhere(mb),
                "every triangle is isosceles");
  const bool expected = brute_isometric(ma, mb, brute_bound(n));
  check.agree("brute_isometric", expected, "code_equal", ta.code() == tb.code());
  r.positive = expected;
  return r;
}

TrialResult embed_vs_brute(Rng& rng, const Bounds& bounds) {
  const std::size_t nb = resolve(bounds.max_points, 8);
  const std::size_t na = nb > 2 ? nb - 2 : 1;
  TrialResult r;
  Checker check(r);
  const DistanceSet d = pick_distances(rng, 1, 4);
  const FiniteMetric mb = ultrametric(rng, d, nb);
  const FiniteMetric ma = smaller_candidate(rng, mb, d, na);
  r.inputs = {{"a", io::to_json(ma)}, {"b", io::to_json(mb)}};
  const bool expected = brute_embeds(ma, mb, brute_bound(nb));
  check.agree("brute_embeds", expected, "embeds", embeds(to_ball_tree(ma), to_ball_tree(mb)));
  r.positive = expected;
  return r;
}

/// Enumerates triples directly, in lexicographic order.
std::optional<std::array<Rational, 3>> least_non_isosceles(const DistanceSet& a) {
  const std::vector<Rational> p = a.positive();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i; j < p.size(); ++j) {
      for (std::size_t k = j; k < p.size(); ++k) {
        if (p[k] <= p[i] + p[j] && p[j] != p[k]) return std::array<Rational, 3>{p[i], p[j], p[k]};
      }
    }
  }
  return std::nullopt;
}

void check_triangle_audit(Checker& check, const DistanceSet& a) {
  const auto least = least_non_isosceles(a);
  const TriangleAudit audit = triangle_audit(a);
  check.agree("well_spaced", is_well_spaced(a), "all_isosceles", audit.all_isosceles);
  check.agree("violation_exists", least.has_value(), "all_isosceles", !audit.all_isosceles);
  check.require(audit.witness == least, "witness is the least violating triple");
}

TrialResult triangle_wellspaced(Rng& rng, const Bounds&) {
  TrialResult r;
  Checker check(r);
  std::vector<Rational> pool;
  for (std::int64_t i = 1; i <= 12; ++i) pool.emplace_back(i, 4);
  rng.shuffle(pool);
  pool.resize(rng.between(1, 5));
  const DistanceSet a = DistanceSet::of(pool);
  r.inputs = {{"A", io::to_json(a)}};

  check_triangle_audit(check, a);
  r.positive = is_well_spaced(a);
  return r;
}

// --- reductions ------------------------------------------------------------

TrialResult theta_iso_with(const ThetaFn& th, Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_nodes, 8);
  TrialResult r;
  Checker check(r);
  const auto pair = mutate_pair(rng, gen_tree(rng, n), n);
  const RootedTree& g = pair.original;
  const RootedTree& h = pair.mutated;
  const std::vector<Rational> seq =
      decreasing(rng, std::max(g.height(), h.height()) + 1 + rng.below(2));
  r.inputs = {{"g", io::to_json(g)}, {"h", io::to_json(h)}, {"r", rationals_json(seq)}};
  r.tags.push_back(mutation_tag(pair.kind));
  const bool expected = reduce::brute_rooted_iso(g, h, brute_bound(n + 1));
  check.agree("brute_rooted_iso", expected, "rooted_tree_iso", reduce::rooted_tree_iso(g, h));
  check.agree("rooted_tree_iso", expected, "isometric_theta", isometric(th(g, seq), th(h, seq)));
  r.positive = expected;
  return r;
}

TrialResult theta_embed(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_nodes, 8);
  TrialResult r;
  Checker check(r);
  const RootedTree h = gen_tree(rng, n);
  RootedTree g = h;
  const std::size_t mode = rng.below(4);
  if (mode < 2) {
    std::vector<std::optional<std::size_t>> parents{std::nullopt};
    std::vector<std::optional<std::size_t>> index(h.size());
    index[0] = 0;
    for (std::size_t v = 1; v < h.size(); ++v) {
      const std::size_t p = *h.parent(v);
      if (index[p] && rng.chance(Rational(2, 3))) {
        index[v] = parents.size();
        parents.push_back(index[p]);
      }
    }
    g = relabeled(rng, RootedTree::from_parents(parents));
  } else if (mode == 2) {
    g = mutate_pair(rng, h, n).mutated;
  } else {
    g = gen_tree(rng, n);
  }
  const std::vector<Rational> seq =
      decreasing(rng, std::max(g.height(), h.height()) + 1 + rng.below(2));
  r.inputs = {{"g", io::to_json(g)}, {"h", io::to_json(h)}, {"r", rationals_json(seq)}};
  const bool expected = reduce::brute_rooted_embeds(g, h, brute_bound(n + 1));
  check.agree("brute_rooted_embeds", expected, "rooted_tree_embeds",
              reduce::rooted_tree_embeds(g, h));
  check.agree("rooted_tree_embeds", expected, "embeds_theta",
              embeds(reduce::theta(g, seq), reduce::theta(h, seq)));
  r.positive = expected;
  return r;
}

TrialResult glue_star_prop(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 6);
  TrialResult r;
  Checker check(r);
  const DistanceSet d = pick_distances(rng, 2, 4);
  const std::vector<Rational> pos = d.positive();
  const Rational rbar = pos[rng.between(1, pos.size() - 1)];
  const DistanceSet lower = below(d, rbar);
  const Rational r0 = lower.max();
  const auto pair = mutate_pair(rng, ultrametric(rng, lower, n), lower, n);
  const FiniteMetric& u0 = pair.original;
  const FiniteMetric& u1 = pair.mutated;
  r.inputs = {{"u0", io::to_json(u0)},
              {"u1", io::to_json(u1)},
              {"D", io::to_json(d)},
              {"rbar", rbar.to_string()}};
  r.tags.push_back(mutation_tag(pair.kind));
  if (u0.size() == 1 && u1.size() == 1) r.tags.push_back("singletons");

  const BallTree g0 = reduce::glue_star(to_ball_tree(u0), d, rbar);
  const BallTree g1 = reduce::glue_star(to_ball_tree(u1), d, rbar);
  const bool expected = brute_isometric(u0, u1, brute_bound(n));
  check.agree("brute_isometric", expected, "isometric_glued", isometric(g0, g1));
  for (const auto& [u, g] : {std::pair{&u0, &g0}, std::pair{&u1, &g1}}) {
    const DistanceSet got = realized_distances(*g);
    check.require(got.subset_of(d), "glued distances lie in D");
    check.require(d.without(r0).subset_of(got), "glued space realizes D without r0");
    if (realized_distances(*u).contains(r0)) {
      check.require(got == d, "glued space realizes D when the input realizes r0");
    }
  }
  r.positive = expected;
  return r;
}

TrialResult add_tail_iso(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 6);
  TrialResult r;
  Checker check(r);
  const DistanceSet d = pick_distances(rng, 1, 4);
  const auto pair = mutate_pair(rng, ultrametric(rng, d, n), d, n);
  const FiniteMetric& x = pair.original;
  const FiniteMetric& y = pair.mutated;
  r.inputs = {{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"D", io::to_json(d)}};
  r.tags.push_back(mutation_tag(pair.kind));
  const BallTree tx = reduce::add_tail(to_ball_tree(x), d);
  const BallTree ty = reduce::add_tail(to_ball_tree(y), d);
  check.require(realized_distances(tx) == d && realized_distances(ty) == d,
                "tailed spaces realize exactly D");
  const bool expected = brute_isometric(x, y, brute_bound(n));
  check.agree("brute_isometric", expected, "isometric_tailed", isometric(tx, ty));
  r.positive = expected;
  return r;
}

TrialResult add_tail_embed(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 6);
  TrialResult r;
  Checker check(r);
  const DistanceSet d = pick_distances(rng, 1, 4);
  const FiniteMetric y = ultrametric(rng, d, n);
  const FiniteMetric x = smaller_candidate(rng, y, d, n);
  r.inputs = {{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"D", io::to_json(d)}};
  const BallTree tx = reduce::add_tail(to_ball_tree(x), d);
  const BallTree ty = reduce::add_tail(to_ball_tree(y), d);
  check.require(realized_distances(tx) == d && realized_distances(ty) == d,
                "tailed spaces realize exactly D");
  const bool expected = brute_embeds(x, y, brute_bound(n));
  check.agree("brute_embeds", expected, "embeds_tailed", embeds(tx, ty));
  r.positive = expected;
  return r;
}

TrialResult phi_union_prop(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 5);
  TrialResult r;
  Checker check(r);
  const DistanceSet d = pick_distances(rng, 1, 3);
  const Rational cross = d.max() + Rational(1);
  std::vector<BallTree> xs;
  const std::size_t len = rng.between(1, 4);
  for (std::size_t i = 0; i < len; ++i) xs.push_back(gen_ball_tree(rng, d, n));
  std::vector<BallTree> ys;
  if (rng.chance(Rational(1, 4))) {
    const std::size_t ylen = rng.between(1, 4);
    for (std::size_t i = 0; i < ylen; ++i) ys.push_back(gen_ball_tree(rng, d, n));
  } else {
    for (const BallTree& x : xs) {
      const bool keep = rng.chance(Rational(1, 2));
      ys.push_back(keep ? x : to_ball_tree(mutate_pair(rng, from_ball_tree(x), d, n).mutated));
    }
    if (ys.size() < 4 && rng.chance(Rational(1, 3))) ys.push_back(gen_ball_tree(rng, d, n));
    if (ys.size() > 1 && rng.chance(Rational(1, 3))) ys.erase(ys.begin() + rng.below(ys.size()));
    rng.shuffle(ys);
  }
  r.inputs = {{"xs", list_json(xs)}, {"ys", list_json(ys)}, {"r", cross.to_string()}};
  const BallTree ux = reduce::phi_union(xs, cross);
  const BallTree uy = reduce::phi_union(ys, cross);
  const bool inj = reduce::list_inj(xs, ys);
  const bool bij = reduce::list_bij_isometric(xs, ys);
  check.agree("list_inj", inj, "embeds_union", embeds(ux, uy));
  check.agree("list_bij_isometric", bij, "isometric_union", isometric(ux, uy));
  r.positive = inj;
  if (bij) r.tags.push_back("isometric");
  return r;
}

TrialResult decompose_prop(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 6);
  TrialResult r;
  Checker check(r);
  const DistanceSet d = pick_distances(rng, 2, 4);
  FiniteMetric x = ultrametric(rng, d, n);
  FiniteMetric y = x;
  if (rng.chance(Rational(1, 2))) {
    y = mutate_pair(rng, x, d, n).mutated;
    if (rng.chance(Rational(1, 2))) std::swap(x, y);
  } else {
    x = smaller_candidate(rng, y, d, n);
  }
  r.inputs = {{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"D", io::to_json(d)}};
  const std::vector<BallTree> dx = reduce::decompose(to_ball_tree(x), d);
  const std::vector<BallTree> dy = reduce::decompose(to_ball_tree(y), d);
  const bool emb = brute_embeds(x, y, brute_bound(n));
  const bool iso = brute_isometric(x, y, brute_bound(n));
  check.agree("brute_embeds", emb, "list_inj", reduce::list_inj(dx, dy));
  check.agree("brute_isometric", iso, "list_bij_isometric", reduce::list_bij_isometric(dx, dy));
  r.positive = emb;
  if (iso) r.tags.push_back("isometric");
  return r;
}

TrialResult rank_tree(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_nodes, 7);
  TrialResult r;
  Checker check(r);
  const auto pair = mutate_pair(rng, gen_tree(rng, n), n);
  const RootedTree& g = pair.original;
  const RootedTree& h = pair.mutated;
  const std::vector<Rational> seq =
      increasing_from_zero(rng, std::max(g.height(), h.height()) + 2 + rng.below(2));
  r.inputs = {{"g", io::to_json(g)}, {"h", io::to_json(h)}, {"r", rationals_json(seq)}};
  r.tags.push_back(mutation_tag(pair.kind));
  const bool expected = reduce::brute_rooted_iso(g, h, brute_bound(n + 1));
  check.agree("brute_rooted_iso", expected, "isometric_rank",
              isometric(reduce::rank_space(g, seq), reduce::rank_space(h, seq)));
  r.positive = expected;
  return r;
}

TrialResult powerset_embed(Rng& rng, const Bounds&) {
  TrialResult r;
  Checker check(r);
  const std::vector<Rational> pos = gen_distance_set(rng, 5).positive();
  std::vector<Rational> x;
  std::vector<Rational> y;
  const bool superset = rng.chance(Rational(1, 2));
  for (const Rational& v : pos) {
    const bool in_x = rng.chance(Rational(1, 2));
    if (in_x) x.push_back(v);
    if ((superset && in_x) || rng.chance(Rational(1, 2))) y.push_back(v);
  }
  r.inputs = {{"X", rationals_json(x)}, {"Y", rationals_json(y)}};
  const bool expected = std::includes(y.begin(), y.end(), x.begin(), x.end());
  check.agree("subset", expected, "embeds",
              embeds(reduce::powerset_space(x), reduce::powerset_space(y)));
  r.positive = expected;
  return r;
}

std::pair<Rational, Rational> graph_distances(Rng& rng) {
  if (rng.chance(Rational(1, 2))) return {Rational(1), Rational(2)};
  return {Rational(1), Rational(3, 2)};
}

TrialResult graph_metric_iso(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 7);
  TrialResult r;
  Checker check(r);
  const auto [dr, drp] = graph_distances(rng);
  const auto pair = mutate_pair(rng, gen_graph(rng, n), n);
  const Graph& g = pair.original;
  const Graph& h = pair.mutated;
  r.inputs = {{"g", io::to_json(g)},
              {"h", io::to_json(h)},
              {"r", dr.to_string()},
              {"rp", drp.to_string()}};
  r.tags.push_back(mutation_tag(pair.kind));
  const FiniteMetric mg = reduce::graph_space(g, dr, drp);
  const FiniteMetric mh = reduce::graph_space(h, dr, drp);
  const bool expected = reduce::brute_graph_iso(g, h, brute_bound(n + 1));
  check.agree("brute_graph_iso", expected, "brute_isometric",
              brute_isometric(mg, mh, brute_bound(n + 1)));
  r.positive = expected;
  return r;
}

TrialResult graph_metric_embed(Rng& rng, const Bounds& bounds) {
  const std::size_t n = resolve(bounds.max_points, 7);
  TrialResult r;
  Checker check(r);
  const auto [dr, drp] = graph_distances(rng);
  const Graph h = gen_graph(rng, n);
  Graph g = h;
  const std::size_t mode = rng.below(4);
  if (mode < 2) {
    std::vector<std::size_t> keep = random_permutation(rng, h.size());
    keep.resize(rng.between(1, h.size()));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (std::size_t j = i + 1; j < keep.size(); ++j) {
        if (h.adjacent(keep[i], keep[j])) edges.emplace_back(i, j);
      }
    }
    g = Graph::from_edges(keep.size(), edges);
  } else if (mode == 2) {
    g = mutate_pair(rng, h, n).mutated;
  } else {
    g = gen_graph(rng, n);
  }
  r.inputs = {{"g", io::to_json(g)},
              {"h", io::to_json(h)},
              {"r", dr.to_string()},
              {"rp", drp.to_string()}};
  const bool expected = reduce::brute_graph_embeds(g, h, brute_bound(n + 1));
  check.agree("brute_graph_embeds", expected, "brute_embeds",
              brute_embeds(reduce::graph_space(g, dr, drp), reduce::graph_space(h, dr, drp),
                           brute_bound(n + 1)));
  r.positive = expected;
  return r;
}

// --- qo_jump ---------------------------------------------------------------

struct JumpInstance {
  OmegaMultiset a;
  OmegaMultiset b;
  bool omega_total;
};

OmegaMultiset with_some_omega(Rng& rng, const OmegaMultiset& m) {
  if (m.is_omega_total()) return m;
  std::map<Element, Multiplicity> mults = m.mults();
  const std::vector<Element> supp = m.support();
  mults.insert_or_assign(supp[rng.below(supp.size())], Multiplicity::omega());
  return OmegaMultiset(m.base(), std::move(mults));
}

JumpInstance gen_jump_instance(Rng& rng, const Bounds& bounds, bool equivalence) {
  const std::size_t support = resolve(bounds.max_support, 6);
  const std::size_t carrier = resolve(bounds.max_nodes, 6);
  const std::size_t n = rng.between(1, carrier);
  static const Rational kDensities[] = {Rational(0), Rational(1, 4), Rational(1, 2),
                                        Rational(3, 4), Rational(1)};
  static const Rational kOmega[] = {Rational(0), Rational(1, 4), Rational(1, 2)};
  const QuasiOrder s = equivalence
                           ? gen_equivalence(rng, n)
                           : gen_qo(rng, n, kDensities[rng.below(5)], rng.chance(Rational(1, 2)));
  const bool faithful = rng.chance(Rational(1, 2));
  const OmegaMultiset a = gen_multiset(rng, s, support, kOmega[rng.below(3)], faithful);
  OmegaMultiset b = a;
  switch (rng.below(4)) {
    case 0:
      b = mutate_pair(rng, a).mutated;
      break;
    case 1:
      b = mutate_pair(rng, mutate_pair(rng, a).mutated).mutated;
      break;
    case 2: {
      std::map<Element, Multiplicity> mults = a.mults();
      const OmegaMultiset extra = gen_multiset(rng, s, support, kOmega[rng.below(3)]);
      for (const auto& [x, m] : extra.mults()) {
        auto it = mults.find(x);
        if (it == mults.end()) {
          mults.emplace(x, m);
        } else {
          it->second = it->second + m;
        }
      }
      b = OmegaMultiset(s, std::move(mults));
      break;
    }
    default:
      b = gen_multiset(rng, s, support, kOmega[rng.below(3)], faithful);
  }
  if (faithful) b = with_some_omega(rng, b);
  if (rng.chance(Rational(1, 2))) {
    return {b, a, a.is_omega_total() && b.is_omega_total()};
  }
  return {a, b, a.is_omega_total() && b.is_omega_total()};
}

Json jump_inputs(const JumpInstance& in) {
  return {{"S", io::to_json(in.a.base())}, {"a", io::to_json(in.a)}, {"b", io::to_json(in.b)}};
}

void tag_instance(TrialResult& r, const JumpInstance& in) {
  r.tags.push_back(in.omega_total ? "omega_total" : "finite_total");
}

TrialResult inj_flow_vs_char(Rng& rng, const Bounds& bounds) {
  TrialResult r;
  Checker check(r);
  const JumpInstance in = gen_jump_instance(rng, bounds, false);
  r.inputs = jump_inputs(in);
  tag_instance(r, in);
  const qo::InjResult ab = qo::inj_le(in.a, in.b);
  const qo::InjResult ba = qo::inj_le(in.b, in.a);
  if (ab.holds) check.require(ab.witness && qo::witness_valid(*ab.witness, in.a, in.b), "flow witness valid");
  if (ba.holds) check.require(ba.witness && qo::witness_valid(*ba.witness, in.b, in.a), "flow witness valid");
  const bool expected = ab.holds && ba.holds;
  check.agree("inj_le_both_ways", expected, "einj_char", qo::einj_char(in.a, in.b));
  r.positive = expected;
  return r;
}

TrialResult inj_flow_vs_wqo(Rng& rng, const Bounds& bounds) {
  TrialResult r;
  Checker check(r);
  const JumpInstance in = gen_jump_instance(rng, bounds, false);
  r.inputs = jump_inputs(in);
  tag_instance(r, in);
  const bool ab = qo::inj_le(in.a, in.b).holds;
  check.agree("inj_le(a,b)", ab, "wqo_inj_le(a,b)", qo::wqo_inj_le(in.a, in.b));
  check.agree("inj_le(b,a)", qo::inj_le(in.b, in.a).holds, "wqo_inj_le(b,a)",
              qo::wqo_inj_le(in.b, in.a));
  r.positive = ab;
  return r;
}

TrialResult inj_counts_equiv(Rng& rng, const Bounds& bounds) {
  TrialResult r;
  Checker check(r);
  const JumpInstance in = gen_jump_instance(rng, bounds, true);
  r.inputs = jump_inputs(in);
  tag_instance(r, in);
  const bool ab = qo::inj_le(in.a, in.b).holds;
  const bool ba = qo::inj_le(in.b, in.a).holds;
  check.agree("inj_le(a,b)", ab, "equiv_inj_le(a,b)", qo::equiv_inj_le(in.a, in.b));
  check.agree("inj_le(b,a)", ba, "equiv_inj_le(b,a)", qo::equiv_inj_le(in.b, in.a));
  bool counts_equal = true;
  for (Element x = 0; x < in.a.base().size(); ++x) {
    counts_equal = counts_equal && in.a.class_count(x) == in.b.class_count(x);
  }
  check.agree("inj_le_both_ways", ab && ba, "class_counts_equal", counts_equal);
  r.positive = ab;
  return r;
}

TrialResult cf_support_only(Rng& rng, const Bounds& bounds) {
  TrialResult r;
  Checker check(r);
  const JumpInstance in = gen_jump_instance(rng, bounds, false);
  r.inputs = jump_inputs(in);
  tag_instance(r, in);
  const bool cf = qo::cf_le(in.a, in.b);
  const OmegaMultiset sa = in.a.saturated();
  const OmegaMultiset sb = in.b.saturated();
  check.agree("cf_le(a,b)", cf, "cf_le(sat a,b)", qo::cf_le(sa, in.b));
  check.agree("cf_le(a,b)", cf, "cf_le(a,sat b)", qo::cf_le(in.a, sb));
  check.agree("cf_le(a,b)", cf, "cf_le(sat a,sat b)", qo::cf_le(sa, sb));
  if (qo::inj_le(in.a, in.b).holds) check.require(cf, "inj_le implies cf_le");
  check.require(qo::cf_le(in.a, in.a) && qo::inj_le(in.a, in.a).holds, "reflexivity");
  const OmegaMultiset c = mutate_pair(rng, in.b).mutated;
  r.inputs["c"] = io::to_json(c);
  if (cf && qo::cf_le(in.b, c)) check.require(qo::cf_le(in.a, c), "cf_le is transitive");
  if (qo::inj_le(in.a, in.b).holds && qo::inj_le(in.b, c).holds) {
    check.require(qo::inj_le(in.a, c).holds, "inj_le is transitive");
  }
  r.positive = cf;
  return r;
}

void check_trace(Checker& check, const OmegaMultiset& m) {
  const qo::IterationTrace t = qo::iterate_levels(m);
  const QuasiOrder& s = m.base();
  const std::vector<Element> supp = m.support();
  check.require(!t.levels.empty() && t.levels.front() == supp, "I_0 is the support");
  check.require(t.levels.size() == t.rho + 2, "trace has rho + 2 levels");
  check.require(t.levels.size() >= 2 && t.levels[t.levels.size() - 1] == t.levels[t.levels.size() - 2],
                "trace ends at a fixed point");
  check.require(t.core == t.levels.back(), "core is the last level");
  check.require(t.rho <= supp.size(), "rho bounded by the support size");
  for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) {
    const auto& cur = t.levels[k];
    const auto& nxt = t.levels[k + 1];
    check.require(std::includes(cur.begin(), cur.end(), nxt.begin(), nxt.end()),
                  "levels are decreasing");
    if (k + 2 < t.levels.size()) check.require(cur != nxt, "levels strictly decrease before rho");
  }
  for (const auto& level : t.levels) {
    for (Element x : level) {
      for (Element y : supp) {
        const bool in_level = std::binary_search(level.begin(), level.end(), y);
        if (s.le(y, x)) check.require(in_level, "levels are downward closed in the support");
        if (s.equivalent(x, y)) check.require(in_level, "levels are invariant under equivalence");
      }
    }
  }
  for (Element x : supp) {
    if (!std::binary_search(t.core.begin(), t.core.end(), x)) {
      check.require(!m.class_count(x).omega, "off-core classes are finite");
    }
  }
  for (Element x : t.core) {
    bool covered = false;
    for (Element y : t.core) covered = covered || (s.le(x, y) && m.mult(y)->is_omega());
    check.require(covered, "core elements lie below an omega element of the core");
  }
}

TrialResult iterate_sanity(Rng& rng, const Bounds& bounds) {
  TrialResult r;
  Checker check(r);
  const JumpInstance in = gen_jump_instance(rng, bounds, false);
  r.inputs = jump_inputs(in);
  tag_instance(r, in);
  check_trace(check, in.a);
  check_trace(check, in.b);
  return r;
}

TrialResult witness_levels(Rng& rng, const Bounds& bounds) {
  TrialResult r;
  Checker check(r);
  const JumpInstance in = gen_jump_instance(rng, bounds, false);
  r.inputs = jump_inputs(in);
  tag_instance(r, in);
  const bool mutual = qo::inj_le(in.a, in.b).holds && qo::inj_le(in.b, in.a).holds;
  const auto w = qo::level_respecting_witness(in.a, in.b);
  if (mutual) {
    check.require(w.has_value(), "mutually comparable pairs have a level-respecting witness");
  }
  if (w) {
    check.require(qo::witness_valid(*w, in.a, in.b), "level witness is a valid injection");
    check.require(qo::witness_respects_levels(*w, qo::iterate_levels(in.a), qo::iterate_levels(in.b)),
                  "level witness stays within levels");
    check.require(qo::inj_le(in.a, in.b).holds, "a level witness implies inj_le");
  }
  r.positive = mutual;
  return r;
}

}  // namespace

PropertyFn make_theta_iso(ThetaFn theta) {
  return [theta = std::move(theta)](Rng& rng, const Bounds& bounds) {
    return theta_iso_with(theta, rng, bounds);
  };
}

Registry Registry::standard() {
  Registry reg;
  reg.add("canon-vs-brute", canon_vs_brute);
  reg.add("embed-vs-brute", embed_vs_brute);
  reg.add("theta-iso", make_theta_iso(
                           [](const RootedTree& t, std::span<const Rational> r) {
                             return reduce::theta(t, r);
                           }));
  reg.add("theta-embed", theta_embed);
  reg.add("glue-star", glue_star_prop);
  reg.add("add-tail-iso", add_tail_iso);
  reg.add("add-tail-embed", add_tail_embed);
  reg.add("phi-union", phi_union_prop);
  reg.add("decompose", decompose_prop);
  reg.add("rank-tree", rank_tree);
  reg.add("powerset-embed", powerset_embed);
  reg.add("graph-metric-iso", graph_metric_iso);
  reg.add("graph-metric-embed", graph_metric_embed);
  reg.add("inj-flow-vs-char", inj_flow_vs_char);
  reg.add("inj-flow-vs-wqo", inj_flow_vs_wqo);
  reg.add("inj-counts-equiv", inj_counts_equiv);
  reg.add("cf-support-only", cf_support_only);
  reg.add("iterate-sanity", iterate_sanity);
  reg.add("witness-levels", witness_levels);
  reg.add("triangle-wellspaced", triangle_wellspaced);
  return reg;
}

void Registry::add(std::string name, PropertyFn fn) { props_.insert_or_assign(std::move(name), std::move(fn)); }

const PropertyFn& Registry::get(const std::string& name) const {
  auto it = props_.find(name);
  if (it == props_.end()) throw InputError("unknown property '" + name + "'");
  return it->second;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, fn] : props_) out.push_back(name);
  return out;
}

namespace {

void note(ExhaustiveReport& rep, const TrialResult& r, const std::string& label) {
  ++rep.cases;
  if (r.positive.value_or(false)) ++rep.positives;
  if (!r.ok) rep.failures.push_back(label + ": expected " + r.expected + ", got " + r.got);
}

/// All symmetric matrices over `labels` on n points that are ultrametric.
void ultrametric_matrices(std::size_t n, const std::vector<Rational>& labels,
                          std::vector<FiniteMetric>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  }
  std::vector<std::size_t> choice(cells.size(), 0);
  while (true) {
    DistanceMatrix d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      d[cells[c].first][cells[c].second] = labels[choice[c]];
      d[cells[c].second][cells[c].first] = labels[choice[c]];
    }
    if (validate(d).is_ultrametric) out.push_back(FiniteMetric::from_matrix(std::move(d)));
    std::size_t c = 0;
    while (c < choice.size() && ++choice[c] == labels.size()) choice[c++] = 0;
    if (c == choice.size()) break;
  }
}

}  // namespace

ExhaustiveReport exhaustive_canon_vs_brute(const std::vector<Rational>& labels,
                                           std::size_t max_points) {
  std::vector<FiniteMetric> spaces;
  for (std::size_t n = 1; n <= max_points; ++n) ultrametric_matrices(n, labels, spaces);
  std::vector<BallTree> trees;
  ExhaustiveReport rep;
  for (const FiniteMetric& m : spaces) {
    trees.push_back(to_ball_tree(m));
    TrialResult r;
    Checker check(r);
    check.require(to_ball_tree(from_ball_tree(trees.back())).code() == trees.back().code(),
                  "round trip preserves the canonical code");
    check.require(isosceles_everywhere(m), "every triangle is isosceles");
    note(rep, r, io::to_json(m).dump());
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      TrialResult r;
      Checker check(r);
      const bool expected = brute_isometric(spaces[i], spaces[j], brute_bound(max_points));
      check.agree("brute_isometric", expected, "code_equal", trees[i].code() == trees[j].code());
      r.positive = expected;
      note(rep, r, io::to_json(spaces[i]).dump() + " vs " + io::to_json(spaces[j]).dump());
    }
  }
  return rep;
}

ExhaustiveReport exhaustive_powerset_embed(const std::vector<Rational>& positives) {
  const std::size_t n = positives.size();
  if (n > 16) throw PreconditionError("exhaustive powerset check limited to 16 values");
  auto subset = [&](std::size_t mask) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) out.push_back(positives[i]);
    }
    return out;
  };
  ExhaustiveReport rep;
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    const BallTree ux = reduce::powerset_space(subset(x));
    for (std::size_t y = 0; y < (std::size_t{1} << n); ++y) {
      TrialResult r;
      Checker check(r);
      const bool expected = (x & ~y) == 0;
      check.agree("subset", expected, "embeds", embeds(ux, reduce::powerset_space(subset(y))));
      r.positive = expected;
      note(rep, r, "X=" + std::to_string(x) + " Y=" + std::to_string(y));
    }
  }
  return rep;
}

ExhaustiveReport exhaustive_triangle_wellspaced(std::size_t max_size) {
  ExhaustiveReport rep;
  for (std::size_t mask = 1; mask < (1u << 12); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask))) > max_size) continue;
    std::vector<Rational> values;
    for (std::int64_t i = 0; i < 12; ++i) {
      if (mask >> i & 1) values.emplace_back(i + 1, 4);
    }
    const DistanceSet a = DistanceSet::of(values);
    TrialResult r;
    Checker check(r);
    check_triangle_audit(check, a);
    r.positive = is_well_spaced(a);
    note(rep, r, a.to_string());
  }
  return rep;
}

}  // namespace ultra::lab
