#include <algorithm>
#include <deque>
#include <set>

#include "ultra/error.hpp"
#include "ultra/lab.hpp"

namespace ultra::lab {

using qo::Element;
using qo::Multiplicity;
using qo::OmegaMultiset;
using qo::QuasiOrder;
using reduce::Graph;
using reduce::RootedTree;

RootedTree gen_tree(Rng& rng, std::size_t max_nodes) {
  if (max_nodes == 0) throw PreconditionError("gen_tree: max_nodes must be positive");
  const std::size_t n = rng.between(1, max_nodes);
  std::vector<std::optional<std::size_t>> parents(n);
  for (std::size_t i = 1; i < n; ++i) parents[i] = rng.below(i);
  return RootedTree::from_parents(parents);
}

RootedTree gen_tree(Seed seed, std::size_t max_nodes) {
  Rng rng(seed);
  return gen_tree(rng, max_nodes);
}

namespace {

/// Splits k into `parts` positive summands in random order.
std::vector<std::size_t> random_composition(Rng& rng, std::size_t k, std::size_t parts) {
  std::vector<std::size_t> cuts(k - 1);
  for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
  rng.shuffle(cuts);
  cuts.resize(parts - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::size_t> out;
  std::size_t prev = 0;
  for (std::size_t c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(k - prev);
  return out;
}

class BallTreeGen {
 public:
  BallTreeGen(Rng& rng, std::vector<Rational> labels) : rng_(rng), labels_(std::move(labels)) {}

  BallTree build(std::size_t k, std::size_t usable) {
    if (k == 1) return BallTree::leaf("p" + std::to_string(next_name_++));
    const std::size_t idx = rng_.below(usable);
    const std::size_t parts = idx == 0 ? k : rng_.between(2, k);
    std::vector<BallTree> children;
    for (std::size_t s : random_composition(rng_, k, parts)) children.push_back(build(s, idx));
    return BallTree::internal(labels_[idx], std::move(children));
  }

 private:
  Rng& rng_;
  std::vector<Rational> labels_;
  std::size_t next_name_ = 0;
};

}  // namespace

BallTree gen_ball_tree(Rng& rng, const DistanceSet& d, std::size_t max_leaves) {
  if (d.size() < 2) throw PreconditionError("gen_ball_tree: D needs a positive member");
  if (max_leaves == 0) throw PreconditionError("gen_ball_tree: max_leaves must be positive");
  std::vector<Rational> labels = d.positive();
  BallTreeGen gen(rng, labels);
  return gen.build(rng.between(1, max_leaves), labels.size());
}

BallTree gen_ball_tree(Seed seed, const DistanceSet& d, std::size_t max_leaves) {
  Rng rng(seed);
  return gen_ball_tree(rng, d, max_leaves);
}

DistanceSet gen_distance_set(Rng& rng, std::size_t count) {
  static constexpr std::int64_t kDens[] = {1, 2, 4};
  std::set<Rational> values;
  while (values.size() < count) {
    values.insert(Rational(static_cast<std::int64_t>(rng.between(1, 24)), kDens[rng.below(3)]));
  }
  return DistanceSet::of({values.begin(), values.end()});
}

QuasiOrder gen_qo(Rng& rng, std::size_t n, const Rational& density, bool collapse) {
  std::vector<std::pair<Element, Element>> pairs;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (x == y || !rng.chance(density)) continue;
      pairs.emplace_back(x, y);
      if (collapse && rng.chance(Rational(1, 4))) pairs.emplace_back(y, x);
    }
  }
  return QuasiOrder::closure(n, pairs);
}

QuasiOrder gen_qo(Seed seed, std::size_t n, const Rational& density, bool collapse) {
  Rng rng(seed);
  return gen_qo(rng, n, density, collapse);
}

QuasiOrder gen_equivalence(Rng& rng, std::size_t n) {
  const std::size_t k = rng.between(1, std::max<std::size_t>(n, 1));
  std::vector<std::size_t> label(n);
  for (auto& l : label) l = rng.below(k);
  std::vector<std::pair<Element, Element>> pairs;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (x != y && label[x] == label[y]) pairs.emplace_back(x, y);
    }
  }
  return QuasiOrder::closure(n, pairs);
}

namespace {

Multiplicity random_mult(Rng& rng, const Rational& omega_prob) {
  if (rng.chance(omega_prob)) return Multiplicity::omega();
  return Multiplicity::finite(rng.between(1, 3));
}

}  // namespace

OmegaMultiset gen_multiset(Rng& rng, const QuasiOrder& s, std::size_t max_support,
                           const Rational& omega_prob, bool force_omega) {
  if (s.size() == 0 || max_support == 0) {
    throw PreconditionError("gen_multiset: empty carrier or support bound");
  }
  const std::size_t k = rng.between(1, std::min(max_support, s.size()));
  std::vector<std::size_t> elems = random_permutation(rng, s.size());
  elems.resize(k);
  std::map<Element, Multiplicity> mults;
  bool has_omega = false;
  for (Element x : elems) {
    Multiplicity m = random_mult(rng, omega_prob);
    has_omega = has_omega || m.is_omega();
    mults.emplace(x, m);
  }
  if (force_omega && !has_omega) mults.insert_or_assign(elems[rng.below(k)], Multiplicity::omega());
  return OmegaMultiset(s, std::move(mults));
}

OmegaMultiset gen_multiset(Seed seed, const QuasiOrder& s, std::size_t max_support,
                           const Rational& omega_prob, bool force_omega) {
  Rng rng(seed);
  return gen_multiset(rng, s, max_support, omega_prob, force_omega);
}

Graph gen_graph(Rng& rng, std::size_t max_vertices) {
  const std::size_t n = rng.between(1, max_vertices);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng.chance(Rational(1, 2))) edges.emplace_back(a, b);
    }
  }
  return Graph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Mutations

namespace {

/// Renumbers a parent map over arbitrary ids (alive[v] marks present nodes)
/// in breadth-first order from `root`, visiting children in random order.
RootedTree renumber(Rng& rng, const std::vector<std::optional<std::size_t>>& parent,
                    const std::vector<bool>& alive, std::size_t root) {
  const std::size_t n = parent.size();
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v] && parent[v]) kids[*parent[v]].push_back(v);
  }
  std::vector<std::size_t> index(n, 0);
  std::vector<std::optional<std::size_t>> out;
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    index[v] = out.size();
    out.push_back(parent[v] ? std::optional<std::size_t>(index[*parent[v]]) : std::nullopt);
    rng.shuffle(kids[v]);
    for (std::size_t c : kids[v]) queue.push_back(c);
  }
  return RootedTree::from_parents(out);
}

}  // namespace

RootedTree relabeled(Rng& rng, const RootedTree& t) {
  return renumber(rng, t.parents(), std::vector<bool>(t.size(), true), 0);
}

MutatedPair<RootedTree> mutate_pair(Rng& rng, const RootedTree& t, std::size_t max_size) {
  std::vector<std::optional<std::size_t>> parent = t.parents();
  std::vector<bool> alive(t.size(), true);
  if (rng.chance(Rational(1, 2))) return {t, renumber(rng, parent, alive, 0), Mutation::kRelabel};

  std::vector<std::size_t> leaves;
  for (std::size_t v = 1; v < t.size(); ++v) {
    if (t.is_leaf(v)) leaves.push_back(v);
  }
  const bool can_grow = t.size() < max_size;
  const bool can_shrink = !leaves.empty();
  std::size_t choice = rng.below(3);
  if (choice == 0 && !can_grow) choice = 1;
  if (choice != 0 && !can_shrink) choice = 0;
  if (choice == 0 && !can_grow) return {t, renumber(rng, parent, alive, 0), Mutation::kRelabel};

  if (choice == 0) {
    parent.push_back(rng.below(t.size()));
    alive.push_back(true);
  } else if (choice == 1) {
    alive[leaves[rng.below(leaves.size())]] = false;
  } else {
    const std::size_t leaf = leaves[rng.below(leaves.size())];
    std::size_t target = rng.below(t.size() - 1);
    if (target >= leaf) ++target;
    parent[leaf] = target;
  }
  return {t, renumber(rng, parent, alive, 0), Mutation::kEdit};
}

namespace {

std::string fresh_name(const std::vector<std::string>& names) {
  std::set<std::string> used(names.begin(), names.end());
  for (std::size_t i = names.size();; ++i) {
    std::string candidate = "p" + std::to_string(i);
    if (!used.count(candidate)) return candidate;
  }
}

FiniteMetric add_near_point(Rng& rng, const FiniteMetric& u, const std::vector<Rational>& labels) {
  const std::size_t n = u.size();
  const std::size_t p = rng.below(n);
  const Rational& l = labels[rng.below(labels.size())];
  DistanceMatrix d = u.matrix();
  for (auto& row : d) row.emplace_back(0);
  d.emplace_back(n + 1, Rational(0));
  for (std::size_t x = 0; x < n; ++x) {
    const Rational v = x == p ? l : std::max(l, u.at(p, x));
    d[n][x] = v;
    d[x][n] = v;
  }
  std::vector<std::string> names = u.names();
  names.push_back(fresh_name(names));
  return FiniteMetric::from_matrix(std::move(d), std::move(names));
}

/// Rebuilds `t` with the diameter of internal node number `target` (in
/// pre-order) replaced by `label`.
BallTree relabel_ball(const BallTree& t, std::size_t& counter, std::size_t target,
                      const Rational& label) {
  if (t.is_leaf()) return t;
  const bool hit = counter++ == target;
  std::vector<BallTree> kids;
  for (const BallTree& c : t.children()) kids.push_back(relabel_ball(c, counter, target, label));
  return BallTree::internal(hit ? label : t.label(), std::move(kids));
}

struct BallSlot {
  Rational current;
  Rational lower;  // largest child label
  std::optional<Rational> upper;
};

void collect_slots(const BallTree& t, const std::optional<Rational>& upper,
                   std::vector<BallSlot>& out) {
  if (t.is_leaf()) return;
  Rational lower(0);
  for (const BallTree& c : t.children()) lower = std::max(lower, c.label());
  out.push_back({t.label(), lower, upper});
  for (const BallTree& c : t.children()) collect_slots(c, t.label(), out);
}

std::optional<FiniteMetric> change_ball_label(Rng& rng, const FiniteMetric& u,
                                              const std::vector<Rational>& labels) {
  const BallTree t = to_ball_tree(u);
  std::vector<BallSlot> slots;
  collect_slots(t, std::nullopt, slots);
  std::vector<std::pair<std::size_t, Rational>> options;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (const Rational& l : labels) {
      if (l > slots[i].lower && (!slots[i].upper || l < *slots[i].upper) && l != slots[i].current) {
        options.emplace_back(i, l);
      }
    }
  }
  if (options.empty()) return std::nullopt;
  const auto& [slot, label] = options[rng.below(options.size())];
  std::size_t counter = 0;
  return from_ball_tree(relabel_ball(t, counter, slot, label));
}

}  // namespace

MutatedPair<FiniteMetric> mutate_pair(Rng& rng, const FiniteMetric& u, const DistanceSet& d,
                                      std::size_t max_size) {
  const std::vector<Rational> labels = d.positive();
  if (labels.empty()) throw PreconditionError("mutate_pair: D needs a positive member");
  auto shuffled = [&](const FiniteMetric& m) {
    const std::vector<std::size_t> perm = random_permutation(rng, m.size());
    return m.permuted(perm);
  };
  if (rng.chance(Rational(1, 2))) return {u, shuffled(u), Mutation::kRelabel};

  std::vector<std::size_t> order = {0, 1, 2};
  rng.shuffle(order);
  for (std::size_t choice : order) {
    if (choice == 0 && u.size() > 1) {
      std::vector<std::size_t> keep = random_permutation(rng, u.size());
      keep.pop_back();
      return {u, u.restrict_to(keep), Mutation::kEdit};
    }
    if (choice == 1 && u.size() < max_size) {
      return {u, shuffled(add_near_point(rng, u, labels)), Mutation::kEdit};
    }
    if (choice == 2) {
      if (auto m = change_ball_label(rng, u, labels)) return {u, shuffled(*m), Mutation::kEdit};
    }
  }
  return {u, shuffled(u), Mutation::kRelabel};
}

MutatedPair<Graph> mutate_pair(Rng& rng, const Graph& g, std::size_t max_size) {
  const std::size_t n = g.size();
  auto induced = [&](const std::vector<std::size_t>& verts) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        if (g.adjacent(verts[i], verts[j])) edges.emplace_back(i, j);
      }
    }
    return Graph::from_edges(verts.size(), edges);
  };
  if (rng.chance(Rational(1, 2))) return {g, induced(random_permutation(rng, n)), Mutation::kRelabel};

  std::size_t choice = rng.below(3);
  if (choice == 0 && n < 2) choice = 1;
  if (choice == 1 && n >= max_size) choice = n >= 2 ? 0 : 2;
  if (choice == 2 && n < 2) choice = 1;
  std::vector<std::pair<std::size_t, std::size_t>> edges = g.edges();
  if (choice == 0) {
    std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    auto it = std::find(edges.begin(), edges.end(), std::make_pair(a, b));
    if (it != edges.end()) {
      edges.erase(it);
    } else {
      edges.emplace_back(a, b);
    }
    Graph h = Graph::from_edges(n, edges);
    std::vector<std::size_t> perm = random_permutation(rng, n);
    std::vector<std::pair<std::size_t, std::size_t>> relabeled;
    for (auto [x, y] : h.edges()) relabeled.emplace_back(perm[x], perm[y]);
    return {g, Graph::from_edges(n, relabeled), Mutation::kEdit};
  }
  if (choice == 1 && n < max_size) {
    for (std::size_t v = 0; v < n; ++v) {
      if (rng.chance(Rational(1, 2))) edges.emplace_back(v, n);
    }
    return {g, Graph::from_edges(n + 1, edges), Mutation::kEdit};
  }
  if (n >= 2) {
    std::vector<std::size_t> keep = random_permutation(rng, n);
    keep.pop_back();
    return {g, induced(keep), Mutation::kEdit};
  }
  return {g, g, Mutation::kRelabel};
}

MutatedPair<OmegaMultiset> mutate_pair(Rng& rng, const OmegaMultiset& m) {
  const QuasiOrder& s = m.base();
  if (rng.chance(Rational(1, 2))) {
    std::map<Element, Multiplicity> out;
    for (const auto& [x, mult] : m.mults()) {
      std::vector<Element> cls;
      for (Element y = 0; y < s.size(); ++y) {
        if (s.equivalent(x, y)) cls.push_back(y);
      }
      const Element y = cls[rng.below(cls.size())];
      auto it = out.find(y);
      if (it == out.end()) {
        out.emplace(y, mult);
      } else {
        it->second = it->second + mult;
      }
    }
    return {m, OmegaMultiset(s, std::move(out)), Mutation::kRelabel};
  }

  std::map<Element, Multiplicity> out = m.mults();
  const std::vector<Element> supp = m.support();
  const std::size_t choice = rng.below(3);
  if (choice == 0 || (choice == 2 && supp.size() == 1) || (choice == 1 && supp.size() == s.size())) {
    const Element x = supp[rng.below(supp.size())];
    const Multiplicity old = out.at(x);
    Multiplicity next = old;
    while (next == old) next = random_mult(rng, Rational(1, 3));
    out.insert_or_assign(x, next);
  } else if (choice == 1) {
    std::vector<Element> absent;
    for (Element y = 0; y < s.size(); ++y) {
      if (!out.count(y)) absent.push_back(y);
    }
    out.emplace(absent[rng.below(absent.size())], random_mult(rng, Rational(1, 3)));
  } else {
    out.erase(supp[rng.below(supp.size())]);
  }
  return {m, OmegaMultiset(s, std::move(out)), Mutation::kEdit};
}

}  // namespace ultra::lab
