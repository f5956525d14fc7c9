#include <algorithm>
#include <string>

#include "ultra/error.hpp"
#include "ultra/matching.hpp"
#include "ultra/reductions.hpp"

namespace ultra::reduce {
namespace {

// Builds a space from a point list and a distance rule, then canonicalizes.
class SpaceBuilder {
 public:
  std::size_t add(std::string name) {
    names_.push_back(std::move(name));
    for (auto& row : d_) row.emplace_back(0);
    d_.emplace_back(names_.size(), Rational(0));
    return names_.size() - 1;
  }

  std::size_t add_space(const BallTree& t, const std::string& prefix = {}) {
    FiniteMetric m = from_ball_tree(t);
    std::size_t first = names_.size();
    for (const auto& name : m.names()) add(prefix + name);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) d_[first + i][first + j] = m.at(i, j);
    }
    return first;
  }

  void set(std::size_t i, std::size_t j, const Rational& r) {
    d_[i][j] = r;
    d_[j][i] = r;
  }

  std::size_t size() const { return names_.size(); }

  BallTree finish() { return to_ball_tree(FiniteMetric::from_matrix(d_, names_)); }

 private:
  DistanceMatrix d_;
  std::vector<std::string> names_;
};

void require_decreasing(std::span<const Rational> r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i].is_positive()) throw PreconditionError("distance sequence must be positive");
    if (i > 0 && !(r[i] < r[i - 1])) {
      throw PreconditionError("distance sequence must be strictly decreasing");
    }
  }
}

void require_within(const BallTree& t, const DistanceSet& allowed, const char* what) {
  const DistanceSet realized = realized_distances(t);
  for (const auto& r : realized.values()) {
    if (!allowed.contains(r)) {
      throw PreconditionError(std::string(what) + ": distance " + r.to_string() +
                              " is not in " + allowed.to_string());
    }
  }
}

}  // namespace

BallTree theta(const RootedTree& t, std::span<const Rational> r) {
  require_decreasing(r);
  if (r.size() < t.height() + 1) {
    throw PreconditionError("distance sequence has " + std::to_string(r.size()) +
                            " entries, tree needs " + std::to_string(t.height() + 1));
  }
  SpaceBuilder b;
  for (std::size_t v = 0; v < t.size(); ++v) b.add(std::to_string(v));
  for (std::size_t u = 0; u < t.size(); ++u) {
    for (std::size_t v = u + 1; v < t.size(); ++v) b.set(u, v, r[t.depth(t.meet(u, v))]);
  }
  return b.finish();
}

BallTree glue_star(const BallTree& u, const DistanceSet& d, const Rational& rbar) {
  if (d.size() < 2) throw PreconditionError("glue needs at least two distances");
  if (!rbar.is_positive() || !d.contains(rbar)) {
    throw PreconditionError("rbar " + rbar.to_string() + " must be a positive member of D");
  }
  std::vector<Rational> below;
  for (const auto& r : d.positive()) {
    if (r < rbar) below.push_back(r);
  }
  if (below.empty()) throw PreconditionError("D has no positive distance below rbar");
  const Rational r0 = below.back();
  require_within(u, DistanceSet::of(below), "glue input");

  SpaceBuilder b;
  std::size_t first = b.add_space(u);
  std::size_t tail = b.size();
  DistanceSet rest = d.without(r0);
  for (const auto& r : rest.values()) b.add("#glue:" + r.to_string());
  auto values = rest.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      b.set(tail + i, tail + j, std::max(values[i], values[j]));
    }
    for (std::size_t x = first; x < tail; ++x) b.set(x, tail + i, std::max(rbar, values[i]));
  }
  return b.finish();
}

BallTree add_tail(const BallTree& x, const DistanceSet& d) {
  if (d.size() < 2) throw PreconditionError("tail needs at least two distances");
  require_within(x, d, "tail input");
  const Rational top = d.max();
  SpaceBuilder b;
  std::size_t first = b.add_space(x);
  std::size_t tail = b.add_space(canonical_space_of(d.without(top)), "#tail:");
  for (std::size_t i = first; i < tail; ++i) {
    for (std::size_t j = tail; j < b.size(); ++j) b.set(i, j, top);
  }
  return b.finish();
}

BallTree phi_union(std::span<const BallTree> xs, const Rational& r) {
  if (xs.empty()) throw PreconditionError("union of an empty list");
  if (!r.is_positive()) throw PreconditionError("cross distance must be positive");
  for (const auto& x : xs) {
    if (!x.is_leaf() && !(x.label() < r)) {
      throw PreconditionError("component diameter " + x.label().to_string() +
                              " is not below " + r.to_string());
    }
  }
  if (xs.size() == 1) return xs[0];
  SpaceBuilder b;
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    starts.push_back(b.add_space(xs[i], std::to_string(i) + ":"));
  }
  starts.push_back(b.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t p = starts[i]; p < starts[i + 1]; ++p) {
      for (std::size_t q = starts[i + 1]; q < b.size(); ++q) b.set(p, q, r);
    }
  }
  return b.finish();
}

std::vector<BallTree> decompose(const BallTree& x, const DistanceSet& d) {
  if (d.size() < 3) throw PreconditionError("decompose needs at least three distances");
  require_within(x, d, "decompose input");
  auto values = d.values();
  const Rational top = values[values.size() - 1];
  const Rational second = values[values.size() - 2];

  std::vector<BallTree> classes;
  if (!x.is_leaf() && x.label() == top) {
    classes.assign(x.children().begin(), x.children().end());
  } else {
    classes.push_back(x);
  }
  std::vector<BallTree> out;
  for (std::size_t n = 0; n < classes.size(); ++n) {
    SpaceBuilder b;
    b.add_space(classes[n]);
    std::size_t star = b.add("#star" + std::to_string(n));
    for (std::size_t p = 0; p < star; ++p) b.set(p, star, second);
    out.push_back(b.finish());
  }
  return out;
}

BallTree rank_space(const RootedTree& t, std::span<const Rational> r) {
  if (r.empty() || !r[0].is_zero()) throw PreconditionError("rank distances must start at 0");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i - 1] < r[i])) throw PreconditionError("rank distances must be strictly increasing");
  }
  if (r.size() <= t.height() + 1) {
    throw PreconditionError("rank distances have " + std::to_string(r.size()) +
                            " entries, tree needs " + std::to_string(t.height() + 2));
  }
  // Extended tree: each leaf v of t gets a fresh child, numbered after the
  // original nodes. Original ranks shift up by one; fresh nodes have rank 0.
  std::vector<std::optional<std::size_t>> parents = t.parents();
  std::vector<std::string> names;
  for (std::size_t v = 0; v < t.size(); ++v) names.push_back(std::to_string(v));
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) {
      parents.emplace_back(v);
      names.push_back("#leaf:" + std::to_string(v));
    }
  }
  RootedTree ext = RootedTree::from_parents(parents);
  SpaceBuilder b;
  for (auto& n : names) b.add(std::move(n));
  for (std::size_t u = 0; u < ext.size(); ++u) {
    for (std::size_t v = u + 1; v < ext.size(); ++v) b.set(u, v, r[ext.rank(ext.meet(u, v))]);
  }
  return b.finish();
}

FiniteMetric graph_space(const Graph& g, const Rational& r, const Rational& rp) {
  if (!(r.is_positive() && r < rp && rp <= r + r)) {
    throw PreconditionError("graph distances need 0 < r < r' <= 2r, got r=" + r.to_string() +
                            " r'=" + rp.to_string());
  }
  DistanceMatrix d(g.size(), std::vector<Rational>(g.size()));
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t c = 0; c < g.size(); ++c) {
      if (a != c) d[a][c] = g.adjacent(a, c) ? r : rp;
    }
  }
  return FiniteMetric::from_matrix(std::move(d));
}

BallTree powerset_space(std::span<const Rational> x) {
  for (const auto& r : x) {
    if (!r.is_positive()) throw PreconditionError("powerset members must be positive");
  }
  return canonical_space_of(DistanceSet::of({x.begin(), x.end()}));
}

bool list_inj(std::span<const BallTree> xs, std::span<const BallTree> ys) {
  return saturates_left(xs.size(), ys.size(),
                        [&](std::size_t i, std::size_t j) { return embeds(xs[i], ys[j]); });
}

bool list_bij_isometric(std::span<const BallTree> xs, std::span<const BallTree> ys) {
  return xs.size() == ys.size() &&
         saturates_left(xs.size(), ys.size(),
                        [&](std::size_t i, std::size_t j) { return isometric(xs[i], ys[j]); });
}

}  // namespace ultra::reduce
