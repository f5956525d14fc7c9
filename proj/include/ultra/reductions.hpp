#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ultra/ball_tree.hpp"
#include "ultra/metric.hpp"
#include "ultra/rational.hpp"

namespace ultra::reduce {

/// Finite rooted tree on {0, ..., n-1}; node 0 is the root and every other
/// node's parent has a smaller index.
class RootedTree {
 public:
  /// parents[0] must be empty, parents[i] < i otherwise. InputError if not.
  static RootedTree from_parents(const std::vector<std::optional<std::size_t>>& parents);

  std::size_t size() const { return parent_.size(); }
  std::optional<std::size_t> parent(std::size_t v) const;
  std::span<const std::size_t> children(std::size_t v) const { return children_[v]; }
  std::size_t depth(std::size_t v) const { return depth_[v]; }
  /// Largest node depth.
  std::size_t height() const;
  /// Height of the subtree below v (0 for a leaf).
  std::size_t rank(std::size_t v) const { return rank_[v]; }
  bool is_leaf(std::size_t v) const { return children_[v].empty(); }
  /// Deepest common ancestor.
  std::size_t meet(std::size_t u, std::size_t v) const;

  std::vector<std::optional<std::size_t>> parents() const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.parent_ == b.parent_;
  }

 private:
  std::vector<std::size_t> parent_;  // root maps to itself
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> rank_;
};

/// Simple undirected graph on {0, ..., n-1}.
class Graph {
 public:
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return n_; }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a * n_ + b] != 0; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  /// Fewer than two vertices, no edges, or every edge.
  bool is_trivial() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<char> adj_;
};

/// Nodes of t as an ultrametric space: distinct s, u are r[k] apart where k
/// is the depth of their deepest common ancestor. `r` must be strictly
/// decreasing, positive, and longer than the height of t.
BallTree theta(const RootedTree& t, std::span<const Rational> r);

/// Root-preserving isomorphism by canonical subtree codes.
bool rooted_tree_iso(const RootedTree& g, const RootedTree& h);
/// Root- and parent-preserving injection by recursive child matching.
bool rooted_tree_embeds(const RootedTree& g, const RootedTree& h);

/// Node-by-node search over parent-preserving maps. Reference for the two
/// decisions above; refuses trees larger than `bound`.
bool brute_rooted_iso(const RootedTree& g, const RootedTree& h, std::size_t bound = 9);
bool brute_rooted_embeds(const RootedTree& g, const RootedTree& h, std::size_t bound = 9);

/// Glues u to U(D \ {r0}), every cross distance being max(rbar, r'). Here r0
/// is the largest member of D below rbar, and u may only realize distances
/// in D below rbar.
BallTree glue_star(const BallTree& u, const DistanceSet& d, const Rational& rbar);

/// Disjoint union of x and U(D \ {max D}) with all cross distances max D.
/// The result realizes exactly D.
BallTree add_tail(const BallTree& x, const DistanceSet& d);

/// Disjoint union of the spaces with all cross distances r. Every distance
/// inside a component must be below r.
BallTree phi_union(std::span<const BallTree> xs, const Rational& r);

/// Splits x into its balls of diameter below max D and adds to each one a
/// fresh point at the second largest distance of D from all of it.
std::vector<BallTree> decompose(const BallTree& x, const DistanceSet& d);

/// Extends t by one child under each leaf and sets d(s, u) = r[rank of the
/// deepest common ancestor in the extended tree]. `r` strictly increasing
/// from r[0] = 0 with more than rank(root) + 1 entries.
BallTree rank_space(const RootedTree& t, std::span<const Rational> r);

/// Distance r on edges and rp on non-edges; requires 0 < r < rp <= 2r.
FiniteMetric graph_space(const Graph& g, const Rational& r, const Rational& rp);

/// U(X u {0}) for a set of positive distances.
BallTree powerset_space(std::span<const Rational> x);

/// Injective assignment of xs into ys with each x embedding in its image.
bool list_inj(std::span<const BallTree> xs, std::span<const BallTree> ys);
/// Bijective assignment with each pair isometric.
bool list_bij_isometric(std::span<const BallTree> xs, std::span<const BallTree> ys);

bool brute_graph_iso(const Graph& g, const Graph& h, std::size_t bound = 9);
/// Induced-subgraph embedding by exhaustive injection search.
bool brute_graph_embeds(const Graph& g, const Graph& h, std::size_t bound = 9);

}  // namespace ultra::reduce
