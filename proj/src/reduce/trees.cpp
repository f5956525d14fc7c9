#include <algorithm>
#include <map>
#include <string>

#include "ultra/error.hpp"
#include "ultra/matching.hpp"
#include "ultra/reductions.hpp"

namespace ultra::reduce {

RootedTree RootedTree::from_parents(const std::vector<std::optional<std::size_t>>& parents) {
  if (parents.empty()) throw InputError("tree must have at least one node");
  if (parents[0]) throw InputError("node 0 must be the root (parent null)");
  RootedTree t;
  const std::size_t n = parents.size();
  t.parent_.assign(n, 0);
  t.children_.assign(n, {});
  t.depth_.assign(n, 0);
  t.rank_.assign(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    if (!parents[i]) throw InputError("node " + std::to_string(i) + " has no parent");
    if (*parents[i] >= i) {
      throw InputError("parent of node " + std::to_string(i) + " must have a smaller index");
    }
    t.parent_[i] = *parents[i];
    t.children_[*parents[i]].push_back(i);
    t.depth_[i] = t.depth_[*parents[i]] + 1;
  }
  for (std::size_t i = n; i-- > 1;) {
    t.rank_[t.parent_[i]] = std::max(t.rank_[t.parent_[i]], t.rank_[i] + 1);
  }
  return t;
}

std::optional<std::size_t> RootedTree::parent(std::size_t v) const {
  if (v == 0) return std::nullopt;
  return parent_[v];
}

std::size_t RootedTree::height() const { return rank_[0]; }

std::size_t RootedTree::meet(std::size_t u, std::size_t v) const {
  while (u != v) {
    if (depth_[u] < depth_[v]) std::swap(u, v);
    u = parent_[u];
  }
  return u;
}

std::vector<std::optional<std::size_t>> RootedTree::parents() const {
  std::vector<std::optional<std::size_t>> out(size());
  for (std::size_t i = 1; i < size(); ++i) out[i] = parent_[i];
  return out;
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  g.n_ = n;
  g.adj_.assign(n * n, 0);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") out of range for " + std::to_string(n) + " vertices");
    }
    if (a == b) throw InputError("loop at vertex " + std::to_string(a));
    g.adj_[a * n + b] = 1;
    g.adj_[b * n + a] = 1;
  }
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      if (adjacent(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool Graph::is_trivial() const {
  std::size_t m = edges().size();
  return n_ < 2 || m == 0 || m == n_ * (n_ - 1) / 2;
}

namespace {

std::string ahu_code(const RootedTree& t, std::size_t v) {
  std::vector<std::string> kids;
  for (std::size_t c : t.children(v)) kids.push_back(ahu_code(t, c));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

class TreeEmbedder {
 public:
  TreeEmbedder(const RootedTree& g, const RootedTree& h) : g_(g), h_(h) {}

  bool maps(std::size_t u, std::size_t v) {
    if (g_.rank(u) > h_.rank(v) || g_.children(u).size() > h_.children(v).size()) return false;
    auto key = std::make_pair(u, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto gc = g_.children(u);
    auto hc = h_.children(v);
    bool ok = saturates_left(gc.size(), hc.size(),
                             [&](std::size_t i, std::size_t j) { return maps(gc[i], hc[j]); });
    memo_.emplace(key, ok);
    return ok;
  }

 private:
  const RootedTree& g_;
  const RootedTree& h_;
  std::map<std::pair<std::size_t, std::size_t>, bool> memo_;
};

void check_tree_bound(const RootedTree& t, std::size_t bound) {
  if (t.size() > bound) {
    throw LimitError("brute-force tree oracle refuses " + std::to_string(t.size()) +
                     " nodes (bound " + std::to_string(bound) + ")");
  }
}

// Nodes are assigned in index order, so a node's parent is always mapped
// before the node itself.
bool extend_tree_map(const RootedTree& g, const RootedTree& h, std::vector<std::size_t>& image,
                     std::vector<char>& used) {
  std::size_t i = image.size();
  if (i == g.size()) return true;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (used[j]) continue;
    if (i == 0 ? j != 0 : h.parent(j) != image[*g.parent(i)]) continue;
    used[j] = 1;
    image.push_back(j);
    if (extend_tree_map(g, h, image, used)) return true;
    image.pop_back();
    used[j] = 0;
  }
  return false;
}

void check_graph_bound(const Graph& g, std::size_t bound) {
  if (g.size() > bound) {
    throw LimitError("brute-force graph oracle refuses " + std::to_string(g.size()) +
                     " vertices (bound " + std::to_string(bound) + ")");
  }
}

bool extend_graph_map(const Graph& g, const Graph& h, std::vector<std::size_t>& image,
                      std::vector<char>& used) {
  std::size_t i = image.size();
  if (i == g.size()) return true;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (used[j]) continue;
    bool ok = true;
    for (std::size_t p = 0; p < i && ok; ++p) ok = g.adjacent(p, i) == h.adjacent(image[p], j);
    if (!ok) continue;
    used[j] = 1;
    image.push_back(j);
    if (extend_graph_map(g, h, image, used)) return true;
    image.pop_back();
    used[j] = 0;
  }
  return false;
}

}  // namespace

bool rooted_tree_iso(const RootedTree& g, const RootedTree& h) {
  return g.size() == h.size() && ahu_code(g, 0) == ahu_code(h, 0);
}

bool rooted_tree_embeds(const RootedTree& g, const RootedTree& h) {
  if (g.size() > h.size()) return false;
  TreeEmbedder e(g, h);
  return e.maps(0, 0);
}

bool brute_rooted_iso(const RootedTree& g, const RootedTree& h, std::size_t bound) {
  check_tree_bound(g, bound);
  check_tree_bound(h, bound);
  return g.size() == h.size() && brute_rooted_embeds(g, h, bound);
}

bool brute_rooted_embeds(const RootedTree& g, const RootedTree& h, std::size_t bound) {
  check_tree_bound(g, bound);
  check_tree_bound(h, bound);
  if (g.size() > h.size()) return false;
  std::vector<std::size_t> image;
  std::vector<char> used(h.size(), 0);
  return extend_tree_map(g, h, image, used);
}

bool brute_graph_iso(const Graph& g, const Graph& h, std::size_t bound) {
  check_graph_bound(g, bound);
  check_graph_bound(h, bound);
  return g.size() == h.size() && brute_graph_embeds(g, h, bound);
}

bool brute_graph_embeds(const Graph& g, const Graph& h, std::size_t bound) {
  check_graph_bound(g, bound);
  check_graph_bound(h, bound);
  if (g.size() > h.size()) return false;
  std::vector<std::size_t> image;
  std::vector<char> used(h.size(), 0);
  return extend_graph_map(g, h, image, used);
}

}  // namespace ultra::reduce
