#include "ultra/matching.hpp"

#include <optional>

namespace ultra {
namespace {

struct Kuhn {
  std::size_t right;
  const std::function<bool(std::size_t, std::size_t)>& edge;
  // Edge answers are cached: callers often pass expensive recursive tests.
  std::vector<std::vector<std::optional<bool>>> cache;
  std::vector<int> match_right;
  std::vector<char> seen;

  bool has_edge(std::size_t l, std::size_t r) {
    auto& slot = cache[l][r];
    if (!slot) slot = edge(l, r);
    return *slot;
  }

  bool augment(std::size_t l) {
    for (std::size_t r = 0; r < right; ++r) {
      if (seen[r] || !has_edge(l, r)) continue;
      seen[r] = 1;
      if (match_right[r] < 0 || augment(static_cast<std::size_t>(match_right[r]))) {
        match_right[r] = static_cast<int>(l);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::vector<int> max_bipartite_matching(std::size_t left, std::size_t right,
                                        const std::function<bool(std::size_t, std::size_t)>& edge) {
  Kuhn k{right, edge, std::vector<std::vector<std::optional<bool>>>(
                          left, std::vector<std::optional<bool>>(right)),
         std::vector<int>(right, -1), {}};
  for (std::size_t l = 0; l < left; ++l) {
    k.seen.assign(right, 0);
    k.augment(l);
  }
  std::vector<int> match_left(left, -1);
  for (std::size_t r = 0; r < right; ++r) {
    if (k.match_right[r] >= 0) match_left[static_cast<std::size_t>(k.match_right[r])] = static_cast<int>(r);
  }
  return match_left;
}

bool saturates_left(std::size_t left, std::size_t right,
                    const std::function<bool(std::size_t, std::size_t)>& edge) {
  if (left > right) return false;
  for (int m : max_bipartite_matching(left, right, edge)) {
    if (m < 0) return false;
  }
  return true;
}

}  // namespace ultra
