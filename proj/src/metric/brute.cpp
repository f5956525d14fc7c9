#include <string>
#include <vector>

#include "ultra/ball_tree.hpp"

namespace ultra {
namespace {

void check_bound(const FiniteMetric& m, std::size_t bound, const char* which) {
  if (m.size() > bound) {
    throw LimitError(std::string("brute-force oracle refuses ") + which + " space of " +
                     std::to_string(m.size()) + " points (bound " +
                     std::to_string(bound) + ")");
  }
}

// Assigns points of `a` in index order to distinct points of `b`, checking
// every distance to previously assigned points.
bool extend(const FiniteMetric& a, const FiniteMetric& b, std::vector<std::size_t>& image,
            std::vector<char>& used) {
  std::size_t i = image.size();
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    bool ok = true;
    for (std::size_t p = 0; p < i && ok; ++p) ok = a.at(p, i) == b.at(image[p], j);
    if (!ok) continue;
    used[j] = 1;
    image.push_back(j);
    if (extend(a, b, image, used)) return true;
    image.pop_back();
    used[j] = 0;
  }
  return false;
}

}  // namespace

bool brute_isometric(const FiniteMetric& a, const FiniteMetric& b, std::size_t bound) {
  check_bound(a, bound, "first");
  check_bound(b, bound, "second");
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> image;
  std::vector<char> used(b.size(), 0);
  return extend(a, b, image, used);
}

bool brute_embeds(const FiniteMetric& a, const FiniteMetric& b, std::size_t bound) {
  check_bound(a, bound, "first");
  check_bound(b, bound, "second");
  if (a.size() > b.size()) return false;
  std::vector<std::size_t> image;
  std::vector<char> used(b.size(), 0);
  return extend(a, b, image, used);
}

}  // namespace ultra
