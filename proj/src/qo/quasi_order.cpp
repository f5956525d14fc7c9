#include "ultra/quasi_order.hpp"

#include <string>

#include "ultra/error.hpp"

namespace ultra::qo {

QuasiOrder QuasiOrder::closure(std::size_t n,
                               const std::vector<std::pair<Element, Element>>& pairs) {
  if (n == 0) throw InputError("quasi-order carrier must be nonempty");
  std::vector<char> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) {
      throw InputError("pair (" + std::to_string(x) + "," + std::to_string(y) +
                       ") out of range for carrier of size " + std::to_string(n));
    }
    rel[x * n + y] = 1;
  }
  // Warshall.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel[k * n + j]) rel[i * n + j] = 1;
      }
    }
  }
  return QuasiOrder(n, std::move(rel));
}

QuasiOrder QuasiOrder::from_relation(const std::vector<std::vector<bool>>& le) {
  const std::size_t n = le.size();
  if (n == 0) throw InputError("quasi-order carrier must be nonempty");
  std::vector<char> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (le[i].size() != n) throw InputError("relation matrix is not square");
    for (std::size_t j = 0; j < n; ++j) rel[i * n + j] = le[i][j] ? 1 : 0;
    if (!rel[i * n + i]) throw InputError("relation is not reflexive at " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (rel[j * n + k] && !rel[i * n + k]) {
          throw InputError("relation is not transitive: " + std::to_string(i) + "<=" +
                           std::to_string(j) + "<=" + std::to_string(k));
        }
      }
    }
  }
  return QuasiOrder(n, std::move(rel));
}

bool QuasiOrder::is_equivalence() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (le(i, j) != le(j, i)) return false;
    }
  }
  return true;
}

std::vector<std::pair<Element, Element>> QuasiOrder::pairs() const {
  std::vector<std::pair<Element, Element>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && le(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::vector<Element>> es_classes(const QuasiOrder& s) {
  std::vector<std::vector<Element>> classes;
  std::vector<char> placed(s.size(), 0);
  for (Element x = 0; x < s.size(); ++x) {
    if (placed[x]) continue;
    std::vector<Element> cls;
    for (Element y = x; y < s.size(); ++y) {
      if (!placed[y] && s.equivalent(x, y)) {
        placed[y] = 1;
        cls.push_back(y);
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::optional<std::pair<Element, Element>> has_incomparable_pair(const QuasiOrder& s) {
  for (Element x = 0; x < s.size(); ++x) {
    for (Element y = x + 1; y < s.size(); ++y) {
      if (!s.le(x, y) && !s.le(y, x)) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

}  // namespace ultra::qo
