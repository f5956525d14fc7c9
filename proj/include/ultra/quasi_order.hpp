#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ultra::qo {

using Element = std::size_t;

/// Reflexive, transitive relation on {0, ..., n-1}.
class QuasiOrder {
 public:
  /// Reflexive-transitive closure of `pairs` on n elements. Indices >= n are
  /// an InputError, as is n = 0.
  static QuasiOrder closure(std::size_t n, const std::vector<std::pair<Element, Element>>& pairs);

  /// Accepts an explicit relation matrix; throws InputError unless it is
  /// square, reflexive and transitive.
  static QuasiOrder from_relation(const std::vector<std::vector<bool>>& le);

  std::size_t size() const { return n_; }
  bool le(Element x, Element y) const { return rel_[x * n_ + y] != 0; }
  bool equivalent(Element x, Element y) const { return le(x, y) && le(y, x); }
  bool is_equivalence() const;

  /// All related pairs (x, y) with x != y, in row-major order.
  std::vector<std::pair<Element, Element>> pairs() const;

  friend bool operator==(const QuasiOrder&, const QuasiOrder&) = default;

 private:
  QuasiOrder(std::size_t n, std::vector<char> rel) : n_(n), rel_(std::move(rel)) {}

  std::size_t n_ = 0;
  std::vector<char> rel_;
};

/// Classes of the induced equivalence, each sorted, ordered by least member.
std::vector<std::vector<Element>> es_classes(const QuasiOrder& s);

/// Least (x, y), x < y, with neither x <= y nor y <= x.
std::optional<std::pair<Element, Element>> has_incomparable_pair(const QuasiOrder& s);

}  // namespace ultra::qo
