#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultra/rational.hpp"

namespace ultra {

/// Finite set of distances, strictly increasing, always containing 0.
class DistanceSet {
 public:
  DistanceSet();  // {0}

  /// Sorts and deduplicates `values` and inserts 0. Negative values are an
  /// InputError.
  static DistanceSet of(std::vector<Rational> values);

  std::span<const Rational> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool contains(const Rational& r) const;
  const Rational& max() const { return values_.back(); }

  /// Positive members only, increasing.
  std::vector<Rational> positive() const;

  DistanceSet without(const Rational& r) const;  // never removes 0
  bool subset_of(const DistanceSet& other) const;

  friend bool operator==(const DistanceSet&, const DistanceSet&) = default;

  std::string to_string() const;

 private:
  std::vector<Rational> values_;
};

using DistanceMatrix = std::vector<std::vector<Rational>>;

/// A validated finite metric space. Points carry display names that the
/// decision procedures ignore.
class FiniteMetric {
 public:
  /// Validates the metric axioms and throws InputError naming the first
  /// failing cell or triple. Empty `names` means "0".."n-1"; names must be
  /// distinct.
  static FiniteMetric from_matrix(DistanceMatrix d,
                                  std::vector<std::string> names = {});

  std::size_t size() const { return d_.size(); }
  const Rational& at(std::size_t i, std::size_t j) const { return d_[i][j]; }
  const DistanceMatrix& matrix() const { return d_; }
  const std::vector<std::string>& names() const { return names_; }

  /// Subspace on the given point indices, in the given order.
  FiniteMetric restrict_to(std::span<const std::size_t> points) const;

  /// Same space with points reordered: new point i is old point perm[i].
  FiniteMetric permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const FiniteMetric&, const FiniteMetric&) = default;

 private:
  FiniteMetric(DistanceMatrix d, std::vector<std::string> names)
      : d_(std::move(d)), names_(std::move(names)) {}

  DistanceMatrix d_;
  std::vector<std::string> names_;
};

enum class ViolationKind { kIdentity, kPositivity, kSymmetry, kTriangle, kUltrametric };

const char* to_string(ViolationKind kind);

/// One failed axiom. For kIdentity only i is meaningful; for kPositivity and
/// kSymmetry the cell (i, j); for the inequalities, d(i,j) exceeds the bound
/// formed through k.
struct Violation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  std::string describe(const DistanceMatrix& d) const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool is_metric = false;
  bool is_ultrametric = false;
  std::vector<Violation> violations;
  DistanceSet realized;
};

/// Checks a square candidate matrix of non-negative rationals. Non-square
/// input or a negative entry is an InputError.
ValidationReport validate(const DistanceMatrix& d);

/// Every matrix entry together with 0.
DistanceSet realized_distances(const FiniteMetric& m);

/// True when consecutive positive values r < r' always satisfy 2r < r'.
bool is_well_spaced(const DistanceSet& a);

struct TriangleAudit {
  bool all_isosceles = true;
  /// Lexicographically least (r1 <= r2 <= r3) with r3 <= r1 + r2 and r2 < r3.
  std::optional<std::array<Rational, 3>> witness;
};

/// Enumerates every triangle shape with side lengths in `a` and reports
/// whether each has its two longest sides equal.
TriangleAudit triangle_audit(const DistanceSet& a);

}  // namespace ultra
