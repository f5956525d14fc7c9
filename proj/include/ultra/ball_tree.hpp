#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ultra/error.hpp"
#include "ultra/metric.hpp"
#include "ultra/rational.hpp"

namespace ultra {

/// Opaque, totally ordered byte string. Two ball trees have equal codes
/// exactly when their spaces are isometric.
class CanonCode {
 public:
  CanonCode() = default;
  explicit CanonCode(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  std::string hex() const;

  friend bool operator==(const CanonCode&, const CanonCode&) = default;
  friend std::strong_ordering operator<=>(const CanonCode& a, const CanonCode& b) {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

 private:
  std::string bytes_;
};

/// Hierarchical form of a finite ultrametric space. A leaf is a point; an
/// internal node is a ball whose label is its diameter, and the distance of
/// two points is the label of their least common ancestor.
///
/// Internal nodes have at least two children, child labels are strictly
/// smaller than the parent's, and children are kept sorted by CanonCode, so
/// the representation of a space is unique up to point names.
class BallTree {
 public:
  static BallTree leaf(std::string point);

  /// Throws PreconditionError when fewer than two children are given, the
  /// label is not positive, or some child label is not below `label`.
  static BallTree internal(Rational label, std::vector<BallTree> children);

  bool is_leaf() const { return children_.empty(); }
  /// Zero for a leaf.
  const Rational& label() const { return label_; }
  std::span<const BallTree> children() const { return children_; }
  /// Point name; empty for internal nodes.
  const std::string& point() const { return point_; }
  /// Number of points (leaves).
  std::size_t size() const { return size_; }
  const CanonCode& code() const { return code_; }

  /// Point names in depth-first order, which is also the point order of
  /// from_ball_tree.
  std::vector<std::string> points() const;

 private:
  BallTree() = default;

  Rational label_;
  std::string point_;
  std::vector<BallTree> children_;
  std::size_t size_ = 1;
  CanonCode code_;
};

/// Raised by to_ball_tree on a metric that is not an ultrametric.
class NotUltrametricError : public PreconditionError {
 public:
  NotUltrametricError(const std::string& what, std::array<std::size_t, 3> witness)
      : PreconditionError(what), witness_(witness) {}

  /// (i, j, k) with d(i,j) > max(d(i,k), d(k,j)).
  const std::array<std::size_t, 3>& witness() const { return witness_; }

 private:
  std::array<std::size_t, 3> witness_;
};

BallTree to_ball_tree(const FiniteMetric& u);
FiniteMetric from_ball_tree(const BallTree& t);

inline const CanonCode& canonical_code(const BallTree& t) { return t.code(); }
inline bool isometric(const BallTree& a, const BallTree& b) { return a.code() == b.code(); }

/// True when the points of `a` admit a distance-preserving injection into
/// the points of `b`.
bool embeds(const BallTree& a, const BallTree& b);

/// U(D): the space on D with d(r, r') = max(r, r'). Points are named by
/// their distance value.
BallTree canonical_space_of(const DistanceSet& d);

DistanceSet realized_distances(const BallTree& t);

inline constexpr std::size_t kDefaultBruteBound = 8;

/// Exhaustive search for a distance-preserving bijection. Works for any
/// metric. Throws LimitError when either space exceeds `bound` points.
bool brute_isometric(const FiniteMetric& a, const FiniteMetric& b,
                     std::size_t bound = kDefaultBruteBound);

/// Exhaustive search for a distance-preserving injection of `a` into `b`.
bool brute_embeds(const FiniteMetric& a, const FiniteMetric& b,
                  std::size_t bound = kDefaultBruteBound);

}  // namespace ultra
