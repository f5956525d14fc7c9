#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultra/quasi_order.hpp"

namespace ultra::qo {

/// A positive count or omega. Zero is not representable.
class Multiplicity {
 public:
  static Multiplicity finite(std::uint64_t n);
  static Multiplicity omega() { return Multiplicity(0, true); }

  bool is_omega() const { return omega_; }
  /// Meaningless for omega.
  std::uint64_t count() const { return count_; }

  /// finite + omega = omega.
  Multiplicity operator+(const Multiplicity& o) const;

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

  std::string to_string() const;

 private:
  Multiplicity(std::uint64_t n, bool omega) : count_(n), omega_(omega) {}
  std::uint64_t count_;
  bool omega_;
};

/// Total count of something that may be absent: 0, a positive integer, or
/// omega. Ordered with every finite count below omega.
struct Count {
  /// Kept at 0 once omega is set, so equality is exact.
  std::uint64_t finite = 0;
  bool omega = false;

  static Count of(const std::optional<Multiplicity>& m);
  Count& operator+=(const Multiplicity& m);
  friend bool operator==(const Count&, const Count&) = default;
  friend bool operator<=(const Count& a, const Count& b) {
    if (b.omega) return true;
    if (a.omega) return false;
    return a.finite <= b.finite;
  }
  std::string to_string() const;
};

/// An omega-sequence over a finite quasi-order, taken up to reordering:
/// each element of the carrier occurs a finite number of times, infinitely
/// often (omega), or not at all.
class OmegaMultiset {
 public:
  /// Throws InputError on an empty support or an element outside the base.
  OmegaMultiset(QuasiOrder base, std::map<Element, Multiplicity> mults);

  /// Same, but an empty support is allowed. Used for level slices.
  static OmegaMultiset allowing_empty(QuasiOrder base, std::map<Element, Multiplicity> mults);

  const QuasiOrder& base() const { return base_; }
  const std::map<Element, Multiplicity>& mults() const { return mults_; }
  std::vector<Element> support() const;
  std::optional<Multiplicity> mult(Element x) const;
  bool empty() const { return mults_.empty(); }

  /// True when some multiplicity is omega (a genuine omega-sequence).
  bool is_omega_total() const;

  /// Total multiplicity of the elements equivalent to x.
  Count class_count(Element x) const;

  /// Keeps only the listed elements; may become empty.
  OmegaMultiset restricted_to(const std::vector<Element>& elements) const;

  /// Every multiplicity replaced by omega.
  OmegaMultiset saturated() const;

  friend bool operator==(const OmegaMultiset&, const OmegaMultiset&) = default;

 private:
  OmegaMultiset() = default;
  void check() const;

  QuasiOrder base_ = QuasiOrder::closure(1, {});
  std::map<Element, Multiplicity> mults_;
};

/// An injective position map, aggregated per element pair: how many
/// positions of x in the source go to positions of y in the target.
using Witness = std::map<std::pair<Element, Element>, Multiplicity>;

/// Row sums match the source multiplicities, column sums fit the target
/// multiplicities, and every used pair is related.
bool witness_valid(const Witness& w, const OmegaMultiset& a, const OmegaMultiset& b);

struct InjResult {
  bool holds = false;
  std::optional<Witness> witness;
};

/// Support-level check: every element of a lies below some element of b.
bool cf_le(const OmegaMultiset& a, const OmegaMultiset& b);

/// Injective comparison decided by max-flow. Returns a witness when it holds.
InjResult inj_le(const OmegaMultiset& a, const OmegaMultiset& b);

/// Decreasing sets I_0 = support, I_{k+1} = elements of I_k with some
/// omega element of I_k above them, up to the first repetition.
struct IterationTrace {
  /// I_0, ..., I_{rho+1}; the last two are equal.
  std::vector<std::vector<Element>> levels;
  std::size_t rho = 0;
  std::vector<Element> core;
};

IterationTrace iterate_levels(const OmegaMultiset& a);

/// Mutual injective comparability decided by the level/count
/// characterization (rank, class counts off the core, cofinal cores).
bool einj_char(const OmegaMultiset& a, const OmegaMultiset& b);

/// Injective comparison decided by the finite/infinite upper-cone split:
/// elements of a below an infinitely-supported part of b are free, the rest
/// must match injectively into the finitely-supported part.
bool wqo_inj_le(const OmegaMultiset& a, const OmegaMultiset& b);

/// Injective comparison for an equivalence base, by comparing class totals.
/// Throws PreconditionError on a non-symmetric base.
bool equiv_inj_le(const OmegaMultiset& a, const OmegaMultiset& b);

/// A witness for a <= b that maps each level difference I_k \ I_{k+1} of a
/// into the same difference of b and core into core, built by one flow per
/// level. Empty when no such witness exists.
std::optional<Witness> level_respecting_witness(const OmegaMultiset& a, const OmegaMultiset& b);

/// Checks that every pair used by `w` stays within corresponding levels.
bool witness_respects_levels(const Witness& w, const IterationTrace& ta,
                             const IterationTrace& tb);

}  // namespace ultra::qo
