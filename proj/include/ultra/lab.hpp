#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ultra/ball_tree.hpp"
#include "ultra/io.hpp"
#include "ultra/jump.hpp"
#include "ultra/reductions.hpp"

namespace ultra::lab {

using Seed = std::uint64_t;

/// Sub-seed of trial `index`; campaigns are order-independent because each
/// trial draws only from its own sub-seed.
Seed mix_seed(Seed seed, std::uint64_t index);

/// Deterministic generator. Draws are portable: only the raw 64-bit
/// mt19937_64 stream is used, never library distributions.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability p (0 <= p <= 1).
  bool chance(const Rational& p);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

/// Size uniform in [1, max_nodes]; each node's parent uniform among earlier
/// nodes.
reduce::RootedTree gen_tree(Rng& rng, std::size_t max_nodes);
reduce::RootedTree gen_tree(Seed seed, std::size_t max_nodes);

/// Random ball tree with labels from the positive part of D. |D| >= 2.
BallTree gen_ball_tree(Rng& rng, const DistanceSet& d, std::size_t max_leaves);
BallTree gen_ball_tree(Seed seed, const DistanceSet& d, std::size_t max_leaves);

/// `count` distinct positive rationals with small numerators and
/// denominators in {1, 2, 4}.
DistanceSet gen_distance_set(Rng& rng, std::size_t count);

/// Closure of a random relation in which each ordered pair appears with
/// probability `density`. With `collapse`, a few pairs are also reversed so
/// that nontrivial equivalence classes appear.
qo::QuasiOrder gen_qo(Rng& rng, std::size_t n, const Rational& density, bool collapse = false);
qo::QuasiOrder gen_qo(Seed seed, std::size_t n, const Rational& density, bool collapse = false);

/// Random equivalence relation (uniformly random class labels).
qo::QuasiOrder gen_equivalence(Rng& rng, std::size_t n);

/// Nonempty support of size at most max_support; multiplicities in {1,2,3}
/// or omega with probability omega_prob. `force_omega` guarantees at least
/// one omega (a genuine omega-sequence).
qo::OmegaMultiset gen_multiset(Rng& rng, const qo::QuasiOrder& s, std::size_t max_support,
                               const Rational& omega_prob, bool force_omega = false);
qo::OmegaMultiset gen_multiset(Seed seed, const qo::QuasiOrder& s, std::size_t max_support,
                               const Rational& omega_prob, bool force_omega = false);

/// Each edge present with probability 1/2; size uniform in [1, max_vertices].
reduce::Graph gen_graph(Rng& rng, std::size_t max_vertices);

/// Isomorphic copy with nodes renumbered in a random breadth-first order.
reduce::RootedTree relabeled(Rng& rng, const reduce::RootedTree& t);

enum class Mutation { kRelabel, kEdit };

template <class T>
struct MutatedPair {
  T original;
  T mutated;
  Mutation kind;
};

/// Relabels (an isomorphic copy) or applies a small structural edit, chosen
/// at random. Edits keep sizes within `max_size` where given.
MutatedPair<reduce::RootedTree> mutate_pair(Rng& rng, const reduce::RootedTree& t,
                                            std::size_t max_size);
/// Works on the matrix of an ultrametric: relabeling permutes points, edits
/// drop a point, add a point, or change one ball's diameter to another
/// member of D. Result stays an ultrametric with distances in D.
MutatedPair<FiniteMetric> mutate_pair(Rng& rng, const FiniteMetric& u, const DistanceSet& d,
                                      std::size_t max_size);
MutatedPair<reduce::Graph> mutate_pair(Rng& rng, const reduce::Graph& g, std::size_t max_size);
/// Relabeling swaps elements for equivalent ones; edits change one
/// multiplicity or add/drop an element.
MutatedPair<qo::OmegaMultiset> mutate_pair(Rng& rng, const qo::OmegaMultiset& m);

/// Size knobs shared by all properties. Unset fields take the property's own
/// default.
struct Bounds {
  std::optional<std::size_t> max_nodes;
  std::optional<std::size_t> max_points;
  std::optional<std::size_t> max_support;
};

struct TrialResult {
  bool ok = true;
  io::Json inputs;
  std::string expected;
  std::string got;
  /// For relational properties: whether the instance was a positive one.
  std::optional<bool> positive;
  std::vector<std::string> tags;
};

using PropertyFn = std::function<TrialResult(Rng&, const Bounds&)>;

struct Failure {
  std::uint64_t trial;
  Seed trial_seed;
  io::Json inputs;
  std::string expected;
  std::string got;
};

struct CampaignReport {
  std::string property;
  std::uint64_t trials = 0;
  Seed seed = 0;
  std::vector<Failure> failures;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  std::map<std::string, std::uint64_t> counters;
  double elapsed_ms = 0;
  bool pass() const { return failures.empty(); }
};

io::Json to_json(const CampaignReport& r, bool with_timing = true);

class Registry {
 public:
  /// Registry holding every named property.
  static Registry standard();

  void add(std::string name, PropertyFn fn);
  bool contains(const std::string& name) const { return props_.count(name) > 0; }
  const PropertyFn& get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, PropertyFn> props_;
};

/// Runs `trials` trials of a property, trial i drawing from
/// mix_seed(seed, i). With threads > 1 the trial range is split into
/// contiguous partitions whose results are merged in trial order. Unknown
/// names throw InputError.
CampaignReport run_campaign(const Registry& registry, const std::string& property,
                            std::uint64_t trials, Seed seed, const Bounds& bounds = {},
                            unsigned threads = 1);

/// Re-runs a single trial from its recorded sub-seed.
TrialResult replay_trial(const Registry& registry, const std::string& property,
                         Seed trial_seed, const Bounds& bounds = {});

/// theta-iso with a caller-supplied theta; used to confirm that a broken
/// construction is caught.
using ThetaFn = std::function<BallTree(const reduce::RootedTree&, std::span<const Rational>)>;
PropertyFn make_theta_iso(ThetaFn theta);

struct ExhaustiveReport {
  std::uint64_t cases = 0;
  std::uint64_t positives = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

/// Every ultrametric matrix on up to `max_points` points with distances in
/// `labels`, all ordered pairs: code equality against brute isometry.
ExhaustiveReport exhaustive_canon_vs_brute(const std::vector<Rational>& labels,
                                           std::size_t max_points);

/// All subset pairs of a positive distance set: X within Y against
/// embeddability of U(X u {0}) into U(Y u {0}).
ExhaustiveReport exhaustive_powerset_embed(const std::vector<Rational>& positives);

/// Every A within {1/4, ..., 12/4} with |A| <= max_size: triangle audit
/// against well-spacedness.
ExhaustiveReport exhaustive_triangle_wellspaced(std::size_t max_size);

}  // namespace ultra::lab
