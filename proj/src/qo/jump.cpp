#include "ultra/jump.hpp"

#include <algorithm>
#include <limits>

#include "ultra/error.hpp"
#include "ultra/matching.hpp"

namespace ultra::qo {

Multiplicity Multiplicity::finite(std::uint64_t n) {
  if (n == 0) throw InputError("multiplicity must be positive");
  return Multiplicity(n, false);
}

Multiplicity Multiplicity::operator+(const Multiplicity& o) const {
  if (omega_ || o.omega_) return omega();
  return finite(count_ + o.count_);
}

std::string Multiplicity::to_string() const {
  return omega_ ? "omega" : std::to_string(count_);
}

Count Count::of(const std::optional<Multiplicity>& m) {
  Count c;
  if (m) c += *m;
  return c;
}

Count& Count::operator+=(const Multiplicity& m) {
  if (m.is_omega()) {
    omega = true;
    finite = 0;
  } else if (!omega) {
    finite += m.count();
  }
  return *this;
}

std::string Count::to_string() const { return omega ? "omega" : std::to_string(finite); }

OmegaMultiset::OmegaMultiset(QuasiOrder base, std::map<Element, Multiplicity> mults)
    : base_(std::move(base)), mults_(std::move(mults)) {
  check();
  if (mults_.empty()) throw InputError("multiset support must be nonempty");
}

OmegaMultiset OmegaMultiset::allowing_empty(QuasiOrder base,
                                            std::map<Element, Multiplicity> mults) {
  OmegaMultiset m;
  m.base_ = std::move(base);
  m.mults_ = std::move(mults);
  m.check();
  return m;
}

void OmegaMultiset::check() const {
  for (const auto& [x, m] : mults_) {
    if (x >= base_.size()) {
      throw InputError("multiset element " + std::to_string(x) +
                       " outside carrier of size " + std::to_string(base_.size()));
    }
  }
}

std::vector<Element> OmegaMultiset::support() const {
  std::vector<Element> out;
  for (const auto& [x, m] : mults_) out.push_back(x);
  return out;
}

std::optional<Multiplicity> OmegaMultiset::mult(Element x) const {
  auto it = mults_.find(x);
  if (it == mults_.end()) return std::nullopt;
  return it->second;
}

bool OmegaMultiset::is_omega_total() const {
  return std::any_of(mults_.begin(), mults_.end(),
                     [](const auto& kv) { return kv.second.is_omega(); });
}

Count OmegaMultiset::class_count(Element x) const {
  Count c;
  for (const auto& [y, m] : mults_) {
    if (base_.equivalent(x, y)) c += m;
  }
  return c;
}

OmegaMultiset OmegaMultiset::restricted_to(const std::vector<Element>& elements) const {
  std::map<Element, Multiplicity> kept;
  for (Element x : elements) {
    if (auto m = mult(x)) kept.emplace(x, *m);
  }
  return allowing_empty(base_, std::move(kept));
}

OmegaMultiset OmegaMultiset::saturated() const {
  std::map<Element, Multiplicity> all;
  for (const auto& [x, m] : mults_) all.emplace(x, Multiplicity::omega());
  return allowing_empty(base_, std::move(all));
}

namespace {

void same_base(const OmegaMultiset& a, const OmegaMultiset& b) {
  if (!(a.base() == b.base())) throw InputError("multisets are over different quasi-orders");
}

// Residual-graph max flow with DFS augmentation. Instances are tiny.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t n) : cap_(n, std::vector<std::uint64_t>(n, 0)) {}

  void add(std::size_t u, std::size_t v, std::uint64_t c) { cap_[u][v] += c; }

  std::uint64_t run(std::size_t s, std::size_t t) {
    orig_ = cap_;
    std::uint64_t total = 0;
    while (true) {
      seen_.assign(cap_.size(), 0);
      std::uint64_t pushed = push(s, t, std::numeric_limits<std::uint64_t>::max());
      if (pushed == 0) break;
      total += pushed;
    }
    return total;
  }

  /// Net flow sent along the original edge u -> v.
  std::uint64_t flow(std::size_t u, std::size_t v) const {
    return orig_[u][v] > cap_[u][v] ? orig_[u][v] - cap_[u][v] : 0;
  }

 private:
  std::uint64_t push(std::size_t u, std::size_t t, std::uint64_t limit) {
    if (u == t) return limit;
    seen_[u] = 1;
    for (std::size_t v = 0; v < cap_.size(); ++v) {
      if (seen_[v] || cap_[u][v] == 0) continue;
      std::uint64_t got = push(v, t, std::min(limit, cap_[u][v]));
      if (got > 0) {
        cap_[u][v] -= got;
        cap_[v][u] += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::uint64_t>> cap_;
  std::vector<std::vector<std::uint64_t>> orig_;
  std::vector<char> seen_;
};

InjResult inj_le_unchecked(const OmegaMultiset& a, const OmegaMultiset& b) {
  const QuasiOrder& s = a.base();
  Witness w;

  // An omega demand needs an omega supply above it; an omega supply splits
  // into infinitely many infinite pieces, so any number of demands fit.
  for (const auto& [x, m] : a.mults()) {
    if (!m.is_omega()) continue;
    bool found = false;
    for (const auto& [y, n] : b.mults()) {
      if (n.is_omega() && s.le(x, y)) {
        w.emplace(std::make_pair(x, y), Multiplicity::omega());
        found = true;
        break;
      }
    }
    if (!found) return {};
  }

  std::vector<std::pair<Element, std::uint64_t>> demand;
  std::uint64_t total = 0;
  for (const auto& [x, m] : a.mults()) {
    if (!m.is_omega()) {
      demand.emplace_back(x, m.count());
      total += m.count();
    }
  }
  std::vector<std::pair<Element, Multiplicity>> supply(b.mults().begin(), b.mults().end());

  // Nodes: 0 source, 1 sink, then demands, then supplies.
  const std::size_t base = 2;
  const std::size_t off = base + demand.size();
  MaxFlow net(off + supply.size());
  for (std::size_t i = 0; i < demand.size(); ++i) {
    net.add(0, base + i, demand[i].second);
    for (std::size_t j = 0; j < supply.size(); ++j) {
      if (s.le(demand[i].first, supply[j].first)) net.add(base + i, off + j, total);
    }
  }
  for (std::size_t j = 0; j < supply.size(); ++j) {
    const Multiplicity& m = supply[j].second;
    net.add(off + j, 1, m.is_omega() ? total + 1 : m.count());
  }
  if (net.run(0, 1) != total) return {};

  for (std::size_t i = 0; i < demand.size(); ++i) {
    for (std::size_t j = 0; j < supply.size(); ++j) {
      if (std::uint64_t f = net.flow(base + i, off + j); f > 0) {
        w.emplace(std::make_pair(demand[i].first, supply[j].first), Multiplicity::finite(f));
      }
    }
  }
  return {true, std::move(w)};
}

std::vector<Element> difference(const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<Element>& sorted, Element x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

bool witness_valid(const Witness& w, const OmegaMultiset& a, const OmegaMultiset& b) {
  std::map<Element, Count> rows;
  std::map<Element, Count> cols;
  for (const auto& [pair, m] : w) {
    auto [x, y] = pair;
    if (!a.mult(x) || !b.mult(y) || !a.base().le(x, y)) return false;
    rows[x] += m;
    cols[y] += m;
  }
  for (const auto& [x, m] : a.mults()) {
    if (!(rows[x] == Count::of(m))) return false;
  }
  for (const auto& [y, c] : cols) {
    if (!(c <= Count::of(b.mult(y)))) return false;
  }
  return true;
}

bool cf_le(const OmegaMultiset& a, const OmegaMultiset& b) {
  same_base(a, b);
  const QuasiOrder& s = a.base();
  for (const auto& [x, m] : a.mults()) {
    bool below = std::any_of(b.mults().begin(), b.mults().end(),
                             [&](const auto& kv) { return s.le(x, kv.first); });
    if (!below) return false;
  }
  return true;
}

InjResult inj_le(const OmegaMultiset& a, const OmegaMultiset& b) {
  same_base(a, b);
  return inj_le_unchecked(a, b);
}

IterationTrace iterate_levels(const OmegaMultiset& a) {
  const QuasiOrder& s = a.base();
  IterationTrace trace;
  trace.levels.push_back(a.support());
  while (true) {
    const auto& cur = trace.levels.back();
    std::vector<Element> next;
    for (Element x : cur) {
      bool keep = std::any_of(cur.begin(), cur.end(), [&](Element y) {
        return s.le(x, y) && a.mult(y)->is_omega();
      });
      if (keep) next.push_back(x);
    }
    bool stable = next == cur;
    trace.levels.push_back(std::move(next));
    if (stable) break;
  }
  trace.rho = trace.levels.size() - 2;
  trace.core = trace.levels[trace.rho];
  return trace;
}

bool einj_char(const OmegaMultiset& a, const OmegaMultiset& b) {
  same_base(a, b);
  const QuasiOrder& s = a.base();
  const IterationTrace ta = iterate_levels(a);
  const std::size_t rho = ta.rho;

  // Rank: b's levels must keep shrinking through rho and stop exactly there.
  const IterationTrace tb = iterate_levels(b);
  auto level_b = [&](std::size_t k) -> const std::vector<Element>& {
    return tb.levels[std::min(k, tb.levels.size() - 1)];
  };
  for (std::size_t k = 0; k < rho; ++k) {
    if (level_b(k) == level_b(k + 1)) return false;
  }
  if (level_b(rho) != level_b(rho + 1)) return false;

  // Off the core, every class has the same (finite) total on both sides.
  for (Element x : difference(ta.levels[0], ta.core)) {
    if (!(a.class_count(x) == b.class_count(x))) return false;
  }
  for (Element y : difference(tb.levels[0], tb.core)) {
    if (!(b.class_count(y) == a.class_count(y))) return false;
  }

  // The cores are mutually cofinal.
  auto cofinal = [&](const std::vector<Element>& from, const std::vector<Element>& to) {
    return std::all_of(from.begin(), from.end(), [&](Element x) {
      return std::any_of(to.begin(), to.end(), [&](Element y) { return s.le(x, y); });
    });
  };
  return cofinal(ta.core, tb.core) && cofinal(tb.core, ta.core);
}

bool wqo_inj_le(const OmegaMultiset& a, const OmegaMultiset& b) {
  same_base(a, b);
  const QuasiOrder& s = a.base();

  // F: elements of b whose upper cone in b is finite; K: the rest.
  std::vector<Element> finite_cone;
  std::vector<Element> infinite_cone;
  for (const auto& [y, m] : b.mults()) {
    bool infinite = std::any_of(b.mults().begin(), b.mults().end(), [&](const auto& kv) {
      return kv.second.is_omega() && s.le(y, kv.first);
    });
    (infinite ? infinite_cone : finite_cone).push_back(y);
  }

  // Positions of a outside K_{a,b} must be finitely many and inject into F.
  std::vector<Element> rest;
  for (const auto& [x, m] : a.mults()) {
    bool in_k = std::any_of(infinite_cone.begin(), infinite_cone.end(),
                            [&](Element y) { return s.le(x, y); });
    if (in_k) continue;
    if (m.is_omega()) return false;
    rest.insert(rest.end(), m.count(), x);
  }
  std::vector<Element> slots;
  for (Element y : finite_cone) slots.insert(slots.end(), b.mult(y)->count(), y);
  return saturates_left(rest.size(), slots.size(),
                        [&](std::size_t i, std::size_t j) { return s.le(rest[i], slots[j]); });
}

bool equiv_inj_le(const OmegaMultiset& a, const OmegaMultiset& b) {
  same_base(a, b);
  if (!a.base().is_equivalence()) {
    throw PreconditionError("base relation is not an equivalence");
  }
  for (const auto& [x, m] : a.mults()) {
    if (!(a.class_count(x) <= b.class_count(x))) return false;
  }
  return true;
}

std::optional<Witness> level_respecting_witness(const OmegaMultiset& a,
                                                const OmegaMultiset& b) {
  same_base(a, b);
  const IterationTrace ta = iterate_levels(a);
  const IterationTrace tb = iterate_levels(b);
  if (ta.rho != tb.rho) return std::nullopt;
  Witness w;
  auto merge = [&](const std::vector<Element>& sa, const std::vector<Element>& sb) {
    InjResult r = inj_le_unchecked(a.restricted_to(sa), b.restricted_to(sb));
    if (!r.holds) return false;
    w.insert(r.witness->begin(), r.witness->end());
    return true;
  };
  for (std::size_t k = 0; k < ta.rho; ++k) {
    if (!merge(difference(ta.levels[k], ta.levels[k + 1]),
               difference(tb.levels[k], tb.levels[k + 1]))) {
      return std::nullopt;
    }
  }
  if (!merge(ta.core, tb.core)) return std::nullopt;
  return w;
}

bool witness_respects_levels(const Witness& w, const IterationTrace& ta,
                             const IterationTrace& tb) {
  auto depth = [](const IterationTrace& t, Element x) {
    std::size_t k = 0;
    while (k + 1 < t.levels.size() && contains(t.levels[k + 1], x)) ++k;
    return k;  // x lies in I_k \ I_{k+1}, or in the core when k >= rho
  };
  for (const auto& [pair, m] : w) {
    std::size_t dx = std::min(depth(ta, pair.first), ta.rho);
    std::size_t dy = std::min(depth(tb, pair.second), tb.rho);
    if (dx != dy) return false;
  }
  return true;
}

}  // namespace ultra::qo
