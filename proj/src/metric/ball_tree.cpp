#include "ultra/ball_tree.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "ultra/matching.hpp"

namespace ultra {
namespace {

void append_int64(std::string& out, std::int64_t v) {
  // Offset binary keeps the byte order consistent with signed order.
  auto u = static_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << 63);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((u >> shift) & 0xff));
  }
}

}  // namespace

std::string CanonCode::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

BallTree BallTree::leaf(std::string point) {
  BallTree t;
  t.point_ = std::move(point);
  t.code_ = CanonCode("L");
  return t;
}

BallTree BallTree::internal(Rational label, std::vector<BallTree> children) {
  if (children.size() < 2) {
    throw PreconditionError("ball tree internal node needs at least two children");
  }
  if (!label.is_positive()) {
    throw PreconditionError("ball tree label must be positive, got " + label.to_string());
  }
  for (const auto& c : children) {
    if (!c.is_leaf() && !(c.label() < label)) {
      throw PreconditionError("ball tree child label " + c.label().to_string() +
                              " is not below parent label " + label.to_string());
    }
  }
  std::stable_sort(children.begin(), children.end(),
                   [](const BallTree& a, const BallTree& b) { return a.code() < b.code(); });

  BallTree t;
  t.label_ = label;
  t.size_ = 0;
  std::string code = "(";
  append_int64(code, label.numerator());
  append_int64(code, label.denominator());
  for (const auto& c : children) {
    t.size_ += c.size();
    code += c.code().bytes();
  }
  code += ")";
  t.code_ = CanonCode(std::move(code));
  t.children_ = std::move(children);
  return t;
}

std::vector<std::string> BallTree::points() const {
  std::vector<std::string> out;
  std::vector<const BallTree*> stack{this};
  while (!stack.empty()) {
    const BallTree* t = stack.back();
    stack.pop_back();
    if (t->is_leaf()) {
      out.push_back(t->point());
      continue;
    }
    for (auto it = t->children_.rbegin(); it != t->children_.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

namespace {

BallTree build(const FiniteMetric& u, const std::vector<std::size_t>& pts) {
  if (pts.size() == 1) return BallTree::leaf(u.names()[pts[0]]);
  Rational diameter;
  for (std::size_t a : pts) {
    for (std::size_t b : pts) diameter = std::max(diameter, u.at(a, b));
  }
  // In an ultrametric, "closer than the diameter" is an equivalence.
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t p : pts) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return u.at(c.front(), p) < diameter; });
    if (it == classes.end()) {
      classes.push_back({p});
    } else {
      it->push_back(p);
    }
  }
  std::vector<BallTree> children;
  children.reserve(classes.size());
  for (const auto& c : classes) children.push_back(build(u, c));
  return BallTree::internal(diameter, std::move(children));
}

void fill(const BallTree& t, std::size_t offset, DistanceMatrix& d) {
  if (t.is_leaf()) return;
  std::size_t start = offset;
  for (const auto& c : t.children()) {
    fill(c, start, d);
    std::size_t end = start + c.size();
    for (std::size_t i = start; i < end; ++i) {
      for (std::size_t j = offset; j < offset + t.size(); ++j) {
        if (j < start || j >= end) {
          d[i][j] = t.label();
          d[j][i] = t.label();
        }
      }
    }
    start = end;
  }
}

class Embedder {
 public:
  // Does `a` embed into the ball `v` (at any depth below it)?
  bool into_subtree(const BallTree& a, const BallTree& v) {
    if (a.is_leaf()) return true;
    if (v.is_leaf() || a.size() > v.size() || v.label() < a.label()) return false;
    auto key = std::make_pair(&a, &v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    if (v.label() == a.label()) {
      auto ac = a.children();
      auto vc = v.children();
      result = saturates_left(ac.size(), vc.size(), [&](std::size_t i, std::size_t j) {
        return into_subtree(ac[i], vc[j]);
      });
    }
    if (!result) {
      for (const auto& w : v.children()) {
        if (into_subtree(a, w)) {
          result = true;
          break;
        }
      }
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  std::map<std::pair<const BallTree*, const BallTree*>, bool> memo_;
};

void collect_labels(const BallTree& t, std::vector<Rational>& out) {
  if (t.is_leaf()) return;
  out.push_back(t.label());
  for (const auto& c : t.children()) collect_labels(c, out);
}

}  // namespace

BallTree to_ball_tree(const FiniteMetric& u) {
  ValidationReport report = validate(u.matrix());
  if (!report.is_ultrametric) {
    for (const auto& v : report.violations) {
      if (v.kind == ViolationKind::kUltrametric) {
        throw NotUltrametricError("not an ultrametric: " + v.describe(u.matrix()),
                                  {v.i, v.j, v.k});
      }
    }
    throw PreconditionError("not a metric");
  }
  std::vector<std::size_t> all(u.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return build(u, all);
}

FiniteMetric from_ball_tree(const BallTree& t) {
  DistanceMatrix d(t.size(), std::vector<Rational>(t.size()));
  fill(t, 0, d);
  return FiniteMetric::from_matrix(std::move(d), t.points());
}

bool embeds(const BallTree& a, const BallTree& b) {
  Embedder e;
  return e.into_subtree(a, b);
}

BallTree canonical_space_of(const DistanceSet& d) {
  auto values = d.values();
  BallTree t = BallTree::leaf(values[0].to_string());
  for (std::size_t i = 1; i < values.size(); ++i) {
    std::vector<BallTree> kids;
    kids.push_back(std::move(t));
    kids.push_back(BallTree::leaf(values[i].to_string()));
    t = BallTree::internal(values[i], std::move(kids));
  }
  return t;
}

DistanceSet realized_distances(const BallTree& t) {
  std::vector<Rational> labels;
  collect_labels(t, labels);
  return DistanceSet::of(std::move(labels));
}

}  // namespace ultra
