#include "ultra/metric.hpp"

#include <algorithm>
#include <set>

#include "ultra/error.hpp"

namespace ultra {

DistanceSet::DistanceSet() : values_{Rational(0)} {}

DistanceSet DistanceSet::of(std::vector<Rational> values) {
  for (const auto& v : values) {
    if (v.is_negative()) {
      throw InputError("negative distance " + v.to_string());
    }
  }
  values.emplace_back(0);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  DistanceSet out;
  out.values_ = std::move(values);
  return out;
}

bool DistanceSet::contains(const Rational& r) const {
  return std::binary_search(values_.begin(), values_.end(), r);
}

std::vector<Rational> DistanceSet::positive() const {
  return {values_.begin() + 1, values_.end()};
}

DistanceSet DistanceSet::without(const Rational& r) const {
  DistanceSet out = *this;
  if (r.is_zero()) return out;
  auto it = std::lower_bound(out.values_.begin(), out.values_.end(), r);
  if (it != out.values_.end() && *it == r) out.values_.erase(it);
  return out;
}

bool DistanceSet::subset_of(const DistanceSet& other) const {
  return std::includes(other.values_.begin(), other.values_.end(),
                       values_.begin(), values_.end());
}

std::string DistanceSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ",";
    s += values_[i].to_string();
  }
  return s + "}";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kIdentity: return "identity";
    case ViolationKind::kPositivity: return "positivity";
    case ViolationKind::kSymmetry: return "symmetry";
    case ViolationKind::kTriangle: return "triangle";
    case ViolationKind::kUltrametric: return "ultrametric";
  }
  return "unknown";
}

std::string Violation::describe(const DistanceMatrix& d) const {
  auto cell = [&](std::size_t a, std::size_t b) {
    return "d[" + std::to_string(a) + "][" + std::to_string(b) + "]=" +
           d[a][b].to_string();
  };
  switch (kind) {
    case ViolationKind::kIdentity:
      return cell(i, i) + " is not 0";
    case ViolationKind::kPositivity:
      return cell(i, j) + " is not positive";
    case ViolationKind::kSymmetry:
      return cell(i, j) + " differs from " + cell(j, i);
    case ViolationKind::kTriangle:
      return cell(i, j) + " exceeds " + cell(i, k) + " + " + cell(k, j);
    case ViolationKind::kUltrametric:
      return cell(i, j) + " exceeds max(" + cell(i, k) + ", " + cell(k, j) + ")";
  }
  return {};
}

ValidationReport validate(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n == 0) throw InputError("distance matrix is empty");
  std::vector<Rational> entries;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) {
      throw InputError("distance matrix is not square: row " + std::to_string(i) +
                       " has " + std::to_string(d[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j].is_negative()) {
        throw InputError("negative entry at [" + std::to_string(i) + "][" +
                         std::to_string(j) + "]");
      }
      entries.push_back(d[i][j]);
    }
  }

  ValidationReport report;
  report.realized = DistanceSet::of(std::move(entries));
  bool axioms = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!d[i][i].is_zero()) {
      report.violations.push_back({ViolationKind::kIdentity, i, i, i});
      axioms = false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (d[i][j].is_zero()) {
        report.violations.push_back({ViolationKind::kPositivity, i, j, 0});
        axioms = false;
      }
      if (i < j && d[i][j] != d[j][i]) {
        report.violations.push_back({ViolationKind::kSymmetry, i, j, 0});
        axioms = false;
      }
    }
  }

  bool triangle = true;
  bool ultra = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const Rational& a = d[i][k];
        const Rational& b = d[k][j];
        if (d[i][j] > a + b) {
          report.violations.push_back({ViolationKind::kTriangle, i, j, k});
          triangle = false;
        } else if (d[i][j] > std::max(a, b)) {
          report.violations.push_back({ViolationKind::kUltrametric, i, j, k});
          ultra = false;
        }
      }
    }
  }
  report.is_metric = axioms && triangle;
  report.is_ultrametric = report.is_metric && ultra;
  return report;
}

FiniteMetric FiniteMetric::from_matrix(DistanceMatrix d, std::vector<std::string> names) {
  ValidationReport report = validate(d);
  if (!report.is_metric) {
    for (const auto& v : report.violations) {
      if (v.kind != ViolationKind::kUltrametric) {
        throw InputError(std::string("not a metric (") + to_string(v.kind) +
                         "): " + v.describe(d));
      }
    }
  }
  if (names.empty()) {
    for (std::size_t i = 0; i < d.size(); ++i) names.push_back(std::to_string(i));
  } else if (names.size() != d.size()) {
    throw InputError("point name count does not match matrix size");
  }
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    throw InputError("duplicate point name");
  }
  return FiniteMetric(std::move(d), std::move(names));
}

FiniteMetric FiniteMetric::restrict_to(std::span<const std::size_t> points) const {
  DistanceMatrix d(points.size(), std::vector<Rational>(points.size()));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (points[a] >= size()) throw InputError("point index out of range");
    names.push_back(names_[points[a]]);
    for (std::size_t b = 0; b < points.size(); ++b) d[a][b] = d_[points[a]][points[b]];
  }
  return FiniteMetric(std::move(d), std::move(names));
}

FiniteMetric FiniteMetric::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != size()) throw InputError("permutation size mismatch");
  return restrict_to(perm);
}

DistanceSet realized_distances(const FiniteMetric& m) {
  std::vector<Rational> entries;
  for (const auto& row : m.matrix()) entries.insert(entries.end(), row.begin(), row.end());
  return DistanceSet::of(std::move(entries));
}

bool is_well_spaced(const DistanceSet& a) {
  auto pos = a.positive();
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
    if (!(pos[i] + pos[i] < pos[i + 1])) return false;
  }
  return true;
}

TriangleAudit triangle_audit(const DistanceSet& a) {
  TriangleAudit audit;
  auto pos = a.positive();
  // Increasing loops visit triples in lexicographic order.
  for (std::size_t x = 0; x < pos.size(); ++x) {
    for (std::size_t y = x; y < pos.size(); ++y) {
      for (std::size_t z = y; z < pos.size(); ++z) {
        if (pos[z] > pos[x] + pos[y]) continue;
        if (pos[y] != pos[z]) {
          audit.all_isosceles = false;
          audit.witness = std::array<Rational, 3>{pos[x], pos[y], pos[z]};
          return audit;
        }
      }
    }
  }
  return audit;
}

}  // namespace ultra
