#include <doctest.h>

#include "oracles.hpp"
#include "ultra/error.hpp"
#include "ultra/metric.hpp"

using ultra::DistanceMatrix;
using ultra::DistanceSet;
using ultra::FiniteMetric;
using ultra::Rational;
using ultra::ViolationKind;

namespace {

DistanceMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  DistanceMatrix m;
  for (const auto& row : rows) m.emplace_back(row);
  return m;
}

}  // namespace

TEST_CASE("distance sets are sorted, deduplicated and contain 0") {
  const DistanceSet d = DistanceSet::of({3, 1, 3, Rational(1, 2)});
  CHECK(d.to_string() == "{0,1/2,1,3}");
  CHECK(d.max() == Rational(3));
  CHECK(d.positive().size() == 3);
  CHECK(d.without(3).to_string() == "{0,1/2,1}");
  CHECK(d.without(0) == d);
  CHECK(DistanceSet::of({1}).subset_of(d));
  CHECK_FALSE(DistanceSet::of({2}).subset_of(d));
  CHECK_THROWS_AS(DistanceSet::of({-1}), ultra::InputError);
}

TEST_CASE("validate: two-point space") {
  const auto r = ultra::validate(mat({{0, 1}, {1, 0}}));
  CHECK(r.is_metric);
  CHECK(r.is_ultrametric);
  CHECK(r.violations.empty());
  CHECK(r.realized == DistanceSet::of({0, 1}));
}

TEST_CASE("validate: the max-formula space on {0,1,2} is an ultrametric") {
  CHECK(ultra::validate(mat({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}})).is_ultrametric);
  CHECK(ultra::validate(oracle::max_formula({0, 1, 2})).is_ultrametric);
}

TEST_CASE("validate: the 1-1-2 path is metric but not ultrametric") {
  const auto r = ultra::validate(mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  CHECK(r.is_metric);
  CHECK_FALSE(r.is_ultrametric);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == ViolationKind::kUltrametric);
  CHECK(r.violations[0].i == 0);
  CHECK(r.violations[0].j == 2);
  CHECK(r.violations[0].k == 1);
}

TEST_CASE("validate reports every failed axiom") {
  const auto r = ultra::validate(mat({{0, 5, 1}, {4, 0, 1}, {1, 1, 1}}));
  CHECK_FALSE(r.is_metric);
  CHECK_FALSE(r.is_ultrametric);
  bool identity = false;
  bool symmetry = false;
  bool triangle = false;
  for (const auto& v : r.violations) {
    identity = identity || v.kind == ViolationKind::kIdentity;
    symmetry = symmetry || v.kind == ViolationKind::kSymmetry;
    triangle = triangle || v.kind == ViolationKind::kTriangle;
  }
  CHECK(identity);
  CHECK(symmetry);
  CHECK(triangle);
  CHECK(ultra::validate(mat({{0, 0}, {0, 0}})).violations.at(0).kind == ViolationKind::kPositivity);
}

TEST_CASE("validate rejects non-square or negative input") {
  CHECK_THROWS_AS(ultra::validate(mat({{0, 1}, {1}})), ultra::InputError);
  CHECK_THROWS_AS(ultra::validate(mat({{0, -1}, {-1, 0}})), ultra::InputError);
  CHECK_THROWS_AS(ultra::validate(DistanceMatrix{}), ultra::InputError);
}

TEST_CASE("FiniteMetric enforces the metric axioms") {
  CHECK_NOTHROW(FiniteMetric::from_matrix(mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})));
  CHECK_THROWS_AS(FiniteMetric::from_matrix(mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})),
                  ultra::InputError);
  CHECK_THROWS_AS(FiniteMetric::from_matrix(mat({{0, 1}, {2, 0}})), ultra::InputError);
  CHECK_THROWS_AS(FiniteMetric::from_matrix(mat({{0, 1}, {1, 0}}), {"a", "a"}), ultra::InputError);
  const FiniteMetric m = FiniteMetric::from_matrix(mat({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
  CHECK(m.names() == std::vector<std::string>{"0", "1", "2"});
  const std::vector<std::size_t> perm{2, 0, 1};
  const FiniteMetric p = m.permuted(perm);
  CHECK(p.at(0, 1) == Rational(2));
  CHECK(p.at(1, 2) == Rational(1));
  CHECK(p.names()[0] == "2");
  const std::vector<std::size_t> sub{0, 2};
  CHECK(m.restrict_to(sub).at(0, 1) == Rational(2));
}

TEST_CASE("realized distances") {
  CHECK(ultra::realized_distances(FiniteMetric::from_matrix(mat({{0}}))) == DistanceSet());
  CHECK(ultra::realized_distances(FiniteMetric::from_matrix(oracle::max_formula({0, 1, 2}))) ==
        DistanceSet::of({0, 1, 2}));
}

TEST_CASE("well-spaced sets") {
  CHECK(ultra::is_well_spaced(DistanceSet::of({0, 1, 3})));
  CHECK_FALSE(ultra::is_well_spaced(DistanceSet::of({0, 1, 2})));
  CHECK(ultra::is_well_spaced(DistanceSet::of({0, 1, Rational(5, 2)})));
  CHECK(ultra::is_well_spaced(DistanceSet::of({0})));
  CHECK(ultra::is_well_spaced(DistanceSet::of({7})));
}

TEST_CASE("triangle audit") {
  CHECK(ultra::triangle_audit(DistanceSet::of({0, 1, 3})).all_isosceles);
  CHECK_FALSE(ultra::triangle_audit(DistanceSet::of({0, 1, 3})).witness);

  const auto a = ultra::triangle_audit(DistanceSet::of({0, 1, 2}));
  CHECK_FALSE(a.all_isosceles);
  REQUIRE(a.witness);
  CHECK(*a.witness == std::array<Rational, 3>{1, 1, 2});

  const auto b = ultra::triangle_audit(DistanceSet::of({0, 1, Rational(3, 2), 4}));
  REQUIRE(b.witness);
  CHECK(*b.witness == std::array<Rational, 3>{1, 1, Rational(3, 2)});
}
