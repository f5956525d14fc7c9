#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ultra/ball_tree.hpp"
#include "ultra/jump.hpp"
#include "ultra/metric.hpp"
#include "ultra/quasi_order.hpp"
#include "ultra/reductions.hpp"

namespace ultra::io {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become InputError with the byte offset.
Json parse_json(std::string_view text);

/// A parsed space file. `tree` is present whenever the space is an
/// ultrametric.
struct Space {
  FiniteMetric metric;
  std::optional<BallTree> tree;
};

/// Matrix files are checked only for shape, canonical rationals and
/// non-negative entries. Ball tree files are converted to their matrix.
DistanceMatrix parse_matrix_candidate(const Json& j);
/// Full parse: metric axioms enforced, ball tree built when ultrametric.
Space parse_space(const Json& j);
/// Same, but the space must be an ultrametric.
BallTree parse_ultrametric(const Json& j);

Json to_json(const BallTree& t);
Json to_json(const FiniteMetric& m);
Json tree_node_to_json(const BallTree& t);

qo::QuasiOrder parse_qo(const Json& j);
Json to_json(const qo::QuasiOrder& s);

qo::OmegaMultiset parse_multiset(const Json& j, const qo::QuasiOrder& base);
Json to_json(const qo::OmegaMultiset& m);

reduce::RootedTree parse_tree(const Json& j);
Json to_json(const reduce::RootedTree& t);

reduce::Graph parse_graph(const Json& j);
Json to_json(const reduce::Graph& g);

Json to_json(const ValidationReport& r, const DistanceMatrix& d);
Json to_json(const DistanceSet& d);
Json to_json(const qo::Witness& w);
Json to_json(const qo::IterationTrace& t);

/// Comma-separated canonical rationals, e.g. "0,1/2,3".
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace ultra::io
