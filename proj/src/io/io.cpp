#include "ultra/io.hpp"

#include <charconv>
#include <set>

#include "ultra/error.hpp"

namespace ultra::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

Rational rational_at(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rational must be a string such as \"1/2\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

std::size_t index_at(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

BallTree node_at(const Json& j, const std::string& where, std::set<std::string>& seen) {
  if (!j.is_object()) fail(where, "expected a tree node object");
  if (j.contains("leaf")) {
    const Json& id = j["leaf"];
    if (!id.is_string()) fail(where + "/leaf", "leaf id must be a string");
    std::string name = id.get<std::string>();
    if (!seen.insert(name).second) fail(where + "/leaf", "duplicate point id \"" + name + "\"");
    return BallTree::leaf(std::move(name));
  }
  Rational label = rational_at(member(j, "label", where), where + "/label");
  const Json& kids = member(j, "children", where);
  if (!kids.is_array()) fail(where + "/children", "expected an array");
  std::vector<BallTree> children;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    children.push_back(node_at(kids[i], where + "/children/" + std::to_string(i), seen));
  }
  try {
    return BallTree::internal(label, std::move(children));
  } catch (const PreconditionError& e) {
    fail(where, e.what());
  }
}

std::string kind_of(const Json& j) {
  const Json& kind = member(j, "kind", "");
  if (!kind.is_string()) fail("/kind", "expected a string");
  return kind.get<std::string>();
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

DistanceMatrix parse_matrix_candidate(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "balltree") return from_ball_tree(parse_ultrametric(j)).matrix();
  if (kind != "matrix") fail("/kind", "unknown space kind \"" + kind + "\"");
  const Json& rows = member(j, "matrix", "");
  if (!rows.is_array() || rows.empty()) fail("/matrix", "expected a nonempty array of rows");
  DistanceMatrix d;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string where = "/matrix/" + std::to_string(i);
    if (!rows[i].is_array()) fail(where, "expected an array");
    if (rows[i].size() != rows.size()) {
      fail(where, "row has " + std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(rows.size()));
    }
    std::vector<Rational> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      std::string cell = where + "/" + std::to_string(k);
      Rational r = rational_at(rows[i][k], cell);
      if (r.is_negative()) fail(cell, "negative distance");
      row.push_back(r);
    }
    d.push_back(std::move(row));
  }
  return d;
}

Space parse_space(const Json& j) {
  if (kind_of(j) == "balltree") {
    BallTree t = parse_ultrametric(j);
    return {from_ball_tree(t), t};
  }
  DistanceMatrix d = parse_matrix_candidate(j);
  std::vector<std::string> names;
  if (j.contains("names")) {
    const Json& n = j["names"];
    if (!n.is_array() || n.size() != d.size()) fail("/names", "expected one name per point");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (!n[i].is_string()) fail("/names/" + std::to_string(i), "expected a string");
      names.push_back(n[i].get<std::string>());
      if (!seen.insert(names.back()).second) fail("/names/" + std::to_string(i), "duplicate name");
    }
  }
  FiniteMetric m = [&] {
    try {
      return FiniteMetric::from_matrix(d, names);
    } catch (const InputError& e) {
      fail("/matrix", e.what());
    }
  }();
  ValidationReport r = validate(m.matrix());
  std::optional<BallTree> tree;
  if (r.is_ultrametric) tree = to_ball_tree(m);
  return {std::move(m), std::move(tree)};
}

BallTree parse_ultrametric(const Json& j) {
  if (kind_of(j) == "balltree") {
    std::set<std::string> seen;
    return node_at(member(j, "tree", ""), "/tree", seen);
  }
  Space s = parse_space(j);
  if (!s.tree) {
    try {
      to_ball_tree(s.metric);
    } catch (const NotUltrametricError& e) {
      fail("/matrix", e.what());
    }
  }
  return *s.tree;
}

Json tree_node_to_json(const BallTree& t) {
  if (t.is_leaf()) return Json{{"leaf", t.point()}};
  Json kids = Json::array();
  for (const auto& c : t.children()) kids.push_back(tree_node_to_json(c));
  return Json{{"label", t.label().to_string()}, {"children", std::move(kids)}};
}

Json to_json(const BallTree& t) {
  return Json{{"kind", "balltree"}, {"tree", tree_node_to_json(t)}};
}

Json to_json(const FiniteMetric& m) {
  Json rows = Json::array();
  for (const auto& row : m.matrix()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v.to_string());
    rows.push_back(std::move(r));
  }
  return Json{{"kind", "matrix"}, {"matrix", std::move(rows)}, {"names", m.names()}};
}

qo::QuasiOrder parse_qo(const Json& j) {
  const Json& n = member(j, "n", "");
  std::size_t size = index_at(n, "/n");
  std::vector<std::pair<qo::Element, qo::Element>> pairs;
  if (j.contains("pairs")) {
    const Json& ps = j["pairs"];
    if (!ps.is_array()) fail("/pairs", "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::string where = "/pairs/" + std::to_string(i);
      if (!ps[i].is_array() || ps[i].size() != 2) fail(where, "expected a pair [x, y]");
      std::size_t x = index_at(ps[i][0], where + "/0");
      std::size_t y = index_at(ps[i][1], where + "/1");
      if (x >= size || y >= size) fail(where, "index out of range for n=" + std::to_string(size));
      pairs.emplace_back(x, y);
    }
  }
  if (size == 0) fail("/n", "carrier must be nonempty");
  return qo::QuasiOrder::closure(size, pairs);
}

Json to_json(const qo::QuasiOrder& s) {
  Json pairs = Json::array();
  for (auto [x, y] : s.pairs()) pairs.push_back(Json::array({x, y}));
  return Json{{"n", s.size()}, {"pairs", std::move(pairs)}};
}

qo::OmegaMultiset parse_multiset(const Json& j, const qo::QuasiOrder& base) {
  const Json& mults = member(j, "mults", "");
  if (!mults.is_object()) fail("/mults", "expected an object");
  std::map<qo::Element, qo::Multiplicity> out;
  for (const auto& [key, value] : mults.items()) {
    std::string where = "/mults/" + key;
    qo::Element x = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), x);
    if (ec != std::errc() || ptr != key.data() + key.size() || key.empty() ||
        (key.size() > 1 && key[0] == '0')) {
      fail(where, "element key must be a canonical decimal index");
    }
    if (x >= base.size()) fail(where, "element outside carrier of size " + std::to_string(base.size()));
    if (value.is_string() && value.get<std::string>() == "omega") {
      out.emplace(x, qo::Multiplicity::omega());
    } else if (value.is_number_unsigned() && value.get<std::uint64_t>() > 0) {
      out.emplace(x, qo::Multiplicity::finite(value.get<std::uint64_t>()));
    } else {
      fail(where, "multiplicity must be a positive integer or \"omega\"");
    }
  }
  if (out.empty()) fail("/mults", "support must be nonempty");
  return qo::OmegaMultiset(base, std::move(out));
}

Json to_json(const qo::OmegaMultiset& m) {
  Json mults = Json::object();
  for (const auto& [x, k] : m.mults()) {
    if (k.is_omega()) {
      mults[std::to_string(x)] = "omega";
    } else {
      mults[std::to_string(x)] = k.count();
    }
  }
  return Json{{"mults", std::move(mults)}};
}

reduce::RootedTree parse_tree(const Json& j) {
  const Json& ps = member(j, "parents", "");
  if (!ps.is_array() || ps.empty()) fail("/parents", "expected a nonempty array");
  std::vector<std::optional<std::size_t>> parents;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::string where = "/parents/" + std::to_string(i);
    if (ps[i].is_null()) {
      if (i != 0) fail(where, "only node 0 may be the root");
      parents.emplace_back();
    } else {
      std::size_t p = index_at(ps[i], where);
      if (i == 0) fail(where, "node 0 must be the root (null)");
      if (p >= i) fail(where, "parent must have a smaller index");
      parents.emplace_back(p);
    }
  }
  return reduce::RootedTree::from_parents(parents);
}

Json to_json(const reduce::RootedTree& t) {
  Json ps = Json::array();
  for (const auto& p : t.parents()) {
    if (p) {
      ps.push_back(*p);
    } else {
      ps.push_back(nullptr);
    }
  }
  return Json{{"parents", std::move(ps)}};
}

reduce::Graph parse_graph(const Json& j) {
  std::size_t n = index_at(member(j, "n", ""), "/n");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    const Json& es = j["edges"];
    if (!es.is_array()) fail("/edges", "expected an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
      std::string where = "/edges/" + std::to_string(i);
      if (!es[i].is_array() || es[i].size() != 2) fail(where, "expected a pair [a, b]");
      std::size_t a = index_at(es[i][0], where + "/0");
      std::size_t b = index_at(es[i][1], where + "/1");
      if (a >= n || b >= n) fail(where, "vertex out of range for n=" + std::to_string(n));
      if (a == b) fail(where, "loops are not allowed");
      edges.emplace_back(a, b);
    }
  }
  return reduce::Graph::from_edges(n, edges);
}

Json to_json(const reduce::Graph& g) {
  Json es = Json::array();
  for (auto [a, b] : g.edges()) es.push_back(Json::array({a, b}));
  return Json{{"n", g.size()}, {"edges", std::move(es)}};
}

Json to_json(const DistanceSet& d) {
  Json out = Json::array();
  for (const auto& r : d.values()) out.push_back(r.to_string());
  return out;
}

Json to_json(const ValidationReport& r, const DistanceMatrix& d) {
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    vs.push_back(Json{{"kind", to_string(v.kind)},
                      {"i", v.i},
                      {"j", v.j},
                      {"k", v.k},
                      {"detail", v.describe(d)}});
  }
  return Json{{"is_metric", r.is_metric},
              {"is_ultrametric", r.is_ultrametric},
              {"violations", std::move(vs)},
              {"realized", to_json(r.realized)}};
}

Json to_json(const qo::Witness& w) {
  Json out = Json::array();
  for (const auto& [pair, m] : w) {
    Json amount = m.is_omega() ? Json("omega") : Json(m.count());
    out.push_back(Json{{"from", pair.first}, {"to", pair.second}, {"mult", amount}});
  }
  return out;
}

Json to_json(const qo::IterationTrace& t) {
  return Json{{"levels", t.levels}, {"rho", t.rho}, {"core", t.core}};
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    try {
      out.push_back(Rational::parse(item));
    } catch (const InputError& e) {
      throw InputError("list item " + std::to_string(out.size()) + ": " + e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace ultra::io
