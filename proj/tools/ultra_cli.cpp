// Command-line front end over the C interface.
//
// Exit codes: 0 success or positive decision, 1 negative decision or failed
// verification (report on stdout), 2 input or usage error (stderr).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ultra/ultra.h"

namespace {

using Json = nlohmann::json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

class ApiError : public std::runtime_error {
 public:
  ApiError(um_status status, const std::string& what) : std::runtime_error(what), status(status) {}
  um_status status;
};

void check(um_status s, const std::string& context) {
  if (s != UM_OK) throw ApiError(s, context + ": " + um_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  um_string_free(s);
  return out;
}

Json take_json(char* s) { return Json::parse(take(s)); }

std::string slurp(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(UM_ERR_INPUT, path + ": cannot read file");
  buf << in.rdbuf();
  return buf.str();
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Space = std::unique_ptr<um_space, Deleter<um_space, um_space_free>>;
using Order = std::unique_ptr<um_quasi_order, Deleter<um_quasi_order, um_qo_free>>;
using Multiset = std::unique_ptr<um_multiset, Deleter<um_multiset, um_multiset_free>>;
using Tree = std::unique_ptr<um_tree, Deleter<um_tree, um_tree_free>>;
using GraphPtr = std::unique_ptr<um_graph, Deleter<um_graph, um_graph_free>>;

Space load_space(const std::string& path) {
  um_space* out = nullptr;
  check(um_space_parse(slurp(path).c_str(), &out), path);
  return Space(out);
}

Order load_qo(const std::string& path) {
  um_quasi_order* out = nullptr;
  check(um_qo_parse(slurp(path).c_str(), &out), path);
  return Order(out);
}

Multiset load_multiset(const um_quasi_order* base, const std::string& path) {
  um_multiset* out = nullptr;
  check(um_multiset_parse(base, slurp(path).c_str(), &out), path);
  return Multiset(out);
}

Tree load_tree(const std::string& path) {
  um_tree* out = nullptr;
  check(um_tree_parse(slurp(path).c_str(), &out), path);
  return Tree(out);
}

GraphPtr load_graph(const std::string& path) {
  um_graph* out = nullptr;
  check(um_graph_parse(slurp(path).c_str(), &out), path);
  return GraphPtr(out);
}

Json space_json(const um_space* s) {
  char* out = nullptr;
  check(um_space_to_json(s, &out), "serialize");
  return take_json(out);
}

/// Splits "0,1/2,3" into its items; validation happens behind the C API.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

enum class Format { kJson, kText };

void render_text(std::ostream& os, const Json& j) {
  if (!j.is_object()) {
    os << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

struct Context {
  Format format = Format::kJson;

  void emit(const Json& j) const {
    if (format == Format::kJson) {
      std::cout << j.dump() << "\n";
    } else {
      render_text(std::cout, j);
    }
  }
  int decide(const char* key, bool value) const {
    emit(Json{{key, value}});
    return value ? kYes : kNo;
  }
};

// ---- space ----

struct SpaceArgs {
  std::vector<std::string> files;
  bool brute = false;
  std::size_t bound = 0;
};

int space_check(const Context& ctx, const SpaceArgs& a) {
  char* report = nullptr;
  int ultra = 0;
  check(um_space_check(slurp(a.files[0]).c_str(), &report, &ultra), a.files[0]);
  ctx.emit(take_json(report));
  return ultra ? kYes : kNo;
}

int space_canon(const Context& ctx, const SpaceArgs& a) {
  Space s = load_space(a.files[0]);
  char* hex = nullptr;
  check(um_space_canonical_code(s.get(), &hex), a.files[0]);
  Json out = {{"code", take(hex)}, {"space", space_json(s.get())}};
  ctx.emit(out);
  return kYes;
}

int space_relation(const Context& ctx, const SpaceArgs& a, bool iso) {
  Space x = load_space(a.files[0]);
  Space y = load_space(a.files[1]);
  int out = 0;
  if (a.brute) {
    check(iso ? um_space_brute_isometric(x.get(), y.get(), a.bound, &out)
              : um_space_brute_embeds(x.get(), y.get(), a.bound, &out),
          "brute search");
  } else {
    check(iso ? um_space_isometric(x.get(), y.get(), &out) : um_space_embeds(x.get(), y.get(), &out),
          iso ? "isometric" : "embeds");
  }
  return ctx.decide(iso ? "isometric" : "embeds", out != 0);
}

// ---- qo ----

struct QoArgs {
  std::string order;
  std::vector<std::string> sets;
  std::string inj_method = "flow";
  std::string einj_method = "char";
  bool witness = false;
  bool paranoid = false;
};

int qo_classes(const Context& ctx, const QoArgs& a) {
  Order s = load_qo(a.order);
  char* out = nullptr;
  check(um_qo_classes(s.get(), &out), "classes");
  ctx.emit(Json{{"classes", take_json(out)}});
  return kYes;
}

int qo_incomparable(const Context& ctx, const QoArgs& a) {
  Order s = load_qo(a.order);
  int found = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  check(um_qo_incomparable(s.get(), &found, &x, &y), "incomparable");
  Json out = {{"incomparable", found != 0}};
  if (found) out["pair"] = {x, y};
  ctx.emit(out);
  return found ? kYes : kNo;
}

int qo_compare(const Context& ctx, const QoArgs& a, const std::string& verb) {
  Order s = load_qo(a.order);
  Multiset x = load_multiset(s.get(), a.sets[0]);
  if (verb == "iterate") {
    char* out = nullptr;
    check(um_iterate(x.get(), &out), "iterate");
    ctx.emit(take_json(out));
    return kYes;
  }
  Multiset y = load_multiset(s.get(), a.sets[1]);
  int result = 0;
  if (verb == "cf") {
    check(um_cf_le(x.get(), y.get(), &result), "cf");
    return ctx.decide("cf_le", result != 0);
  }
  if (verb == "inj") {
    const um_inj_method m = a.inj_method == "wqo"     ? UM_INJ_WQO
                            : a.inj_method == "equiv" ? UM_INJ_EQUIV
                                                  : UM_INJ_FLOW;
    char* witness = nullptr;
    check(um_inj_le(x.get(), y.get(), m, &result, a.witness ? &witness : nullptr), "inj");
    Json out = {{"inj_le", result != 0}};
    if (a.witness) out["witness"] = witness ? take_json(witness) : Json(nullptr);
    ctx.emit(out);
    return result ? kYes : kNo;
  }
  const um_einj_method m = a.einj_method == "flow" ? UM_EINJ_FLOW : UM_EINJ_CHAR;
  check(um_einj(x.get(), y.get(), m, a.paranoid ? 1 : 0, &result), "einj");
  return ctx.decide("einj", result != 0);
}

// ---- reduce ----

struct ReduceArgs {
  std::vector<std::string> files;
  std::string r;
  std::string rp;
  std::string d;
  std::string rbar;
  std::string x;
};

int emit_space(const Context& ctx, um_space* raw) {
  Space s(raw);
  ctx.emit(space_json(s.get()));
  return kYes;
}

int reduce_cmd(const Context& ctx, const ReduceArgs& a, const std::string& verb) {
  um_space* out = nullptr;
  if (verb == "theta" || verb == "rank") {
    Tree t = load_tree(a.files.at(0));
    const auto items = split_list(a.r);
    const auto ptrs = c_strings(items);
    check(verb == "theta" ? um_reduce_theta(t.get(), ptrs.data(), ptrs.size(), &out)
                          : um_reduce_rank(t.get(), ptrs.data(), ptrs.size(), &out),
          verb);
    return emit_space(ctx, out);
  }
  if (verb == "graph") {
    GraphPtr g = load_graph(a.files.at(0));
    check(um_reduce_graph(g.get(), a.r.c_str(), a.rp.c_str(), &out), verb);
    return emit_space(ctx, out);
  }
  if (verb == "powerset") {
    const auto items = split_list(a.x);
    const auto ptrs = c_strings(items);
    check(um_reduce_powerset(ptrs.data(), ptrs.size(), &out), verb);
    return emit_space(ctx, out);
  }
  if (verb == "phi") {
    std::vector<Space> spaces;
    std::vector<const um_space*> ptrs;
    for (const auto& f : a.files) {
      spaces.push_back(load_space(f));
      ptrs.push_back(spaces.back().get());
    }
    check(um_reduce_phi(ptrs.data(), ptrs.size(), a.r.c_str(), &out), verb);
    return emit_space(ctx, out);
  }
  Space x = load_space(a.files.at(0));
  const auto items = split_list(a.d);
  const auto ptrs = c_strings(items);
  if (verb == "glue") {
    check(um_reduce_glue(x.get(), ptrs.data(), ptrs.size(), a.rbar.c_str(), &out), verb);
    return emit_space(ctx, out);
  }
  if (verb == "tail") {
    check(um_reduce_tail(x.get(), ptrs.data(), ptrs.size(), &out), verb);
    return emit_space(ctx, out);
  }
  um_space** parts = nullptr;
  std::size_t count = 0;
  check(um_reduce_decompose(x.get(), ptrs.data(), ptrs.size(), &parts, &count), verb);
  Json list = Json::array();
  for (std::size_t i = 0; i < count; ++i) list.push_back(space_json(parts[i]));
  um_space_array_free(parts, count);
  ctx.emit(Json{{"parts", std::move(list)}});
  return kYes;
}

// ---- verify ----

struct VerifyArgs {
  std::string property;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t max_nodes = 0;
  std::size_t max_points = 0;
  std::size_t max_support = 0;
  unsigned threads = 1;
  bool timing = false;
  bool list = false;
  std::string replay;
};

int verify_cmd(const Context& ctx, const VerifyArgs& a) {
  if (a.list) {
    char* names = nullptr;
    check(um_property_names(&names), "properties");
    ctx.emit(Json{{"properties", take_json(names)}});
    return kYes;
  }
  if (a.property.empty()) throw CLI::ValidationError("verify", "a property name is required");
  const um_bounds bounds{a.max_nodes, a.max_points, a.max_support};
  char* report = nullptr;
  int passed = 0;
  if (!a.replay.empty()) {
    std::uint64_t trial_seed = 0;
    try {
      std::size_t used = 0;
      trial_seed = std::stoull(a.replay, &used);
      if (used != a.replay.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw CLI::ValidationError("--replay", "expected a decimal trial seed, got '" + a.replay + "'");
    }
    check(um_replay(a.property.c_str(), trial_seed, &bounds, &report, &passed), "replay");
  } else {
    check(um_verify(a.property.c_str(), a.trials, a.seed, &bounds, a.threads, a.timing ? 1 : 0,
                    &report, &passed),
          "verify");
  }
  ctx.emit(take_json(report));
  return passed ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite ultrametric spaces, quasi-order jumps and reductions"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::function<int(const Context&)> action;

  SpaceArgs sa;
  auto* space = app.add_subcommand("space", "Finite metric spaces")->require_subcommand(1);
  auto* s_check = space->add_subcommand("check", "Validate a candidate matrix");
  s_check->add_option("file", sa.files, "Space file")->required()->expected(1);
  s_check->callback([&] { action = [&](const Context& c) { return space_check(c, sa); }; });
  auto* s_canon = space->add_subcommand("canon", "Canonical code of an ultrametric space");
  s_canon->add_option("file", sa.files, "Space file")->required()->expected(1);
  s_canon->callback([&] { action = [&](const Context& c) { return space_canon(c, sa); }; });
  for (const char* name : {"isom", "embed"}) {
    const bool iso = std::string(name) == "isom";
    auto* sub = space->add_subcommand(name, iso ? "Decide isometry" : "Decide isometric embedding");
    sub->add_option("files", sa.files, "Two space files")->required()->expected(2);
    sub->add_flag("--brute", sa.brute, "Exhaustive search (works for any metric)");
    sub->add_option("--bound", sa.bound, "Size bound for --brute");
    sub->callback([&, iso] { action = [&, iso](const Context& c) { return space_relation(c, sa, iso); }; });
  }

  QoArgs qa;
  auto* qo = app.add_subcommand("qo", "Quasi-orders and omega-multisets")->require_subcommand(1);
  auto* q_classes = qo->add_subcommand("classes", "Equivalence classes");
  q_classes->add_option("order", qa.order, "Quasi-order file")->required();
  q_classes->callback([&] { action = [&](const Context& c) { return qo_classes(c, qa); }; });
  auto* q_inc = qo->add_subcommand("incomparable", "Least incomparable pair");
  q_inc->add_option("order", qa.order, "Quasi-order file")->required();
  q_inc->callback([&] { action = [&](const Context& c) { return qo_incomparable(c, qa); }; });
  const std::pair<const char*, const char*> qo_verbs[] = {
      {"cf", "Every element of A lies below some element of B"},
      {"inj", "Injective comparison of A into B"},
      {"einj", "Mutual injective comparability"},
      {"iterate", "Level trace of a multiset"}};
  for (const auto& [name, description] : qo_verbs) {
    const std::string verb = name;
    auto* sub = qo->add_subcommand(name, description);
    sub->add_option("order", qa.order, "Quasi-order file")->required();
    sub->add_option("sets", qa.sets, "Multiset files")->required()->expected(verb == "iterate" ? 1 : 2);
    if (verb == "inj") {
      sub->add_option("--method", qa.inj_method, "Decision procedure")
          ->check(CLI::IsMember({"flow", "wqo", "equiv"}));
      sub->add_flag("--witness", qa.witness, "Include an injection witness (flow)");
    } else if (verb == "einj") {
      sub->add_option("--method", qa.einj_method, "Decision procedure")
          ->check(CLI::IsMember({"char", "flow"}));
      sub->add_flag("--paranoid", qa.paranoid, "Cross-check against the other method");
    }
    sub->callback([&, verb] { action = [&, verb](const Context& c) { return qo_compare(c, qa, verb); }; });
  }

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Constructions between classes")->require_subcommand(1);
  struct Spec {
    const char* name;
    const char* help;
    int files;  // -1 for one or more
  };
  for (const Spec& spec : {Spec{"theta", "Tree to ultrametric by meet depth", 1},
                           Spec{"glue", "Glue a space to a canonical space", 1},
                           Spec{"tail", "Add the canonical tail", 1},
                           Spec{"phi", "Union at a common distance", -1},
                           Spec{"decompose", "Split into starred balls", 1},
                           Spec{"rank", "Tree to ultrametric by meet rank", 1},
                           Spec{"graph", "Graph to a two-distance metric", 1},
                           Spec{"powerset", "Canonical space of a distance set", 0}}) {
    const std::string verb = spec.name;
    auto* sub = reduce->add_subcommand(spec.name, spec.help);
    if (spec.files != 0) {
      auto* opt = sub->add_option("files", ra.files, "Input file(s)")->required();
      if (spec.files > 0) opt->expected(spec.files);
    }
    if (verb == "theta" || verb == "rank" || verb == "phi" || verb == "graph") {
      sub->add_option("--r", ra.r, verb == "phi" ? "Cross distance" : "Distances, comma separated")
          ->required();
    }
    if (verb == "graph") sub->add_option("--rp", ra.rp, "Non-edge distance")->required();
    if (verb == "glue" || verb == "tail" || verb == "decompose") {
      sub->add_option("--D", ra.d, "Distance set, comma separated")->required();
    }
    if (verb == "glue") sub->add_option("--rbar", ra.rbar, "Cross distance floor")->required();
    if (verb == "powerset") sub->add_option("--X", ra.x, "Positive distances, comma separated");
    sub->callback([&, verb] { action = [&, verb](const Context& c) { return reduce_cmd(c, ra, verb); }; });
  }

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->add_option("property", va.property, "Property name");
  verify->add_option("--trials", va.trials, "Number of trials")->capture_default_str();
  verify->add_option("--seed", va.seed, "Campaign seed")->capture_default_str();
  verify->add_option("--max-nodes", va.max_nodes, "Tree size / carrier bound");
  verify->add_option("--max-points", va.max_points, "Space size bound");
  verify->add_option("--max-support", va.max_support, "Multiset support bound");
  verify->add_option("--threads", va.threads, "Worker threads (0 = all cores)")->capture_default_str();
  verify->add_flag("--timing", va.timing, "Include elapsed time in the report");
  verify->add_flag("--list", va.list, "List property names");
  verify->add_option("--replay", va.replay, "Re-run one trial from its recorded trial_seed");
  verify->callback([&] { action = [&](const Context& c) { return verify_cmd(c, va); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Context ctx;
  ctx.format = format == "text" ? Format::kText : Format::kJson;
  try {
    return action(ctx);
  } catch (const ApiError& e) {
    if (e.status == UM_ERR_INTERNAL) {
      ctx.emit(Json{{"error", e.what()}});
      return kNo;
    }
    std::cerr << "ultra: error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << "ultra: error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ultra: error: " << e.what() << "\n";
    return kUsage;
  }
}
