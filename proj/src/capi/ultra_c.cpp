#include "ultra/ultra.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <thread>

#include "ultra/error.hpp"
#include "ultra/io.hpp"
#include "ultra/lab.hpp"

using ultra::BallTree;
using ultra::DistanceSet;
using ultra::FiniteMetric;
using ultra::Rational;
using ultra::io::Json;

struct um_space {
  ultra::io::Space value;
};
struct um_quasi_order {
  ultra::qo::QuasiOrder value;
};
struct um_multiset {
  ultra::qo::OmegaMultiset value;
};
struct um_tree {
  ultra::reduce::RootedTree value;
};
struct um_graph {
  ultra::reduce::Graph value;
};

namespace {

thread_local std::string last_error;

class NullArgument : public std::exception {
 public:
  explicit NullArgument(const char* name) : msg_(std::string("argument '") + name + "' is NULL") {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

class UnknownProperty : public std::exception {
 public:
  explicit UnknownProperty(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

template <class T>
const T& need(const T* p, const char* name) {
  if (p == nullptr) throw NullArgument(name);
  return *p;
}

const char* need_str(const char* p, const char* name) {
  if (p == nullptr) throw NullArgument(name);
  return p;
}

template <class T>
T& need_out(T* p, const char* name) {
  if (p == nullptr) throw NullArgument(name);
  return *p;
}

template <class F>
um_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return UM_OK;
  } catch (const NullArgument& e) {
    last_error = e.what();
    return UM_ERR_NULL;
  } catch (const UnknownProperty& e) {
    last_error = e.what();
    return UM_ERR_UNKNOWN_PROPERTY;
  } catch (const ultra::InputError& e) {
    last_error = e.what();
    return UM_ERR_INPUT;
  } catch (const ultra::PreconditionError& e) {
    last_error = e.what();
    return UM_ERR_PRECONDITION;
  } catch (const ultra::LimitError& e) {
    last_error = e.what();
    return UM_ERR_LIMIT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return UM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return UM_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_json(char** out, const Json& j) { need_out(out, "out") = dup_string(j.dump()); }

Json parse_text(const char* text) { return ultra::io::parse_json(need_str(text, "json")); }

Rational rational_arg(const char* text, const char* name) {
  try {
    return Rational::parse(need_str(text, name));
  } catch (const ultra::InputError& e) {
    throw ultra::InputError(std::string(name) + ": " + e.what());
  }
}

std::vector<Rational> rational_list(const char* const* values, std::size_t count,
                                    const char* name) {
  if (count > 0 && values == nullptr) throw NullArgument(name);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string label = std::string(name) + "[" + std::to_string(i) + "]";
    out.push_back(rational_arg(values[i], label.c_str()));
  }
  return out;
}

const BallTree& tree_of(const um_space* s, const char* name) {
  const auto& space = need(s, name).value;
  if (!space.tree) {
    (void)ultra::to_ball_tree(space.metric);  // throws with a witness triple
    throw ultra::PreconditionError(std::string(name) + " is not an ultrametric");
  }
  return *space.tree;
}

um_space* make_space(const BallTree& t) {
  return new um_space{ultra::io::Space{ultra::from_ball_tree(t), t}};
}

um_space* make_space(const FiniteMetric& m) {
  std::optional<BallTree> tree;
  if (ultra::validate(m.matrix()).is_ultrametric) tree = ultra::to_ball_tree(m);
  return new um_space{ultra::io::Space{m, std::move(tree)}};
}

std::vector<BallTree> tree_list(const um_space* const* xs, std::size_t count, const char* name) {
  if (count > 0 && xs == nullptr) throw NullArgument(name);
  std::vector<BallTree> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(tree_of(xs[i], name));
  return out;
}

ultra::lab::Bounds bounds_of(const um_bounds* b) {
  ultra::lab::Bounds out;
  if (b == nullptr) return out;
  if (b->max_nodes) out.max_nodes = b->max_nodes;
  if (b->max_points) out.max_points = b->max_points;
  if (b->max_support) out.max_support = b->max_support;
  return out;
}

const ultra::lab::Registry& registry() {
  static const ultra::lab::Registry reg = ultra::lab::Registry::standard();
  return reg;
}

void require_property(const char* property) {
  if (!registry().contains(need_str(property, "property"))) {
    throw UnknownProperty(std::string("unknown property '") + property + "'");
  }
}

}  // namespace

extern "C" {

const char* um_last_error(void) { return last_error.c_str(); }

const char* um_status_name(um_status status) {
  switch (status) {
    case UM_OK: return "ok";
    case UM_ERR_INPUT: return "input error";
    case UM_ERR_PRECONDITION: return "precondition violated";
    case UM_ERR_LIMIT: return "size limit exceeded";
    case UM_ERR_UNKNOWN_PROPERTY: return "unknown property";
    case UM_ERR_NULL: return "null argument";
    case UM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void um_string_free(char* s) { std::free(s); }

// ---- Spaces ----

um_status um_space_parse(const char* json, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = new um_space{ultra::io::parse_space(parse_text(json))};
  });
}

void um_space_free(um_space* space) { delete space; }

void um_space_array_free(um_space** spaces, size_t count) {
  if (spaces == nullptr) return;
  for (size_t i = 0; i < count; ++i) delete spaces[i];
  std::free(spaces);
}

um_status um_space_check(const char* json, char** report_json, int* is_ultrametric) {
  return guard([&] {
    const ultra::DistanceMatrix d = ultra::io::parse_matrix_candidate(parse_text(json));
    const ultra::ValidationReport r = ultra::validate(d);
    put_json(report_json, ultra::io::to_json(r, d));
    if (is_ultrametric) *is_ultrametric = r.is_ultrametric ? 1 : 0;
  });
}

um_status um_space_size(const um_space* space, size_t* out) {
  return guard([&] { need_out(out, "out") = need(space, "space").value.metric.size(); });
}

um_status um_space_is_ultrametric(const um_space* space, int* out) {
  return guard([&] { need_out(out, "out") = need(space, "space").value.tree ? 1 : 0; });
}

um_status um_space_to_json(const um_space* space, char** out) {
  return guard([&] {
    const auto& s = need(space, "space").value;
    put_json(out, s.tree ? ultra::io::to_json(*s.tree) : ultra::io::to_json(s.metric));
  });
}

um_status um_space_matrix_json(const um_space* space, char** out) {
  return guard([&] { put_json(out, ultra::io::to_json(need(space, "space").value.metric)); });
}

um_status um_space_distances_json(const um_space* space, char** out) {
  return guard([&] {
    put_json(out, ultra::io::to_json(ultra::realized_distances(need(space, "space").value.metric)));
  });
}

um_status um_space_canonical_code(const um_space* space, char** hex) {
  return guard([&] {
    const BallTree& t = tree_of(space, "space");
    need_out(hex, "hex") = dup_string(ultra::canonical_code(t).hex());
  });
}

um_status um_space_isometric(const um_space* a, const um_space* b, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::isometric(tree_of(a, "a"), tree_of(b, "b")) ? 1 : 0;
  });
}

um_status um_space_embeds(const um_space* a, const um_space* b, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::embeds(tree_of(a, "a"), tree_of(b, "b")) ? 1 : 0;
  });
}

um_status um_space_brute_isometric(const um_space* a, const um_space* b, size_t bound, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::brute_isometric(need(a, "a").value.metric,
                                                  need(b, "b").value.metric,
                                                  bound ? bound : ultra::kDefaultBruteBound);
  });
}

um_status um_space_brute_embeds(const um_space* a, const um_space* b, size_t bound, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::brute_embeds(need(a, "a").value.metric,
                                               need(b, "b").value.metric,
                                               bound ? bound : ultra::kDefaultBruteBound);
  });
}

// ---- Quasi-orders and multisets ----

um_status um_qo_parse(const char* json, um_quasi_order** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = new um_quasi_order{ultra::io::parse_qo(parse_text(json))};
  });
}

void um_qo_free(um_quasi_order* s) { delete s; }

um_status um_qo_to_json(const um_quasi_order* s, char** out) {
  return guard([&] { put_json(out, ultra::io::to_json(need(s, "s").value)); });
}

um_status um_qo_classes(const um_quasi_order* s, char** out) {
  return guard([&] { put_json(out, Json(ultra::qo::es_classes(need(s, "s").value))); });
}

um_status um_qo_incomparable(const um_quasi_order* s, int* found, size_t* x, size_t* y) {
  return guard([&] {
    const auto pair = ultra::qo::has_incomparable_pair(need(s, "s").value);
    need_out(found, "found") = pair ? 1 : 0;
    if (pair) {
      need_out(x, "x") = pair->first;
      need_out(y, "y") = pair->second;
    }
  });
}

um_status um_multiset_parse(const um_quasi_order* base, const char* json, um_multiset** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = new um_multiset{ultra::io::parse_multiset(parse_text(json), need(base, "base").value)};
  });
}

void um_multiset_free(um_multiset* m) { delete m; }

um_status um_multiset_to_json(const um_multiset* m, char** out) {
  return guard([&] { put_json(out, ultra::io::to_json(need(m, "m").value)); });
}

um_status um_cf_le(const um_multiset* a, const um_multiset* b, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::qo::cf_le(need(a, "a").value, need(b, "b").value) ? 1 : 0;
  });
}

um_status um_inj_le(const um_multiset* a, const um_multiset* b, um_inj_method method, int* out,
                    char** witness_json) {
  return guard([&] {
    const auto& ma = need(a, "a").value;
    const auto& mb = need(b, "b").value;
    int& result = need_out(out, "out");
    if (witness_json) *witness_json = nullptr;
    switch (method) {
      case UM_INJ_FLOW: {
        const ultra::qo::InjResult r = ultra::qo::inj_le(ma, mb);
        result = r.holds ? 1 : 0;
        if (witness_json && r.witness) {
          *witness_json = dup_string(ultra::io::to_json(*r.witness).dump());
        }
        return;
      }
      case UM_INJ_WQO:
        result = ultra::qo::wqo_inj_le(ma, mb) ? 1 : 0;
        return;
      case UM_INJ_EQUIV:
        result = ultra::qo::equiv_inj_le(ma, mb) ? 1 : 0;
        return;
    }
    throw ultra::InputError("unknown inj method " + std::to_string(static_cast<int>(method)));
  });
}

um_status um_einj(const um_multiset* a, const um_multiset* b, um_einj_method method,
                  int paranoid, int* out) {
  return guard([&] {
    const auto& ma = need(a, "a").value;
    const auto& mb = need(b, "b").value;
    int& result = need_out(out, "out");
    if (method != UM_EINJ_CHAR && method != UM_EINJ_FLOW) {
      throw ultra::InputError("unknown einj method " + std::to_string(static_cast<int>(method)));
    }
    auto by_flow = [&] { return ultra::qo::inj_le(ma, mb).holds && ultra::qo::inj_le(mb, ma).holds; };
    const bool value = method == UM_EINJ_CHAR ? ultra::qo::einj_char(ma, mb) : by_flow();
    if (paranoid) {
      const bool other = method == UM_EINJ_CHAR ? by_flow() : ultra::qo::einj_char(ma, mb);
      if (other != value) {
        throw std::logic_error("characterization and flow disagree on this instance");
      }
    }
    result = value ? 1 : 0;
  });
}

um_status um_iterate(const um_multiset* a, char** trace_json) {
  return guard([&] {
    put_json(trace_json, ultra::io::to_json(ultra::qo::iterate_levels(need(a, "a").value)));
  });
}

um_status um_level_witness(const um_multiset* a, const um_multiset* b, int* found,
                           char** witness_json) {
  return guard([&] {
    const auto w = ultra::qo::level_respecting_witness(need(a, "a").value, need(b, "b").value);
    need_out(found, "found") = w ? 1 : 0;
    if (witness_json) *witness_json = w ? dup_string(ultra::io::to_json(*w).dump()) : nullptr;
  });
}

// ---- Trees and graphs ----

um_status um_tree_parse(const char* json, um_tree** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = new um_tree{ultra::io::parse_tree(parse_text(json))};
  });
}

void um_tree_free(um_tree* t) { delete t; }

um_status um_tree_to_json(const um_tree* t, char** out) {
  return guard([&] { put_json(out, ultra::io::to_json(need(t, "t").value)); });
}

um_status um_tree_iso(const um_tree* g, const um_tree* h, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::reduce::rooted_tree_iso(need(g, "g").value, need(h, "h").value);
  });
}

um_status um_tree_embeds(const um_tree* g, const um_tree* h, int* out) {
  return guard([&] {
    need_out(out, "out") =
        ultra::reduce::rooted_tree_embeds(need(g, "g").value, need(h, "h").value);
  });
}

um_status um_graph_parse(const char* json, um_graph** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = new um_graph{ultra::io::parse_graph(parse_text(json))};
  });
}

void um_graph_free(um_graph* g) { delete g; }

um_status um_graph_to_json(const um_graph* g, char** out) {
  return guard([&] { put_json(out, ultra::io::to_json(need(g, "g").value)); });
}

// ---- Reductions ----

um_status um_reduce_theta(const um_tree* t, const char* const* r, size_t r_count, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    const auto seq = rational_list(r, r_count, "r");
    slot = make_space(ultra::reduce::theta(need(t, "t").value, seq));
  });
}

um_status um_reduce_glue(const um_space* u, const char* const* d, size_t d_count,
                         const char* rbar, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    const DistanceSet ds = DistanceSet::of(rational_list(d, d_count, "D"));
    slot = make_space(ultra::reduce::glue_star(tree_of(u, "u"), ds, rational_arg(rbar, "rbar")));
  });
}

um_status um_reduce_tail(const um_space* x, const char* const* d, size_t d_count, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    const DistanceSet ds = DistanceSet::of(rational_list(d, d_count, "D"));
    slot = make_space(ultra::reduce::add_tail(tree_of(x, "x"), ds));
  });
}

um_status um_reduce_phi(const um_space* const* xs, size_t count, const char* r, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    const auto list = tree_list(xs, count, "xs");
    slot = make_space(ultra::reduce::phi_union(list, rational_arg(r, "r")));
  });
}

um_status um_reduce_decompose(const um_space* x, const char* const* d, size_t d_count,
                              um_space*** out, size_t* out_count) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    auto& n = need_out(out_count, "out_count");
    const DistanceSet ds = DistanceSet::of(rational_list(d, d_count, "D"));
    const auto parts = ultra::reduce::decompose(tree_of(x, "x"), ds);
    std::vector<std::unique_ptr<um_space>> owned;
    for (const BallTree& p : parts) owned.emplace_back(make_space(p));
    auto** arr = static_cast<um_space**>(std::calloc(owned.size() ? owned.size() : 1, sizeof(um_space*)));
    if (arr == nullptr) throw std::bad_alloc();
    for (std::size_t i = 0; i < owned.size(); ++i) arr[i] = owned[i].release();
    slot = arr;
    n = parts.size();
  });
}

um_status um_reduce_rank(const um_tree* t, const char* const* r, size_t r_count, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    const auto seq = rational_list(r, r_count, "r");
    slot = make_space(ultra::reduce::rank_space(need(t, "t").value, seq));
  });
}

um_status um_reduce_graph(const um_graph* g, const char* r, const char* rp, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = make_space(ultra::reduce::graph_space(need(g, "g").value, rational_arg(r, "r"),
                                                 rational_arg(rp, "rp")));
  });
}

um_status um_reduce_powerset(const char* const* x, size_t count, um_space** out) {
  return guard([&] {
    auto& slot = need_out(out, "out");
    slot = make_space(ultra::reduce::powerset_space(rational_list(x, count, "X")));
  });
}

um_status um_list_inj(const um_space* const* xs, size_t x_count, const um_space* const* ys,
                      size_t y_count, int* out) {
  return guard([&] {
    need_out(out, "out") =
        ultra::reduce::list_inj(tree_list(xs, x_count, "xs"), tree_list(ys, y_count, "ys"));
  });
}

um_status um_list_bij_isometric(const um_space* const* xs, size_t x_count,
                                const um_space* const* ys, size_t y_count, int* out) {
  return guard([&] {
    need_out(out, "out") = ultra::reduce::list_bij_isometric(tree_list(xs, x_count, "xs"),
                                                             tree_list(ys, y_count, "ys"));
  });
}

// ---- Verification ----

um_status um_property_names(char** out) {
  return guard([&] { put_json(out, Json(registry().names())); });
}

um_status um_verify(const char* property, uint64_t trials, uint64_t seed, const um_bounds* bounds,
                    unsigned threads, int with_timing, char** report_json, int* passed) {
  return guard([&] {
    require_property(property);
    auto& slot = need_out(report_json, "report_json");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const auto rep =
        ultra::lab::run_campaign(registry(), property, trials, seed, bounds_of(bounds), threads);
    slot = dup_string(ultra::lab::to_json(rep, with_timing != 0).dump());
    if (passed) *passed = rep.pass() ? 1 : 0;
  });
}

um_status um_replay(const char* property, uint64_t trial_seed, const um_bounds* bounds,
                    char** result_json, int* passed) {
  return guard([&] {
    require_property(property);
    auto& slot = need_out(result_json, "result_json");
    const auto r = ultra::lab::replay_trial(registry(), property, trial_seed, bounds_of(bounds));
    Json j = {{"property", property},
              {"trial_seed", std::to_string(trial_seed)},
              {"inputs", r.inputs},
              {"ok", r.ok}};
    if (!r.ok) {
      j["expected"] = r.expected;
      j["got"] = r.got;
    }
    slot = dup_string(j.dump());
    if (passed) *passed = r.ok ? 1 : 0;
  });
}

}  // extern "C"
