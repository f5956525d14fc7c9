#include <doctest.h>

#include <string>

#include "ultra/error.hpp"
#include "ultra/io.hpp"
#include "ultra/lab.hpp"

using namespace ultra;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& message, const std::string& piece) {
  return message.find(piece) != std::string::npos;
}

}  // namespace

TEST_CASE("malformed JSON reports a byte offset") {
  const std::string m = error_of([] { io::parse_json("{\"kind\": "); });
  CHECK(mentions(m, "byte"));
}

TEST_CASE("matrix files") {
  const Json j = io::parse_json(R"({"kind":"matrix","matrix":[["0","1/2"],["1/2","0"]]})");
  const io::Space s = io::parse_space(j);
  CHECK(s.metric.at(0, 1) == Rational(1, 2));
  REQUIRE(s.tree);
  CHECK(s.tree->label() == Rational(1, 2));

  const Json path = io::parse_json(
      R"({"kind":"matrix","matrix":[["0","1","2"],["1","0","1"],["2","1","0"]]})");
  CHECK_FALSE(io::parse_space(path).tree);
  CHECK(mentions(error_of([&] { io::parse_ultrametric(path); }), "ultrametric"));
}

TEST_CASE("rejections carry their location") {
  CHECK(mentions(error_of([] {
          io::parse_space(io::parse_json(R"({"kind":"matrix","matrix":[["0","2/4"],["2/4","0"]]})"));
        }),
        "/matrix/0/1"));
  CHECK(mentions(error_of([] {
          io::parse_space(io::parse_json(R"({"kind":"matrix","matrix":[["0","1"],["1"]]})"));
        }),
        "/matrix/1"));
  CHECK(mentions(error_of([] {
          io::parse_space(io::parse_json(R"({"kind":"matrix","matrix":[["0","-1"],["-1","0"]]})"));
        }),
        "negative"));
  CHECK(mentions(error_of([] {
          io::parse_space(io::parse_json(R"({"kind":"matrix","matrix":[["0",1],[1,"0"]]})"));
        }),
        "/matrix/0/1"));
  CHECK(mentions(error_of([] { io::parse_space(io::parse_json(R"({"kind":"blob"})")); }), "/kind"));
  CHECK(mentions(error_of([] {
          io::parse_space(io::parse_json(
              R"({"kind":"balltree","tree":{"label":"1","children":[{"leaf":"a"},{"leaf":"a"}]}})"));
        }),
        "duplicate"));
  CHECK(mentions(error_of([] {
          io::parse_space(io::parse_json(
              R"({"kind":"balltree","tree":{"label":"1","children":[{"leaf":"a"}]}})"));
        }),
        "/tree"));
  CHECK(mentions(error_of([] { io::parse_tree(io::parse_json(R"({"parents":[null,1]})")); }),
                 "/parents/1"));
  CHECK(mentions(error_of([] { io::parse_graph(io::parse_json(R"({"n":2,"edges":[[0,2]]})")); }),
                 "/edges/0"));
  const qo::QuasiOrder s = qo::QuasiOrder::closure(2, {});
  CHECK(mentions(error_of([&] { io::parse_multiset(io::parse_json(R"({"mults":{"01":1}})"), s); }),
                 "/mults/01"));
  CHECK(mentions(error_of([&] { io::parse_multiset(io::parse_json(R"({"mults":{"0":0}})"), s); }),
                 "/mults/0"));
  CHECK(mentions(error_of([&] { io::parse_multiset(io::parse_json(R"({"mults":{"2":1}})"), s); }),
                 "/mults/2"));
  CHECK(mentions(error_of([&] { io::parse_multiset(io::parse_json(R"({"mults":{}})"), s); }),
                 "/mults"));
}

TEST_CASE("round trips") {
  lab::Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    const BallTree t = lab::gen_ball_tree(rng, lab::gen_distance_set(rng, 3), 7);
    const BallTree back = io::parse_ultrametric(io::parse_json(io::to_json(t).dump()));
    CHECK(back.code() == t.code());
    CHECK(back.points() == t.points());
    const FiniteMetric m = from_ball_tree(t);
    const io::Space sm = io::parse_space(io::parse_json(io::to_json(m).dump()));
    CHECK(sm.metric == m);

    const reduce::RootedTree tree = lab::gen_tree(rng, 9);
    CHECK(io::parse_tree(io::parse_json(io::to_json(tree).dump())) == tree);
    const reduce::Graph g = lab::gen_graph(rng, 6);
    CHECK(io::parse_graph(io::parse_json(io::to_json(g).dump())) == g);
    const qo::QuasiOrder s = lab::gen_qo(rng, 5, Rational(1, 3), true);
    const qo::QuasiOrder s2 = io::parse_qo(io::parse_json(io::to_json(s).dump()));
    CHECK(s2 == s);
    const qo::OmegaMultiset a = lab::gen_multiset(rng, s, 4, Rational(1, 2));
    CHECK(io::parse_multiset(io::parse_json(io::to_json(a).dump()), s2) == a);
  }
}

TEST_CASE("rational lists") {
  CHECK(io::parse_rational_list("0,1/2,3") == std::vector<Rational>{0, Rational(1, 2), 3});
  CHECK_THROWS_AS(io::parse_rational_list("1,,2"), InputError);
  CHECK_THROWS_AS(io::parse_rational_list("1,2/4"), InputError);
}
