// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ultra/lab.hpp"

using namespace ultra;
using namespace ultra::lab;

namespace {

constexpr Seed kSeed = 20260415;

struct Outcome {
  bool ok = true;
  std::string detail;

  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

void campaign(Outcome& out, const Registry& reg, const std::string& name, std::uint64_t trials,
              const std::function<bool(const CampaignReport&)>& extra = {},
              const std::string& extra_label = "") {
  const CampaignReport r = run_campaign(reg, name, trials, kSeed);
  std::string s = name + " " + std::to_string(r.trials) + " trials, " +
                  std::to_string(r.failures.size()) + " failures";
  if (r.positives + r.negatives > 0) {
    s += " (" + std::to_string(r.positives) + "+/" + std::to_string(r.negatives) + "-)";
  }
  bool ok = r.pass() && r.trials == trials;
  if (extra) {
    const bool e = extra(r);
    s += ", " + extra_label + (e ? " ok" : " NOT MET");
    ok = ok && e;
  }
  if (!r.pass()) {
    const Failure& f = r.failures.front();
    s += " [first: trial " + std::to_string(f.trial) + " expected " + f.expected + " got " + f.got +
         "]";
  }
  out.ok = out.ok && ok;
  out.note(s);
}

void exhaustive(Outcome& out, const std::string& label, const ExhaustiveReport& r) {
  std::string s = label + " " + std::to_string(r.cases) + " cases, " +
                  std::to_string(r.failures.size()) + " failures";
  if (!r.pass()) s += " [first: " + r.failures.front() + "]";
  out.ok = out.ok && r.pass() && r.cases > 0;
  out.note(s);
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const Registry reg = Registry::standard();
  const std::vector<Criterion> criteria = {
      {1, "canonical code equality matches brute isometry", 60,
       [&](Outcome& o) {
         exhaustive(o, "exhaustive <=4 points over {1,3,7}", exhaustive_canon_vs_brute({1, 3, 7}, 4));
         campaign(o, reg, "canon-vs-brute", 2000);
       }},
      {2, "embeds matches brute embedding", 120,
       [&](Outcome& o) { campaign(o, reg, "embed-vs-brute", 2000); }},
      {3, "theta preserves and reflects iso and embedding", 60,
       [&](Outcome& o) {
         campaign(o, reg, "theta-iso", 1000);
         campaign(o, reg, "theta-embed", 1000);
       }},
      {4, "level characterization matches two-way flow", 30,
       [&](Outcome& o) {
         campaign(
             o, reg, "inj-flow-vs-char", 2000,
             [](const CampaignReport& r) {
               const auto it = r.counters.find("omega_total");
               return it != r.counters.end() && it->second >= 500;
             },
             ">=500 omega-total instances");
       }},
      {5, "cone-split comparison matches flow", 30,
       [&](Outcome& o) { campaign(o, reg, "inj-flow-vs-wqo", 2000); }},
      {6, "class counts decide comparison over equivalences", 30,
       [&](Outcome& o) { campaign(o, reg, "inj-counts-equiv", 2000); }},
      {7, "union and decomposition match list matchings", 120,
       [&](Outcome& o) {
         campaign(o, reg, "phi-union", 500);
         campaign(o, reg, "decompose", 500);
       }},
      {8, "tail and glue constructions preserve and reflect", 120,
       [&](Outcome& o) {
         campaign(o, reg, "add-tail-iso", 500);
         campaign(o, reg, "add-tail-embed", 500);
         campaign(o, reg, "glue-star", 500);
       }},
      {9, "rank space preserves and reflects tree iso", 60,
       [&](Outcome& o) { campaign(o, reg, "rank-tree", 500); }},
      {10, "subset order matches embedding of canonical spaces", 30,
       [&](Outcome& o) {
         const ExhaustiveReport r = exhaustive_powerset_embed({1, 2, 3, 5, 8});
         exhaustive(o, "all subset pairs of {1,2,3,5,8}", r);
         if (r.cases != 1024) {
           o.ok = false;
           o.note("expected 1024 cases");
         }
       }},
      {11, "graph metric preserves and reflects iso and embedding", 120,
       [&](Outcome& o) {
         campaign(o, reg, "graph-metric-iso", 500);
         campaign(o, reg, "graph-metric-embed", 500);
       }},
      {12, "triangles, support comparison, iteration levels", 30,
       [&](Outcome& o) {
         exhaustive(o, "triangle audit vs well-spacedness", exhaustive_triangle_wellspaced(5));
         campaign(o, reg, "triangle-wellspaced", 500);
         campaign(o, reg, "cf-support-only", 2000);
         campaign(o, reg, "iterate-sanity", 2000);
         campaign(o, reg, "witness-levels", 2000);
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %2d %s: %s; %.2fs (budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
