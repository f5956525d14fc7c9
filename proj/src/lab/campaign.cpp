#include <chrono>
#include <thread>

#include "ultra/error.hpp"
#include "ultra/lab.hpp"

namespace ultra::lab {

namespace {

struct TrialOutcome {
  std::uint64_t trial;
  Seed trial_seed;
  TrialResult result;
};

TrialResult run_guarded(const PropertyFn& fn, Seed trial_seed, const Bounds& bounds) {
  Rng rng(trial_seed);
  try {
    return fn(rng, bounds);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    TrialResult r;
    r.ok = false;
    r.expected = "no exception";
    r.got = std::string("exception: ") + e.what();
    return r;
  }
}

void merge(CampaignReport& rep, TrialOutcome&& o) {
  const TrialResult& r = o.result;
  if (r.positive) ++(*r.positive ? rep.positives : rep.negatives);
  for (const std::string& tag : r.tags) ++rep.counters[tag];
  if (!r.ok) {
    rep.failures.push_back(
        {o.trial, o.trial_seed, std::move(o.result.inputs), r.expected, r.got});
  }
}

}  // namespace

CampaignReport run_campaign(const Registry& registry, const std::string& property,
                            std::uint64_t trials, Seed seed, const Bounds& bounds,
                            unsigned threads) {
  const PropertyFn& fn = registry.get(property);
  const auto start = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.property = property;
  rep.trials = trials;
  rep.seed = seed;

  threads = std::max(1u, threads);
  if (trials < 2 * static_cast<std::uint64_t>(threads)) threads = 1;
  std::vector<std::vector<TrialOutcome>> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned part) {
    const std::uint64_t lo = trials * part / threads;
    const std::uint64_t hi = trials * (part + 1) / threads;
    try {
      for (std::uint64_t i = lo; i < hi; ++i) {
        const Seed s = mix_seed(seed, i);
        TrialResult r = run_guarded(fn, s, bounds);
        r.inputs["trial_seed"] = std::to_string(s);
        parts[part].push_back({i, s, std::move(r)});
      }
    } catch (...) {
      errors[part] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned p = 0; p < threads; ++p) pool.emplace_back(work, p);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& part : parts) {
    for (auto& o : part) merge(rep, std::move(o));
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

TrialResult replay_trial(const Registry& registry, const std::string& property, Seed trial_seed,
                         const Bounds& bounds) {
  return run_guarded(registry.get(property), trial_seed, bounds);
}

io::Json to_json(const CampaignReport& r, bool with_timing) {
  io::Json failures = io::Json::array();
  for (const Failure& f : r.failures) {
    failures.push_back({{"trial", f.trial},
                        {"trial_seed", std::to_string(f.trial_seed)},
                        {"inputs", f.inputs},
                        {"expected", f.expected},
                        {"got", f.got}});
  }
  io::Json out = {{"property", r.property},
                  {"trials", r.trials},
                  {"seed", r.seed},
                  {"positives", r.positives},
                  {"negatives", r.negatives},
                  {"counters", r.counters},
                  {"failures", std::move(failures)},
                  {"pass", r.pass()}};
  if (with_timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

}  // namespace ultra::lab
