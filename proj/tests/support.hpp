#ifndef SBFL_TESTS_SUPPORT_HPP
#define SBFL_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sbfl/callstack.hpp"
#include "sbfl/spectra.hpp"
#include "sbfl/subject.hpp"

namespace sbfl::testing {

// Four methods a, b, f, g; tests t1, t2 fail, t3, t4 pass. Fault g.
inline Subject running_example() {
  Subject s;
  s.name = "running_example";
  for (const char* id : {"a", "b", "f", "g"}) s.spectrum.methods.push_back({id, ""});
  s.spectrum.tests = {{"t1", Outcome::Failed},
                      {"t2", Outcome::Failed},
                      {"t3", Outcome::Passed},
                      {"t4", Outcome::Passed}};
  s.spectrum.hits = {1, 1, 1, 1,   // a
                     1, 1, 1, 1,   // b
                     1, 0, 0, 1,   // f
                     1, 1, 1, 1};  // g

  auto enter = [](const char* m) { return CallEvent{EventKind::Enter, m}; };
  auto exit = [](const char* m) { return CallEvent{EventKind::Exit, m}; };
  s.traces = {
      {"t1", {enter("a"), enter("f"), exit("f"), enter("g"), exit("g"), exit("a"),
              enter("b"), enter("g"), exit("g"), exit("b")}},
      {"t2", {enter("a"), enter("g"), exit("g"), exit("a"), enter("b"), enter("g"), exit("g"),
              exit("b")}},
      {"t3", {enter("a"), enter("b"), enter("g"), exit("g"), exit("b"), exit("a")}},
      {"t4", {enter("a"), enter("f"), exit("f"), exit("a"), enter("a"), enter("g"), exit("g"),
              exit("a"), enter("a"), enter("b"), enter("g"), exit("g"), exit("b"), exit("a")}},
  };
  s.faults.faulty = {3};
  return s;
}

inline std::vector<MethodId> method_ids(std::size_t n) {
  std::vector<MethodId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({"m" + std::to_string(i), ""});
  return out;
}

// Uniform random 0/1 spectrum with at least one failing test.
inline HitSpectrum random_spectrum(std::mt19937_64& rng, std::size_t methods, std::size_t tests) {
  HitSpectrum s;
  s.methods = method_ids(methods);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t t = 0; t < tests; ++t) {
    s.tests.push_back({"t" + std::to_string(t), coin(rng) ? Outcome::Failed : Outcome::Passed});
  }
  s.tests.front().outcome = Outcome::Failed;
  for (std::size_t i = 0; i < methods * tests; ++i) s.hits.push_back(coin(rng) ? 1 : 0);
  return s;
}

// Random balanced trace over `methods` with recursion and repeated calls.
inline TestTrace random_trace(std::mt19937_64& rng, const std::string& test,
                              std::size_t methods, std::size_t max_events = 40) {
  TestTrace trace{test, {}};
  std::vector<std::string> open;
  std::uniform_int_distribution<std::size_t> pick(0, methods - 1);
  std::bernoulli_distribution push(0.55);
  while (trace.events.size() < max_events) {
    if (open.empty() || (push(rng) && open.size() < 6)) {
      const std::string m = "m" + std::to_string(pick(rng));
      open.push_back(m);
      trace.events.push_back({EventKind::Enter, m});
    } else {
      trace.events.push_back({EventKind::Exit, open.back()});
      open.pop_back();
    }
  }
  while (!open.empty()) {
    trace.events.push_back({EventKind::Exit, open.back()});
    open.pop_back();
  }
  return trace;
}

}  // namespace sbfl::testing

#endif  // SBFL_TESTS_SUPPORT_HPP
