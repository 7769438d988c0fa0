#include "sbfl/callstack.hpp"

#include <algorithm>
#include <exception>
#include <unordered_map>

#include "sbfl/error.hpp"

namespace sbfl {

namespace {

std::unordered_map<std::string, std::size_t> index_methods(std::span<const MethodId> methods) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) index.emplace(methods[i].id, i);
  return index;
}

std::size_t lookup(const std::unordered_map<std::string, std::size_t>& index,
                   const std::string& method, const std::string& test) {
  const auto it = index.find(method);
  if (it == index.end()) {
    throw Error(ErrorKind::Reference,
                "trace of test '" + test + "' references unknown method '" + method + "'");
  }
  return it->second;
}

// One column of the frequency matrix.
void count_column(const TestTrace& trace,
                  const std::unordered_map<std::string, std::size_t>& index,
                  const StackOptions& options, std::size_t column, std::size_t num_tests,
                  std::vector<std::uint32_t>& counts) {
  std::vector<std::size_t> seen;
  for (const auto& stack : unique_stacks(trace, options)) {
    seen.clear();
    for (const auto& frame : stack.frames) {
      const std::size_t m = lookup(index, frame, trace.test);
      if (options.counting == StackCounting::Presence) {
        if (std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
        seen.push_back(m);
      }
      ++counts[m * num_tests + column];
    }
  }
}

FrequencyMatrix empty_matrix(std::size_t methods, std::size_t tests) {
  return FrequencyMatrix{methods, tests, std::vector<std::uint32_t>(methods * tests, 0)};
}

}  // namespace

void check_balanced(const TestTrace& trace) {
  std::vector<const std::string*> open;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& ev = trace.events[i];
    if (ev.kind == EventKind::Enter) {
      open.push_back(&ev.method);
      continue;
    }
    if (open.empty()) {
      throw Error(ErrorKind::MalformedTrace, "test '" + trace.test + "': exit of '" + ev.method +
                                                 "' at event " + std::to_string(i + 1) +
                                                 " with no open frame");
    }
    if (*open.back() != ev.method) {
      throw Error(ErrorKind::MalformedTrace, "test '" + trace.test + "': exit of '" + ev.method +
                                                 "' at event " + std::to_string(i + 1) +
                                                 " does not match open frame '" + *open.back() +
                                                 "'");
    }
    open.pop_back();
  }
  if (!open.empty()) {
    throw Error(ErrorKind::MalformedTrace, "test '" + trace.test + "': " +
                                               std::to_string(open.size()) +
                                               " frame(s) still open at end of trace");
  }
}

std::set<CallStack> unique_stacks(const TestTrace& trace, const StackOptions& options) {
  check_balanced(trace);
  std::set<CallStack> stacks;
  CallStack current;
  bool leaf = false;  // innermost frame has not called anything yet
  for (const auto& ev : trace.events) {
    if (ev.kind == EventKind::Enter) {
      current.frames.push_back(ev.method);
      if (options.snapshot == SnapshotPoint::EveryEnter) stacks.insert(current);
      leaf = true;
    } else {
      if (options.snapshot == SnapshotPoint::Leaf && leaf) stacks.insert(current);
      current.frames.pop_back();
      leaf = false;
    }
  }
  return stacks;
}

FrequencyMatrix frequency_matrix(std::span<const TestTrace> traces,
                                 std::span<const MethodId> methods, const StackOptions& options) {
  const auto index = index_methods(methods);
  FrequencyMatrix fm = empty_matrix(methods.size(), traces.size());
  const auto n = static_cast<std::ptrdiff_t>(traces.size());

  // Columns are disjoint, so writers never collide. Exceptions cannot cross
  // the parallel region; the first one is rethrown afterwards.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    try {
      count_column(traces[static_cast<std::size_t>(t)], index, options,
                   static_cast<std::size_t>(t), traces.size(), fm.counts);
    } catch (...) {
#pragma omp critical(sbfl_frequency_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return fm;
}

FrequencyMatrix frequency_matrix_serial(std::span<const TestTrace> traces,
                                        std::span<const MethodId> methods,
                                        const StackOptions& options) {
  const auto index = index_methods(methods);
  FrequencyMatrix fm = empty_matrix(methods.size(), traces.size());
  for (std::size_t t = 0; t < traces.size(); ++t) {
    count_column(traces[t], index, options, t, traces.size(), fm.counts);
  }
  return fm;
}

HitSpectrum derive_hit_spectrum(std::span<const TestTrace> traces,
                                std::span<const MethodId> methods,
                                std::span<const Outcome> outcomes) {
  if (outcomes.size() != traces.size()) {
    throw Error(ErrorKind::Structural, "outcome count does not match trace count");
  }
  const auto index = index_methods(methods);
  HitSpectrum spectrum;
  spectrum.methods.assign(methods.begin(), methods.end());
  spectrum.tests.reserve(traces.size());
  for (std::size_t t = 0; t < traces.size(); ++t) {
    check_balanced(traces[t]);
    spectrum.tests.push_back(TestCase{traces[t].test, outcomes[t]});
  }
  spectrum.hits.assign(methods.size() * traces.size(), 0);
  for (std::size_t t = 0; t < traces.size(); ++t) {
    for (const auto& ev : traces[t].events) {
      spectrum.hits[lookup(index, ev.method, traces[t].test) * traces.size() + t] = 1;
    }
  }
  return spectrum;
}

std::vector<TestTrace> align_traces(std::span<const TestTrace> traces,
                                    std::span<const TestCase> tests) {
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t t = 0; t < tests.size(); ++t) column.emplace(tests[t].id, t);

  std::vector<TestTrace> aligned(tests.size());
  std::vector<bool> filled(tests.size(), false);
  for (std::size_t t = 0; t < tests.size(); ++t) aligned[t].test = tests[t].id;
  for (const auto& trace : traces) {
    const auto it = column.find(trace.test);
    if (it == column.end()) {
      throw Error(ErrorKind::Reference, "trace for unknown test '" + trace.test + "'");
    }
    if (filled[it->second]) {
      throw Error(ErrorKind::Reference, "more than one trace for test '" + trace.test + "'");
    }
    filled[it->second] = true;
    aligned[it->second].events = trace.events;
  }
  return aligned;
}

}  // namespace sbfl
