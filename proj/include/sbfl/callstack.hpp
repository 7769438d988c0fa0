#ifndef SBFL_CALLSTACK_HPP
#define SBFL_CALLSTACK_HPP

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sbfl/spectra.hpp"

namespace sbfl {

enum class EventKind : std::uint8_t { Enter, Exit };

struct CallEvent {
  EventKind kind = EventKind::Enter;
  std::string method;

  friend bool operator==(const CallEvent&, const CallEvent&) = default;
};

/// Enter/Exit records of one test, in execution order. The test driver frame
/// itself is not part of the trace.
struct TestTrace {
  std::string test;
  std::vector<CallEvent> events;

  friend bool operator==(const TestTrace&, const TestTrace&) = default;
};

/// Open frames at a snapshot, outermost first.
struct CallStack {
  std::vector<std::string> frames;

  friend auto operator<=>(const CallStack&, const CallStack&) = default;
};

/// When a stack snapshot is recorded.
enum class SnapshotPoint {
  Leaf,        // when a frame returns without having called anything
  EveryEnter,  // on every Enter event
};

/// How a method that occurs several times in one stack (recursion) counts.
enum class StackCounting {
  Presence,      // once per stack
  Multiplicity,  // once per occurrence
};

struct StackOptions {
  SnapshotPoint snapshot = SnapshotPoint::Leaf;
  StackCounting counting = StackCounting::Presence;
};

/// Throws Error{MalformedTrace} naming the test if an Exit does not match the
/// innermost open frame or frames remain open at the end.
void check_balanced(const TestTrace& trace);

/// Distinct stack snapshots of one test. Repeated call sequences (loops)
/// collapse; (a,g) and (b,g) stay distinct.
std::set<CallStack> unique_stacks(const TestTrace& trace, const StackOptions& options = {});

/// methods x traces matrix of non-negative counts, row-major. Column j
/// belongs to traces[j].
struct FrequencyMatrix {
  std::size_t num_methods = 0;
  std::size_t num_tests = 0;
  std::vector<std::uint32_t> counts;

  std::uint32_t at(std::size_t method, std::size_t test) const {
    return counts[method * num_tests + test];
  }
};

/// c[m][t] = number of unique stacks of traces[t] containing methods[m]
/// (per StackOptions::counting). Tests are processed in parallel.
/// Throws Error{Reference} for a method that is not in `methods`.
FrequencyMatrix frequency_matrix(std::span<const TestTrace> traces,
                                 std::span<const MethodId> methods,
                                 const StackOptions& options = {});

FrequencyMatrix frequency_matrix_serial(std::span<const TestTrace> traces,
                                        std::span<const MethodId> methods,
                                        const StackOptions& options = {});

/// Coverage implied by the traces: hit(m, t) = 1 iff m occurs in any event
/// of traces[t]. `outcomes[t]` is the outcome of traces[t].
HitSpectrum derive_hit_spectrum(std::span<const TestTrace> traces,
                                std::span<const MethodId> methods,
                                std::span<const Outcome> outcomes);

/// Reorders traces to match `tests` by id. Tests without a trace get an empty
/// one. Throws Error{Reference} for a trace whose test is unknown, or when a
/// test id has more than one trace.
std::vector<TestTrace> align_traces(std::span<const TestTrace> traces,
                                    std::span<const TestCase> tests);

}  // namespace sbfl

#endif  // SBFL_CALLSTACK_HPP
