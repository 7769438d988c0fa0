#include "sbfl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "sbfl/error.hpp"

namespace sbfl {

namespace {

constexpr std::size_t kMaxPrimaryDepth = 7;
constexpr std::size_t kMaxChildren = 6;
constexpr double kChildProbability = 0.35;

struct CallGraph {
  std::vector<std::size_t> primaries;
  std::vector<std::vector<std::size_t>> shadows;  // per method, callees that mirror it
  std::vector<std::size_t> leader;                // shadow -> leader; primary -> itself
};

class TraceBuilder {
 public:
  TraceBuilder(const CallGraph& graph, const std::vector<MethodId>& methods, std::mt19937_64& rng)
      : graph_(graph), methods_(methods), rng_(rng) {}

  void call(std::size_t primary, std::size_t depth, std::vector<CallEvent>& out) {
    out.push_back({EventKind::Enter, methods_[primary].id});
    for (std::size_t s : graph_.shadows[primary]) {
      out.push_back({EventKind::Enter, methods_[s].id});
      out.push_back({EventKind::Exit, methods_[s].id});
    }
    if (depth < kMaxPrimaryDepth) {
      std::bernoulli_distribution spawn(kChildProbability / static_cast<double>(depth));
      for (std::size_t slot = 0; slot < kMaxChildren; ++slot) {
        if (spawn(rng_)) call(pick_primary(), depth + 1, out);
      }
    }
    out.push_back({EventKind::Exit, methods_[primary].id});
  }

  std::size_t pick_primary() {
    std::uniform_int_distribution<std::size_t> pick(0, graph_.primaries.size() - 1);
    return graph_.primaries[pick(rng_)];
  }

 private:
  const CallGraph& graph_;
  const std::vector<MethodId>& methods_;
  std::mt19937_64& rng_;
};

bool executes(const TestTrace& trace, const std::string& method) {
  return std::any_of(trace.events.begin(), trace.events.end(),
                     [&](const CallEvent& e) { return e.method == method; });
}

}  // namespace

SyntheticSubject generate_subject(const GeneratorParams& p) {
  if (p.methods < 2 || p.methods > 200) {
    throw Error(ErrorKind::Generation, "methods must be in [2, 200]");
  }
  if (p.tests < 2 || p.tests > 500) throw Error(ErrorKind::Generation, "tests must be in [2, 500]");
  if (p.faults < 1 || p.faults > p.methods) {
    throw Error(ErrorKind::Generation, "faults must be in [1, methods]");
  }
  if (!(p.tie_pressure >= 0.0 && p.tie_pressure <= 1.0)) {
    throw Error(ErrorKind::Generation, "tie_pressure must be in [0, 1]");
  }

  std::mt19937_64 rng(p.seed);
  std::vector<MethodId> methods;
  methods.reserve(p.methods);
  for (std::size_t i = 0; i < p.methods; ++i) methods.push_back({"m" + std::to_string(i), ""});

  CallGraph graph;
  graph.shadows.resize(p.methods);
  graph.leader.resize(p.methods);
  graph.primaries.push_back(0);
  graph.leader[0] = 0;
  std::bernoulli_distribution shadow(p.tie_pressure);
  for (std::size_t i = 1; i < p.methods; ++i) {
    if (shadow(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, graph.primaries.size() - 1);
      graph.leader[i] = graph.primaries[pick(rng)];
      graph.shadows[graph.leader[i]].push_back(i);
    } else {
      graph.leader[i] = i;
      graph.primaries.push_back(i);
    }
  }

  std::vector<std::size_t> fault_pool(p.methods);
  std::iota(fault_pool.begin(), fault_pool.end(), std::size_t{0});
  std::shuffle(fault_pool.begin(), fault_pool.end(), rng);
  fault_pool.resize(p.faults);
  std::sort(fault_pool.begin(), fault_pool.end());

  TraceBuilder builder(graph, methods, rng);
  std::vector<TestTrace> traces(p.tests);
  std::uniform_int_distribution<std::size_t> roots(1, 3);
  for (std::size_t t = 0; t < p.tests; ++t) {
    traces[t].test = "t" + std::to_string(t);
    const std::size_t n = roots(rng);
    for (std::size_t r = 0; r < n; ++r) builder.call(builder.pick_primary(), 1, traces[t].events);
  }

  std::uniform_int_distribution<std::size_t> any_test(0, p.tests - 1);
  for (std::size_t f : fault_pool) {
    const bool covered = std::any_of(traces.begin(), traces.end(), [&](const TestTrace& tr) {
      return executes(tr, methods[f].id);
    });
    if (!covered) builder.call(graph.leader[f], 1, traces[any_test(rng)].events);
  }

  std::vector<Outcome> outcomes(p.tests, Outcome::Passed);
  for (std::size_t t = 0; t < p.tests; ++t) {
    for (std::size_t f : fault_pool) {
      if (executes(traces[t], methods[f].id)) outcomes[t] = Outcome::Failed;
    }
  }

  SyntheticSubject out;
  out.seed = p.seed;
  out.subject.name = "synthetic-" + std::to_string(p.seed);
  out.subject.spectrum = derive_hit_spectrum(traces, methods, outcomes);
  out.subject.traces = std::move(traces);
  out.subject.faults.faulty = std::move(fault_pool);
  return out;
}

std::vector<OracleRanks> oracle_rank(std::span<const double> scores,
                                     std::span<const std::uint64_t> phi) {
  using Key = std::tuple<double, std::uint64_t, std::size_t>;
  std::vector<Key> keys;
  keys.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    keys.emplace_back(scores[i], i < phi.size() ? phi[i] : 0, i);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });

  std::vector<OracleRanks> out(scores.size());
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i;
    while (j + 1 < keys.size() && std::get<0>(keys[j + 1]) == std::get<0>(keys[i]) &&
           std::get<1>(keys[j + 1]) == std::get<1>(keys[i])) {
      ++j;
    }
    // positions i+1 .. j+1; the average of a contiguous block is its midpoint
    std::int64_t position_sum = 0;
    for (std::size_t k = i; k <= j; ++k) position_sum += static_cast<std::int64_t>(k + 1);
    const auto block = static_cast<std::int64_t>(j - i + 1);
    for (std::size_t k = i; k <= j; ++k) {
      auto& r = out[std::get<2>(keys[k])];
      r.min = Rank::from_position(static_cast<std::int64_t>(i + 1));
      r.max = Rank::from_position(static_cast<std::int64_t>(j + 1));
      r.mid = Rank::from_twice(2 * position_sum / block);
    }
    i = j + 1;
  }
  return out;
}

}  // namespace sbfl
