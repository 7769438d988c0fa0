// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "sbfl/formulas.hpp"
#include "sbfl/metrics.hpp"
#include "sbfl/synthetic.hpp"

namespace {

sbfl::Subject big_subject(std::size_t methods, std::size_t tests) {
  sbfl::GeneratorParams p;
  p.seed = 1;
  p.methods = methods;
  p.tests = tests;
  p.tie_pressure = 0.4;
  return sbfl::generate_subject(p).subject;
}

std::vector<sbfl::Subject> corpus(std::size_t n) {
  std::vector<sbfl::Subject> out;
  for (std::size_t i = 0; i < n; ++i) {
    sbfl::GeneratorParams p;
    p.seed = i;
    p.methods = 40;
    p.tests = 60;
    out.push_back(sbfl::generate_subject(p).subject);
  }
  return out;
}

template <bool Parallel>
void BM_Counters(benchmark::State& state) {
  const auto s = big_subject(200, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto c = Parallel ? sbfl::compute_counters(s.spectrum) : sbfl::compute_counters_serial(s.spectrum);
    benchmark::DoNotOptimize(c.data());
  }
}

template <bool Parallel>
void BM_Scores(benchmark::State& state) {
  std::vector<sbfl::Counters> counters(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < counters.size(); ++i) {
    const auto k = static_cast<std::uint32_t>(i);
    counters[i] = {1 + k % 13, k % 29, k % 7, k % 31};
  }
  const sbfl::Formula f{sbfl::FormulaKind::Ochiai, 2};
  for (auto _ : state) {
    auto s = Parallel ? sbfl::score_all(f, counters) : sbfl::score_all_serial(f, counters);
    benchmark::DoNotOptimize(s.data());
  }
}

template <bool Parallel>
void BM_Frequency(benchmark::State& state) {
  const auto s = big_subject(120, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto m = Parallel ? sbfl::frequency_matrix(s.traces, s.spectrum.methods)
                      : sbfl::frequency_matrix_serial(s.traces, s.spectrum.methods);
    benchmark::DoNotOptimize(m.counts.data());
  }
}

template <bool Parallel>
void BM_Evaluate(benchmark::State& state) {
  const auto subjects = corpus(static_cast<std::size_t>(state.range(0)));
  const sbfl::PipelineOptions options;
  for (auto _ : state) {
    auto r = Parallel ? sbfl::evaluate(subjects, options) : sbfl::evaluate_serial(subjects, options);
    benchmark::DoNotOptimize(r.avg_rank_after);
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_Counters, false)->Arg(100)->Arg(500);
BENCHMARK_TEMPLATE(BM_Counters, true)->Arg(100)->Arg(500);
BENCHMARK_TEMPLATE(BM_Scores, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_TEMPLATE(BM_Scores, true)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_TEMPLATE(BM_Frequency, false)->Arg(100)->Arg(400);
BENCHMARK_TEMPLATE(BM_Frequency, true)->Arg(100)->Arg(400);
BENCHMARK_TEMPLATE(BM_Evaluate, false)->Arg(64);
BENCHMARK_TEMPLATE(BM_Evaluate, true)->Arg(64);

BENCHMARK_MAIN();
