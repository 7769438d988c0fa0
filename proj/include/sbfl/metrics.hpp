#ifndef SBFL_METRICS_HPP
#define SBFL_METRICS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbfl/callstack.hpp"
#include "sbfl/formulas.hpp"
#include "sbfl/ranking.hpp"
#include "sbfl/subject.hpp"
#include "sbfl/tiebreak.hpp"

namespace sbfl {

/// Share of superfluous tie members removed, in percent:
/// (1 - (after - 1) / (before - 1)) * 100.
/// Throws Error{UndefinedMetric} unless before >= 2 and 1 <= after <= before.
double tie_reduction(std::size_t size_before, std::size_t size_after);

enum class MoveCategory { Best, Better, Same, Worse, Worst };
inline constexpr std::size_t kNumMoveCategories = 5;

std::string_view move_category_name(MoveCategory c);

/// Where a fault went after tie-breaking, relative to its old tie. Checked in
/// the order Same (B_mid == A_mid), Best (A_mid == B_min), Worst
/// (A_mid == B_max), Better (A_mid < B_mid), Worse (A_mid > B_mid).
/// Throws Error{LocalityViolation} when A_mid lies outside [B_min, B_max].
MoveCategory classify_move(const RankTriple& before, Rank after_mid);

/// Non-accumulating Top-N buckets: [1], (1,3], (3,5], (5,10], (10,...).
enum class TopNInterval { First, UpTo3, UpTo5, UpTo10, Other };
inline constexpr std::size_t kNumTopNIntervals = 5;
inline constexpr std::array<std::int64_t, 4> kTopNThresholds = {1, 3, 5, 10};

std::string_view interval_name(TopNInterval i);

struct TopNMembership {
  std::array<bool, 4> within{};  // Top-1, Top-3, Top-5, Top-10
  bool other = false;            // rank > 10
  TopNInterval interval = TopNInterval::Other;
};

/// Half-integral ranks compare numerically: 3.5 is not Top-3.
TopNMembership top_n(Rank rank);

/// Per-bug before/after facts. A bug is represented by its best-ranked fault.
struct BugOutcome {
  std::string subject;
  std::size_t fault_before = 0;
  std::size_t fault_after = 0;
  RankTriple before;
  RankTriple after;
  std::size_t tie_size_before = 1;
  std::size_t tie_size_after = 1;
  bool critical_before = false;
  bool critical_after = false;
  bool strict_max_phi = false;  // some fault has strictly maximal φ in its old critical tie
  std::size_t ties_before = 0;  // groups of size >= 2 in the whole ranking
  std::size_t ties_after = 0;
  std::optional<double> tie_reduction;  // set when critical_before
  MoveCategory move = MoveCategory::Same;
};

/// Compares a ranking with its tie-broken refinement for one bug.
BugOutcome assess_bug(const Ranking& before, const BrokenRanking& after, const FaultSet& faults,
                      std::span<const std::uint64_t> phi);

struct TieStats {
  std::size_t bugs = 0;
  std::size_t tie_count = 0;
  double avg_ties_per_bug = 0.0;
  std::size_t critical_tie_count = 0;
  double critical_pct = 0.0;
  std::vector<std::size_t> critical_tie_sizes;
  std::size_t min_neq_mid_count = 0;
  double rank_diff_sum = 0.0;  // sum of MID - MIN over critical-tie bugs
  double avg_diff = 0.0;
};

struct CategorySummary {
  std::size_t count = 0;
  double avg_diff = 0.0;  // mean of A_mid - B_mid
};

struct TopNTable {
  std::array<std::size_t, 5> cumulative_before{};  // Top-1, Top-3, Top-5, Top-10, Other
  std::array<std::size_t, 5> cumulative_after{};
  std::array<std::array<std::size_t, kNumTopNIntervals>, kNumTopNIntervals> transitions{};
  std::array<std::size_t, kNumTopNIntervals> improved_from{};
  std::array<std::size_t, kNumTopNIntervals> worsened_from{};
  std::size_t improved = 0;
  std::size_t worsened = 0;
};

struct EvalReport {
  Formula formula;
  bool tiebreak = true;
  std::size_t bugs = 0;
  TieStats before;
  TieStats after;
  std::vector<double> tie_reductions;  // one per critical-tie bug
  double tie_reduction_mean = 0.0;
  double tie_reduction_median = 0.0;
  double tie_reduction_q1 = 0.0;
  double avg_rank_before = 0.0;
  double avg_rank_after = 0.0;
  double avg_rank_diff = 0.0;
  std::array<CategorySummary, kNumMoveCategories> categories{};
  CategorySummary improve;      // Best + Better
  CategorySummary deteriorate;  // Worse + Worst
  TopNTable top_n;
  std::vector<BugOutcome> outcomes;
};

/// Linear-interpolation quantile (p in [0, 1]) of an unsorted sample.
double quantile(std::vector<double> sample, double p);

/// Aggregates per-bug outcomes into a report.
EvalReport summarize(std::span<const BugOutcome> outcomes, const Formula& formula, bool tiebreak);

struct PipelineOptions {
  Formula formula;
  bool tiebreak = true;
  StackOptions stacks;
};

/// Every intermediate of the two-stage process for one subject.
struct SubjectAnalysis {
  std::vector<Counters> counters;
  std::vector<double> scores;
  Ranking before;
  FrequencyMatrix frequency;
  Phi phi;
  BrokenRanking after;
  BugOutcome outcome;
};

/// Stage 1: counters, scores, ranking. Stage 2: frequency matrix, φ and the
/// refined ranking. Then per-bug metrics, when the subject has faults.
SubjectAnalysis analyze_subject(const Subject& subject, const PipelineOptions& options);

/// Evaluates every subject, `jobs` at a time (0 = OpenMP default).
EvalReport evaluate(std::span<const Subject> subjects, const PipelineOptions& options,
                    int jobs = 0);

EvalReport evaluate_serial(std::span<const Subject> subjects, const PipelineOptions& options);

}  // namespace sbfl

#endif  // SBFL_METRICS_HPP
