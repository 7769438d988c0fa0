#include "sbfl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sbfl/error.hpp"

namespace sbfl {

double tie_reduction(std::size_t size_before, std::size_t size_after) {
  if (size_before < 2) {
    throw Error(ErrorKind::UndefinedMetric,
                "tie reduction needs a tie of size >= 2, got " + std::to_string(size_before));
  }
  if (size_after < 1 || size_after > size_before) {
    throw Error(ErrorKind::UndefinedMetric, "tie size after (" + std::to_string(size_after) +
                                                ") must be in [1, " +
                                                std::to_string(size_before) + "]");
  }
  const double removed = static_cast<double>(size_after - 1) / static_cast<double>(size_before - 1);
  return (1.0 - removed) * 100.0;
}

std::string_view move_category_name(MoveCategory c) {
  switch (c) {
    case MoveCategory::Best: return "best";
    case MoveCategory::Better: return "better";
    case MoveCategory::Same: return "same";
    case MoveCategory::Worse: return "worse";
    case MoveCategory::Worst: return "worst";
  }
  return "?";
}

MoveCategory classify_move(const RankTriple& before, Rank after_mid) {
  if (after_mid < before.min || after_mid > before.max) {
    throw Error(ErrorKind::LocalityViolation,
                "rank after tie-breaking " + format_rank(after_mid) + " is outside [" +
                    format_rank(before.min) + ", " + format_rank(before.max) + "]");
  }
  if (after_mid == before.mid) return MoveCategory::Same;
  if (after_mid == before.min) return MoveCategory::Best;
  if (after_mid == before.max) return MoveCategory::Worst;
  return after_mid < before.mid ? MoveCategory::Better : MoveCategory::Worse;
}

std::string_view interval_name(TopNInterval i) {
  switch (i) {
    case TopNInterval::First: return "[1]";
    case TopNInterval::UpTo3: return "(1,3]";
    case TopNInterval::UpTo5: return "(3,5]";
    case TopNInterval::UpTo10: return "(5,10]";
    case TopNInterval::Other: return "Other";
  }
  return "?";
}

TopNMembership top_n(Rank rank) {
  TopNMembership m;
  std::size_t first_bucket = kTopNThresholds.size();
  for (std::size_t i = kTopNThresholds.size(); i-- > 0;) {
    m.within[i] = rank <= Rank::from_position(kTopNThresholds[i]);
    if (m.within[i]) first_bucket = i;
  }
  m.other = !m.within.back();
  m.interval = static_cast<TopNInterval>(first_bucket);
  return m;
}

namespace {

std::size_t count_ties(const Ranking& r) {
  return static_cast<std::size_t>(
      std::count_if(r.groups.begin(), r.groups.end(), [](const TieGroup& g) { return g.is_tie(); }));
}

bool is_critical(const Ranking& ranking, const FaultSet& faults, std::size_t fault) {
  for (const auto& info : classify_ties(ranking, faults).faults) {
    if (info.fault == fault) return info.is_critical;
  }
  return false;
}

double diff(const BugOutcome& b) { return b.after.mid.value() - b.before.mid.value(); }

TieStats tie_stats(std::span<const BugOutcome> outcomes, bool after) {
  TieStats s;
  s.bugs = outcomes.size();
  for (const auto& b : outcomes) {
    const RankTriple& r = after ? b.after : b.before;
    s.tie_count += after ? b.ties_after : b.ties_before;
    if (r.min != r.mid) ++s.min_neq_mid_count;
    if (after ? b.critical_after : b.critical_before) {
      ++s.critical_tie_count;
      s.critical_tie_sizes.push_back(after ? b.tie_size_after : b.tie_size_before);
      s.rank_diff_sum += r.mid.value() - r.min.value();
    }
  }
  if (s.bugs > 0) {
    s.avg_ties_per_bug = static_cast<double>(s.tie_count) / static_cast<double>(s.bugs);
    s.critical_pct = 100.0 * static_cast<double>(s.critical_tie_count) / static_cast<double>(s.bugs);
  }
  if (s.critical_tie_count > 0) {
    s.avg_diff = s.rank_diff_sum / static_cast<double>(s.critical_tie_count);
  }
  return s;
}

void add(CategorySummary& c, double d) {
  // avg_diff holds the running sum until finish().
  ++c.count;
  c.avg_diff += d;
}

void finish(CategorySummary& c) {
  if (c.count > 0) c.avg_diff /= static_cast<double>(c.count);
}

}  // namespace

BugOutcome assess_bug(const Ranking& before, const BrokenRanking& after, const FaultSet& faults,
                      std::span<const std::uint64_t> phi) {
  BugOutcome b;
  b.fault_before = best_fault(before, faults);
  b.fault_after = best_fault(after.ranking, faults);
  b.before = before.ranks[b.fault_before];
  b.after = after.ranking.ranks[b.fault_after];

  const TieGroup& old_group = before.group_containing(b.fault_before);
  b.tie_size_before = old_group.size();
  b.tie_size_after = after.ranking.group_containing(b.fault_after).size();
  b.critical_before = is_critical(before, faults, b.fault_before);
  b.critical_after = is_critical(after.ranking, faults, b.fault_after);
  b.ties_before = count_ties(before);
  b.ties_after = count_ties(after.ranking);
  b.move = classify_move(b.before, b.after.mid);

  if (b.critical_before) {
    b.tie_reduction = tie_reduction(b.tie_size_before, b.tie_size_after);
    if (!phi.empty()) {
      std::uint64_t top = 0;
      std::size_t holders = 0;
      bool fault_holds = false;
      for (std::size_t m : old_group.members) {
        if (phi[m] > top || holders == 0) {
          top = phi[m];
          holders = 0;
          fault_holds = false;
        }
        if (phi[m] == top) {
          ++holders;
          fault_holds = fault_holds || faults.contains(m);
        }
      }
      b.strict_max_phi = holders == 1 && fault_holds;
    }
  }
  return b;
}

double quantile(std::vector<double> sample, double p) {
  if (sample.empty()) return 0.0;
  std::sort(sample.begin(), sample.end());
  const double h = p * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

EvalReport summarize(std::span<const BugOutcome> outcomes, const Formula& formula, bool tiebreak) {
  EvalReport r;
  r.formula = formula;
  r.tiebreak = tiebreak;
  r.bugs = outcomes.size();
  r.before = tie_stats(outcomes, false);
  r.after = tie_stats(outcomes, true);
  r.outcomes.assign(outcomes.begin(), outcomes.end());

  double sum_before = 0.0;
  double sum_after = 0.0;
  for (const auto& b : outcomes) {
    sum_before += b.before.mid.value();
    sum_after += b.after.mid.value();
    if (b.tie_reduction) r.tie_reductions.push_back(*b.tie_reduction);

    const double d = diff(b);
    add(r.categories[static_cast<std::size_t>(b.move)], d);
    if (b.move == MoveCategory::Best || b.move == MoveCategory::Better) add(r.improve, d);
    if (b.move == MoveCategory::Worse || b.move == MoveCategory::Worst) add(r.deteriorate, d);

    const TopNMembership tb = top_n(b.before.mid);
    const TopNMembership ta = top_n(b.after.mid);
    for (std::size_t i = 0; i < 4; ++i) {
      r.top_n.cumulative_before[i] += tb.within[i] ? 1 : 0;
      r.top_n.cumulative_after[i] += ta.within[i] ? 1 : 0;
    }
    r.top_n.cumulative_before[4] += tb.other ? 1 : 0;
    r.top_n.cumulative_after[4] += ta.other ? 1 : 0;
    const auto from = static_cast<std::size_t>(tb.interval);
    const auto to = static_cast<std::size_t>(ta.interval);
    ++r.top_n.transitions[from][to];
    if (to < from) {
      ++r.top_n.improved_from[from];
      ++r.top_n.improved;
    } else if (to > from) {
      ++r.top_n.worsened_from[from];
      ++r.top_n.worsened;
    }
  }
  for (auto& c : r.categories) finish(c);
  finish(r.improve);
  finish(r.deteriorate);

  if (r.bugs > 0) {
    r.avg_rank_before = sum_before / static_cast<double>(r.bugs);
    r.avg_rank_after = sum_after / static_cast<double>(r.bugs);
    r.avg_rank_diff = r.avg_rank_after - r.avg_rank_before;
  }
  if (!r.tie_reductions.empty()) {
    r.tie_reduction_mean =
        std::accumulate(r.tie_reductions.begin(), r.tie_reductions.end(), 0.0) /
        static_cast<double>(r.tie_reductions.size());
    r.tie_reduction_median = quantile(r.tie_reductions, 0.5);
    r.tie_reduction_q1 = quantile(r.tie_reductions, 0.25);
  }
  return r;
}

SubjectAnalysis analyze_subject(const Subject& subject, const PipelineOptions& options) {
  SubjectAnalysis a;
  const auto& spectrum = subject.spectrum;

  a.counters = compute_counters(spectrum);
  a.scores = score_all(options.formula, a.counters);
  a.before = build_ranking(a.scores);

  std::vector<Outcome> outcomes;
  outcomes.reserve(spectrum.tests.size());
  for (const auto& t : spectrum.tests) outcomes.push_back(t.outcome);
  const auto traces = align_traces(subject.traces, spectrum.tests);
  a.frequency = frequency_matrix_serial(traces, spectrum.methods, options.stacks);
  a.phi = compute_phi(a.frequency, outcomes);
  a.after = options.tiebreak ? break_ties(a.before, a.phi) : unbroken(a.before);

  if (!subject.faults.faulty.empty()) {
    a.outcome = assess_bug(a.before, a.after, subject.faults, a.phi);
  }
  a.outcome.subject = subject.name;
  return a;
}

namespace {

BugOutcome bug_outcome(const Subject& subject, const PipelineOptions& options) {
  if (subject.faults.faulty.empty()) {
    throw Error(ErrorKind::EmptyInput, "subject '" + subject.name + "' has no faulty method");
  }
  return analyze_subject(subject, options).outcome;
}

}  // namespace

EvalReport evaluate(std::span<const Subject> subjects, const PipelineOptions& options, int jobs) {
  std::vector<BugOutcome> outcomes(subjects.size());
  const auto n = static_cast<std::ptrdiff_t>(subjects.size());
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
#endif
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      outcomes[static_cast<std::size_t>(i)] =
          bug_outcome(subjects[static_cast<std::size_t>(i)], options);
    } catch (...) {
#pragma omp critical(sbfl_evaluate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(outcomes, options.formula, options.tiebreak);
}

EvalReport evaluate_serial(std::span<const Subject> subjects, const PipelineOptions& options) {
  std::vector<BugOutcome> outcomes;
  outcomes.reserve(subjects.size());
  for (const auto& s : subjects) outcomes.push_back(bug_outcome(s, options));
  return summarize(outcomes, options.formula, options.tiebreak);
}

}  // namespace sbfl
