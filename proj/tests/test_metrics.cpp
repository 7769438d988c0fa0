#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "sbfl/error.hpp"
#include "sbfl/metrics.hpp"
#include "sbfl/synthetic.hpp"
#include "support.hpp"

using namespace sbfl;

namespace {

Rank R(double v) { return Rank::from_twice(static_cast<std::int64_t>(std::lround(2 * v))); }

RankTriple T(double lo, double mid, double hi) { return {R(lo), R(mid), R(hi)}; }

std::vector<Subject> synthetic_subjects(std::size_t n, double pressure, std::uint64_t seed0) {
  std::vector<Subject> out;
  for (std::size_t i = 0; i < n; ++i) {
    GeneratorParams p;
    p.seed = seed0 + i;
    p.methods = 4 + i % 17;
    p.tests = 3 + i % 11;
    p.faults = 1 + i % 2;
    p.tie_pressure = pressure;
    out.push_back(generate_subject(p).subject);
  }
  return out;
}

}  // namespace

TEST_CASE("tie reduction") {
  CHECK(tie_reduction(4, 1) == doctest::Approx(100.0));
  CHECK(tie_reduction(5, 3) == doctest::Approx(50.0));
  for (std::size_t k = 2; k < 10; ++k) CHECK(tie_reduction(k, k) == doctest::Approx(0.0));
  for (auto [b, a] : {std::pair<std::size_t, std::size_t>{1, 1}, {0, 0}, {4, 0}, {4, 5}}) {
    try {
      tie_reduction(b, a);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UndefinedMetric);
    }
  }
}

TEST_CASE("move categories") {
  CHECK(classify_move(T(1, 2.5, 4), R(1)) == MoveCategory::Best);
  CHECK(classify_move(T(2, 2, 2), R(2)) == MoveCategory::Same);
  CHECK(classify_move(T(1, 3, 5), R(2)) == MoveCategory::Better);
  CHECK(classify_move(T(1, 3, 5), R(4)) == MoveCategory::Worse);
  CHECK(classify_move(T(1, 3, 5), R(5)) == MoveCategory::Worst);
  CHECK(classify_move(T(1, 3, 5), R(3)) == MoveCategory::Same);
  CHECK(classify_move(T(1, 3, 5), R(1.5)) == MoveCategory::Better);
  try {
    classify_move(T(2, 3, 4), R(1));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LocalityViolation);
  }
  CHECK_THROWS_AS(classify_move(T(2, 3, 4), R(4.5)), Error);
}

TEST_CASE("top-n membership") {
  auto m = top_n(R(2.5));
  CHECK_FALSE(m.within[0]);
  CHECK(m.within[1]);
  CHECK(m.interval == TopNInterval::UpTo3);
  m = top_n(R(1));
  CHECK(m.within[0]);
  CHECK(m.interval == TopNInterval::First);
  m = top_n(R(3.5));
  CHECK_FALSE(m.within[1]);
  CHECK(m.interval == TopNInterval::UpTo5);
  m = top_n(R(10));
  CHECK(m.within[3]);
  CHECK_FALSE(m.other);
  m = top_n(R(10.5));
  CHECK_FALSE(m.within[3]);
  CHECK(m.other);
  CHECK(m.interval == TopNInterval::Other);
}

TEST_CASE("quantile") {
  CHECK(quantile({}, 0.5) == 0.0);
  CHECK(quantile({7}, 0.25) == 7.0);
  CHECK(quantile({4, 1, 3, 2}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
  CHECK(quantile({1, 2, 3, 4, 5}, 0.25) == doctest::Approx(2.0));
  CHECK(quantile({1, 2, 3, 4, 5}, 1.0) == doctest::Approx(5.0));
}

TEST_CASE("running example evaluation") {
  for (FormulaKind kind : {FormulaKind::DStar, FormulaKind::Confidence}) {
    CAPTURE(formula_name(kind));
    const std::vector<Subject> subjects{testing::running_example()};
    const auto r = evaluate(subjects, {{kind, 2}, true, {}});
    REQUIRE(r.bugs == 1);
    const auto& b = r.outcomes[0];
    CHECK(b.critical_before);
    CHECK_FALSE(b.critical_after);
    CHECK(b.strict_max_phi);
    CHECK(b.after.mid == R(1));
    CHECK(b.move == MoveCategory::Best);
    REQUIRE(b.tie_reduction.has_value());
    CHECK(*b.tie_reduction == doctest::Approx(100.0));
    CHECK(r.tie_reduction_mean == doctest::Approx(100.0));
    CHECK(r.categories[static_cast<std::size_t>(MoveCategory::Best)].count == 1);
    CHECK(r.after.tie_count == 0);
    CHECK(r.top_n.cumulative_after[0] == 1);
  }
  const std::vector<Subject> subjects{testing::running_example()};
  const auto dstar = evaluate(subjects, {{FormulaKind::DStar, 2}, true, {}});
  // a, b, g tied at 1..3, MID 2
  CHECK(dstar.outcomes[0].before == T(1, 2, 3));
  CHECK(dstar.avg_rank_diff == doctest::Approx(-1.0));
  const auto conf = evaluate(subjects, {{FormulaKind::Confidence, 2}, true, {}});
  CHECK(conf.outcomes[0].before == T(1, 2.5, 4));
  CHECK(conf.avg_rank_diff == doctest::Approx(-1.5));
}

TEST_CASE("no critical tie means no move") {
  Subject s = testing::running_example();
  s.faults.faulty = {2};  // f ranks alone under DStar
  const std::vector<Subject> subjects{s};
  const auto r = evaluate(subjects, {{FormulaKind::DStar, 2}, true, {}});
  CHECK_FALSE(r.outcomes[0].critical_before);
  CHECK(r.outcomes[0].move == MoveCategory::Same);
  CHECK_FALSE(r.outcomes[0].tie_reduction.has_value());
  CHECK(r.outcomes[0].after == r.outcomes[0].before);
}

TEST_CASE("evaluation without tie-breaking changes nothing") {
  const auto subjects = synthetic_subjects(60, 0.5, 900);
  const auto r = evaluate(subjects, {{FormulaKind::Ochiai, 2}, false, {}});
  for (const auto& b : r.outcomes) {
    CHECK(b.after == b.before);
    CHECK(b.move == MoveCategory::Same);
  }
  CHECK(r.avg_rank_diff == 0.0);
}

TEST_CASE("subjects without faults cannot be evaluated") {
  Subject s = testing::running_example();
  s.faults.faulty.clear();
  const std::vector<Subject> subjects{s};
  CHECK_THROWS_AS(evaluate(subjects, {}), Error);
  CHECK_THROWS_AS(evaluate_serial(subjects, {}), Error);
}

TEST_CASE("aggregates match a recount from oracle ranks") {
  const auto subjects = synthetic_subjects(200, 0.4, 1000);
  for (FormulaKind kind : kAllFormulas) {
    CAPTURE(formula_name(kind));
    const PipelineOptions options{{kind, 2}, true, {}};
    const auto report = evaluate(subjects, options);
    const auto serial = evaluate_serial(subjects, options);
    REQUIRE(report.bugs == subjects.size());

    std::array<std::size_t, kNumMoveCategories> moves{};
    std::array<std::size_t, 5> top_before{}, top_after{};
    std::size_t critical = 0;
    double sum_before = 0, sum_after = 0, tr_sum = 0;
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      const auto a = analyze_subject(subjects[i], options);
      const auto before = oracle_rank(a.scores, Phi(a.scores.size(), 0));
      const auto after = oracle_rank(a.scores, a.phi);

      // best fault: smallest MIN, then input order
      auto best = [&](const std::vector<OracleRanks>& ranks) {
        std::size_t f = subjects[i].faults.faulty.front();
        for (std::size_t g : subjects[i].faults.faulty) {
          if (ranks[g].min < ranks[f].min || (ranks[g].min == ranks[f].min && g < f)) f = g;
        }
        return f;
      };
      const std::size_t fb = best(before);
      const std::size_t fa = best(after);
      const Rank bmid = before[fb].mid, amid = after[fa].mid;
      const auto& b = report.outcomes[i];
      CHECK(b.before.mid == bmid);
      CHECK(b.after.mid == amid);
      CHECK(b.before.min == before[fb].min);
      CHECK(b.before.max == before[fb].max);

      // tie size and criticality by direct scan
      std::size_t size = 0;
      bool other = false;
      for (std::size_t m = 0; m < a.scores.size(); ++m) {
        if (a.scores[m] == a.scores[fb]) {
          ++size;
          other = other || !subjects[i].faults.contains(m);
        }
      }
      const bool crit = size >= 2 && other;
      CHECK(b.critical_before == crit);
      CHECK(b.tie_size_before == size);
      if (crit) {
        ++critical;
        std::size_t size_after = 0;
        for (std::size_t m = 0; m < a.scores.size(); ++m) {
          if (a.scores[m] == a.scores[fa] && a.phi[m] == a.phi[fa]) ++size_after;
        }
        const double tr = 100.0 * (1.0 - double(size_after - 1) / double(size - 1));
        REQUIRE(b.tie_reduction.has_value());
        CHECK(*b.tie_reduction == doctest::Approx(tr));
        tr_sum += tr;
      }

      MoveCategory mv;
      if (amid == bmid) mv = MoveCategory::Same;
      else if (amid == before[fb].min) mv = MoveCategory::Best;
      else if (amid == before[fb].max) mv = MoveCategory::Worst;
      else mv = amid < bmid ? MoveCategory::Better : MoveCategory::Worse;
      CHECK(b.move == mv);
      ++moves[static_cast<std::size_t>(mv)];

      const int thresholds[4] = {1, 3, 5, 10};
      for (int k = 0; k < 4; ++k) {
        top_before[k] += bmid.value() <= thresholds[k];
        top_after[k] += amid.value() <= thresholds[k];
      }
      top_before[4] += bmid.value() > 10;
      top_after[4] += amid.value() > 10;
      sum_before += bmid.value();
      sum_after += amid.value();
    }
    for (std::size_t c = 0; c < kNumMoveCategories; ++c) CHECK(report.categories[c].count == moves[c]);
    CHECK(report.top_n.cumulative_before == top_before);
    CHECK(report.top_n.cumulative_after == top_after);
    CHECK(report.before.critical_tie_count == critical);
    CHECK(report.tie_reductions.size() == critical);
    if (critical > 0) CHECK(report.tie_reduction_mean == doctest::Approx(tr_sum / critical));
    CHECK(report.avg_rank_before == doctest::Approx(sum_before / subjects.size()));
    CHECK(report.avg_rank_after == doctest::Approx(sum_after / subjects.size()));

    std::size_t moved = 0;
    for (const auto& row : report.top_n.transitions) {
      for (std::size_t v : row) moved += v;
    }
    CHECK(moved == subjects.size());

    // parallel and serial agree exactly
    CHECK(serial.categories[0].count == report.categories[0].count);
    CHECK(serial.tie_reduction_mean == report.tie_reduction_mean);
    CHECK(serial.avg_rank_after == report.avg_rank_after);
    CHECK(serial.top_n.transitions == report.top_n.transitions);
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      CHECK(serial.outcomes[i].after == report.outcomes[i].after);
    }
  }
}
