#include "sbfl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sbfl {

std::string TextTable::render() const {
  std::vector<std::size_t> widths;
  for (const auto& row : rows_) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::size_t total = 0;
  for (std::size_t w : widths) total += w + 2;

  std::string out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == 1 || std::find(rules_.begin(), rules_.end(), r) != rules_.end()) {
      out += std::string(total > 2 ? total - 2 : 0, '-') + '\n';
    }
    std::string line;
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      const std::string& cell = rows_[r][c];
      const std::string pad(widths[c] - cell.size(), ' ');
      if (c > 0) line += "  ";
      line += c == 0 ? cell + pad : pad + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  // "-0.00" reads as a change where there is none
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_score(double score) {
  if (std::isinf(score)) return score > 0 ? "inf" : "-inf";
  return fixed(score, 2);
}

namespace {

nlohmann::json score_json(double score) {
  if (std::isinf(score)) return score > 0 ? "inf" : "-inf";
  return score;
}

nlohmann::json triple_json(const RankTriple& r) {
  return {{"min", r.min.value()}, {"mid", r.mid.value()}, {"max", r.max.value()}};
}

std::string name_of(const Formula& f) {
  std::string name(formula_name(f.kind));
  if (f.kind == FormulaKind::DStar && f.star != 2) name += "(" + std::to_string(f.star) + ")";
  return name;
}

std::string pct(std::size_t part, std::size_t whole) {
  if (whole == 0) return "-";
  return fixed(100.0 * static_cast<double>(part) / static_cast<double>(whole), 1);
}

std::string count(std::size_t n) { return std::to_string(n); }

std::string fault_summary(const Subject& subject, const SubjectAnalysis& a) {
  if (subject.faults.faulty.empty()) return {};
  const BugOutcome& b = a.outcome;
  const auto& methods = subject.spectrum.methods;
  std::string out = "\nfault " + methods[b.fault_before].label() + ": rank " +
                    format_rank(b.before.mid) + " [" + format_rank(b.before.min) + ", " +
                    format_rank(b.before.max) + "] -> " + format_rank(b.after.mid);
  if (b.fault_after != b.fault_before) out += " (" + methods[b.fault_after].label() + ")";
  out += ", tie " + count(b.tie_size_before) + " -> " + count(b.tie_size_after);
  out += b.critical_before ? ", critical" : ", not critical";
  if (b.tie_reduction) out += ", tie reduction " + fixed(*b.tie_reduction, 1) + "%";
  out += ", move " + std::string(move_category_name(b.move)) + '\n';
  return out;
}

}  // namespace

std::string render_score_table(const Subject& subject, const SubjectAnalysis& a, RankMode mode) {
  TextTable t({"method", "ef", "ep", "nf", "np", "score", std::string(rank_mode_name(mode))});
  for (const auto& group : a.before.groups) {
    for (std::size_t m : group.members) {
      const auto& c = a.counters[m];
      t.add_row({subject.spectrum.methods[m].label(), count(c.ef), count(c.ep), count(c.nf),
                 count(c.np), format_score(a.scores[m]),
                 format_rank(a.before.ranks[m].get(mode))});
    }
  }
  return t.render();
}

std::string render_tiebreak_table(const Subject& subject, const SubjectAnalysis& a,
                                  RankMode mode) {
  TextTable t({"method", "score", "phi", "B", "A"});
  for (const auto& group : a.after.ranking.groups) {
    for (std::size_t m : group.members) {
      const bool tied_before = a.before.group_containing(m).is_tie();
      const bool tied_after = group.is_tie();
      t.add_row({subject.spectrum.methods[m].label(), format_score(a.scores[m]),
                 std::to_string(a.phi[m]),
                 format_rank(a.before.ranks[m].get(mode)) + (tied_before ? "*" : " "),
                 format_rank(a.after.ranking.ranks[m].get(mode)) + (tied_after ? "*" : " ")});
    }
  }
  return t.render() + fault_summary(subject, a);
}

std::string render_eval_tables(std::span<const EvalReport> reports) {
  std::string out;

  TextTable ties({"formula", "ties", "avg", "critical", "avg", "MIN!=MID", "%", "diff",
                  "avg diff"});
  for (const auto& r : reports) {
    for (bool after : {false, true}) {
      const TieStats& s = after ? r.after : r.before;
      ties.add_row({after ? "  after" : name_of(r.formula), count(s.tie_count),
                    fixed(s.avg_ties_per_bug, 2), count(s.critical_tie_count),
                    fixed(s.bugs ? static_cast<double>(s.critical_tie_count) /
                                       static_cast<double>(s.bugs)
                                 : 0.0,
                          2),
                    count(s.min_neq_mid_count), pct(s.min_neq_mid_count, s.bugs),
                    fixed(s.rank_diff_sum, 1), fixed(s.avg_diff, 2)});
    }
  }
  out += "Ties and critical ties\n" + ties.render() + '\n';

  TextTable reduction({"formula", "critical", "mean", "median", "Q1"});
  for (const auto& r : reports) {
    reduction.add_row({name_of(r.formula), count(r.tie_reductions.size()),
                       fixed(r.tie_reduction_mean, 1), fixed(r.tie_reduction_median, 1),
                       fixed(r.tie_reduction_q1, 1)});
  }
  out += "Tie-Reduction (%)\n" + reduction.render() + '\n';

  TextTable avg({"formula", "bugs", "before", "after", "diff"});
  for (const auto& r : reports) {
    avg.add_row({name_of(r.formula), count(r.bugs), fixed(r.avg_rank_before, 2),
                 fixed(r.avg_rank_after, 2), fixed(r.avg_rank_diff, 2)});
  }
  out += "Average fault rank (MID)\n" + avg.render() + '\n';

  TextTable moves({"formula", "", "best", "better", "same", "worse", "worst", "improve",
                   "deteriorate"});
  for (const auto& r : reports) {
    std::vector<std::string> counts{name_of(r.formula), "count"};
    std::vector<std::string> diffs{"", "avg diff"};
    for (const auto& c : r.categories) {
      counts.push_back(count(c.count));
      diffs.push_back(fixed(c.avg_diff, 2));
    }
    for (const auto* c : {&r.improve, &r.deteriorate}) {
      counts.push_back(count(c->count));
      diffs.push_back(fixed(c->avg_diff, 2));
    }
    moves.add_row(std::move(counts));
    moves.add_row(std::move(diffs));
  }
  out += "Rank moves after tie-breaking\n" + moves.render() + '\n';

  TextTable topn({"formula", "Top-1", "%", "Top-3", "%", "Top-5", "%", "Top-10", "%", "Other",
                  "%"});
  for (const auto& r : reports) {
    std::vector<std::string> before{name_of(r.formula)};
    std::vector<std::string> after{"  after"};
    std::vector<std::string> delta{"  diff"};
    for (std::size_t i = 0; i < 5; ++i) {
      const std::size_t b = r.top_n.cumulative_before[i];
      const std::size_t a = r.top_n.cumulative_after[i];
      before.push_back(count(b));
      before.push_back(pct(b, r.bugs));
      after.push_back(count(a));
      after.push_back(pct(a, r.bugs));
      const auto d = static_cast<long long>(a) - static_cast<long long>(b);
      delta.push_back(std::to_string(d));
      delta.push_back(b == 0 ? "-" : fixed(100.0 * static_cast<double>(d) / static_cast<double>(b), 1));
    }
    topn.add_row(std::move(before));
    topn.add_row(std::move(after));
    topn.add_row(std::move(delta));
  }
  out += "Top-N (cumulative)\n" + topn.render() + '\n';

  TextTable tm({"formula", "[1]-", "(1,3]-", "(1,3]+", "(3,5]-", "(3,5]+", "(5,10]-",
                "(5,10]+", "Other+", "worse", "better"});
  for (const auto& r : reports) {
    const auto& t = r.top_n;
    tm.add_row({name_of(r.formula), count(t.worsened_from[0]), count(t.worsened_from[1]),
                count(t.improved_from[1]), count(t.worsened_from[2]), count(t.improved_from[2]),
                count(t.worsened_from[3]), count(t.improved_from[3]), count(t.improved_from[4]),
                count(t.worsened), count(t.improved)});
  }
  out += "Top-N interval moves (- worsened, + improved)\n" + tm.render();
  return out;
}

nlohmann::json analysis_to_json(const Subject& subject, const SubjectAnalysis& a,
                                const PipelineOptions& options) {
  nlohmann::json methods = nlohmann::json::array();
  for (std::size_t m = 0; m < subject.spectrum.methods.size(); ++m) {
    const auto& c = a.counters[m];
    methods.push_back({{"id", subject.spectrum.methods[m].id},
                       {"ef", c.ef},
                       {"ep", c.ep},
                       {"nf", c.nf},
                       {"np", c.np},
                       {"score", score_json(a.scores[m])},
                       {"phi", a.phi[m]},
                       {"before", triple_json(a.before.ranks[m])},
                       {"after", triple_json(a.after.ranking.ranks[m])}});
  }
  nlohmann::json j = {{"subject", subject.name},
                      {"formula", name_of(options.formula)},
                      {"tiebreak", options.tiebreak},
                      {"methods", methods}};
  if (!subject.faults.faulty.empty()) {
    const BugOutcome& b = a.outcome;
    j["fault"] = {{"before_method", subject.spectrum.methods[b.fault_before].id},
                  {"after_method", subject.spectrum.methods[b.fault_after].id},
                  {"before", triple_json(b.before)},
                  {"after", triple_json(b.after)},
                  {"critical_before", b.critical_before},
                  {"critical_after", b.critical_after},
                  {"tie_size_before", b.tie_size_before},
                  {"tie_size_after", b.tie_size_after},
                  {"tie_reduction", b.tie_reduction ? nlohmann::json(*b.tie_reduction) : nullptr},
                  {"move", move_category_name(b.move)}};
  }
  return j;
}

nlohmann::json report_to_json(const EvalReport& r) {
  auto stats = [](const TieStats& s) {
    return nlohmann::json{{"bugs", s.bugs},
                          {"tie_count", s.tie_count},
                          {"avg_ties_per_bug", s.avg_ties_per_bug},
                          {"critical_tie_count", s.critical_tie_count},
                          {"critical_pct", s.critical_pct},
                          {"critical_tie_sizes", s.critical_tie_sizes},
                          {"min_neq_mid_count", s.min_neq_mid_count},
                          {"rank_diff_sum", s.rank_diff_sum},
                          {"avg_diff", s.avg_diff}};
  };
  nlohmann::json categories = nlohmann::json::object();
  for (std::size_t i = 0; i < kNumMoveCategories; ++i) {
    categories[std::string(move_category_name(static_cast<MoveCategory>(i)))] = {
        {"count", r.categories[i].count}, {"avg_diff", r.categories[i].avg_diff}};
  }
  nlohmann::json transitions = nlohmann::json::object();
  for (std::size_t from = 0; from < kNumTopNIntervals; ++from) {
    for (std::size_t to = 0; to < kNumTopNIntervals; ++to) {
      transitions[std::string(interval_name(static_cast<TopNInterval>(from)))]
                 [std::string(interval_name(static_cast<TopNInterval>(to)))] =
                     r.top_n.transitions[from][to];
    }
  }
  nlohmann::json bugs = nlohmann::json::array();
  for (const auto& b : r.outcomes) {
    bugs.push_back({{"subject", b.subject},
                    {"before", triple_json(b.before)},
                    {"after", triple_json(b.after)},
                    {"critical_before", b.critical_before},
                    {"critical_after", b.critical_after},
                    {"tie_size_before", b.tie_size_before},
                    {"tie_size_after", b.tie_size_after},
                    {"tie_reduction", b.tie_reduction ? nlohmann::json(*b.tie_reduction) : nullptr},
                    {"move", move_category_name(b.move)}});
  }
  return {{"formula", name_of(r.formula)},
          {"tiebreak", r.tiebreak},
          {"bugs", r.bugs},
          {"ties_before", stats(r.before)},
          {"ties_after", stats(r.after)},
          {"tie_reduction",
           {{"values", r.tie_reductions},
            {"mean", r.tie_reduction_mean},
            {"median", r.tie_reduction_median},
            {"q1", r.tie_reduction_q1}}},
          {"average_rank",
           {{"before", r.avg_rank_before}, {"after", r.avg_rank_after}, {"diff", r.avg_rank_diff}}},
          {"moves", categories},
          {"improve", {{"count", r.improve.count}, {"avg_diff", r.improve.avg_diff}}},
          {"deteriorate", {{"count", r.deteriorate.count}, {"avg_diff", r.deteriorate.avg_diff}}},
          {"top_n",
           {{"thresholds", {"Top-1", "Top-3", "Top-5", "Top-10", "Other"}},
            {"before", r.top_n.cumulative_before},
            {"after", r.top_n.cumulative_after},
            {"transitions", transitions},
            {"improved", r.top_n.improved},
            {"worsened", r.top_n.worsened}}},
          {"per_bug", bugs}};
}

}  // namespace sbfl
