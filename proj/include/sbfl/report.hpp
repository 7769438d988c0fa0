#ifndef SBFL_REPORT_HPP
#define SBFL_REPORT_HPP

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbfl/metrics.hpp"
#include "sbfl/subject.hpp"

namespace sbfl {

/// Right-aligned text table; the first column is left-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void add_rule() { rules_.push_back(rows_.size()); }
  std::string render() const;

 private:
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> rules_;  // draw a rule before these row indices
};

std::string fixed(double value, int decimals);
std::string format_score(double score);

/// Per-method counters, score and rank under `mode`.
std::string render_score_table(const Subject& subject, const SubjectAnalysis& a, RankMode mode);

/// Per-method score, φ and ranks before/after tie-breaking, followed by a
/// fault summary when the subject has faults.
std::string render_tiebreak_table(const Subject& subject, const SubjectAnalysis& a, RankMode mode);

/// Aligned tables for a batch evaluation, one row per formula.
std::string render_eval_tables(std::span<const EvalReport> reports);

nlohmann::json analysis_to_json(const Subject& subject, const SubjectAnalysis& a,
                                const PipelineOptions& options);
nlohmann::json report_to_json(const EvalReport& report);

}  // namespace sbfl

#endif  // SBFL_REPORT_HPP
