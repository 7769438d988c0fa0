#ifndef SBFL_RANKING_HPP
#define SBFL_RANKING_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "sbfl/rank.hpp"
#include "sbfl/spectra.hpp"

namespace sbfl {

enum class RankMode { Min, Mid, Max };

std::string_view rank_mode_name(RankMode mode);
std::optional<RankMode> parse_rank_mode(std::string_view name);

/// Maximal run of methods sharing one score. Singletons are groups too.
struct TieGroup {
  std::vector<std::size_t> members;  // method indices, ascending input order
  double score = 0.0;
  std::size_t start = 1;             // 1-based first position

  std::size_t size() const { return members.size(); }
  bool is_tie() const { return members.size() >= 2; }
};

struct RankTriple {
  Rank min;
  Rank mid;
  Rank max;

  Rank get(RankMode mode) const;
  friend bool operator==(const RankTriple&, const RankTriple&) = default;
};

/// Groups in strictly descending score order plus per-method rank triples.
/// `group_of[m]` is the index of method m's group.
struct Ranking {
  std::vector<TieGroup> groups;
  std::vector<RankTriple> ranks;
  std::vector<std::size_t> group_of;

  std::size_t size() const { return ranks.size(); }
  const TieGroup& group_containing(std::size_t method) const { return groups[group_of[method]]; }
};

/// Assigns MIN = S, MAX = S + E - 1 and MID = S + (E - 1) / 2 for a group
/// starting at position S with E members.
RankTriple ranks_for_group(std::size_t start, std::size_t size);

/// Groups scores (exact equality) in descending order; ties keep input order.
/// Throws Error{EmptyInput} on an empty score list.
Ranking build_ranking(std::span<const double> scores);

/// Rebuilds ranks and group_of from groups whose members and scores are set;
/// recomputes every start position.
Ranking finalize_groups(std::vector<TieGroup> groups, std::size_t num_methods);

struct FaultTieInfo {
  std::size_t fault = 0;       // method index
  std::size_t group = 0;       // index into Ranking::groups
  std::size_t size_before = 0; // size of the containing group
  bool in_tie = false;         // group size >= 2
  bool is_critical = false;    // tied with at least one non-faulty method
};

struct CriticalTieReport {
  std::vector<FaultTieInfo> faults;

  bool any_critical() const;
};

/// Throws Error{Reference} for a fault index outside the ranking and
/// Error{EmptyInput} for an empty fault set.
CriticalTieReport classify_ties(const Ranking& ranking, const FaultSet& faults);

/// Best (smallest) rank of any faulty method under `mode`.
Rank fault_rank(const Ranking& ranking, const FaultSet& faults, RankMode mode);

/// The faulty method with the smallest MIN rank (first in input order among
/// equals). Its rank triple is the bug's rank under every mode.
std::size_t best_fault(const Ranking& ranking, const FaultSet& faults);

}  // namespace sbfl

#endif  // SBFL_RANKING_HPP
