#include "sbfl/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "sbfl/error.hpp"

namespace sbfl {

std::string format_rank(Rank r) {
  const std::int64_t twice = r.twice();
  const std::int64_t whole = twice / 2;
  return std::to_string(whole) + (twice % 2 != 0 ? ".5" : ".0");
}

std::string_view rank_mode_name(RankMode mode) {
  switch (mode) {
    case RankMode::Min: return "min";
    case RankMode::Mid: return "mid";
    case RankMode::Max: return "max";
  }
  return "?";
}

std::optional<RankMode> parse_rank_mode(std::string_view name) {
  for (auto mode : {RankMode::Min, RankMode::Mid, RankMode::Max}) {
    if (rank_mode_name(mode) == name) return mode;
  }
  return std::nullopt;
}

Rank RankTriple::get(RankMode mode) const {
  switch (mode) {
    case RankMode::Min: return min;
    case RankMode::Mid: return mid;
    case RankMode::Max: return max;
  }
  return mid;
}

RankTriple ranks_for_group(std::size_t start, std::size_t size) {
  const auto s = static_cast<std::int64_t>(start);
  const auto e = static_cast<std::int64_t>(size);
  return {Rank::from_position(s), Rank::from_twice(2 * s + (e - 1)),
          Rank::from_position(s + e - 1)};
}

Ranking finalize_groups(std::vector<TieGroup> groups, std::size_t num_methods) {
  Ranking ranking;
  ranking.ranks.resize(num_methods);
  ranking.group_of.resize(num_methods);
  std::size_t position = 1;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& group = groups[g];
    group.start = position;
    const RankTriple triple = ranks_for_group(position, group.size());
    for (std::size_t m : group.members) {
      ranking.ranks[m] = triple;
      ranking.group_of[m] = g;
    }
    position += group.size();
  }
  ranking.groups = std::move(groups);
  return ranking;
}

Ranking build_ranking(std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorKind::EmptyInput, "cannot rank an empty score list");
  for (double s : scores) {
    if (std::isnan(s)) throw Error(ErrorKind::Structural, "NaN suspiciousness score");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<TieGroup> groups;
  for (std::size_t m : order) {
    if (groups.empty() || groups.back().score != scores[m]) {
      groups.push_back(TieGroup{{}, scores[m], 0});
    }
    groups.back().members.push_back(m);
  }
  return finalize_groups(std::move(groups), scores.size());
}

bool CriticalTieReport::any_critical() const {
  return std::any_of(faults.begin(), faults.end(),
                     [](const FaultTieInfo& f) { return f.is_critical; });
}

namespace {

void check_faults(const Ranking& ranking, const FaultSet& faults) {
  if (faults.faulty.empty()) throw Error(ErrorKind::EmptyInput, "empty fault set");
  for (std::size_t f : faults.faulty) {
    if (f >= ranking.size()) {
      throw Error(ErrorKind::Reference, "fault index " + std::to_string(f) + " is not ranked");
    }
  }
}

}  // namespace

CriticalTieReport classify_ties(const Ranking& ranking, const FaultSet& faults) {
  check_faults(ranking, faults);
  CriticalTieReport report;
  for (std::size_t f : faults.faulty) {
    FaultTieInfo info;
    info.fault = f;
    info.group = ranking.group_of[f];
    const TieGroup& group = ranking.groups[info.group];
    info.size_before = group.size();
    info.in_tie = group.is_tie();
    info.is_critical =
        info.in_tie && std::any_of(group.members.begin(), group.members.end(),
                                   [&](std::size_t m) { return !faults.contains(m); });
    report.faults.push_back(info);
  }
  return report;
}

std::size_t best_fault(const Ranking& ranking, const FaultSet& faults) {
  check_faults(ranking, faults);
  std::size_t best = faults.faulty.front();
  for (std::size_t f : faults.faulty) {
    if (ranking.ranks[f].min < ranking.ranks[best].min ||
        (ranking.ranks[f].min == ranking.ranks[best].min && f < best)) {
      best = f;
    }
  }
  return best;
}

Rank fault_rank(const Ranking& ranking, const FaultSet& faults, RankMode mode) {
  check_faults(ranking, faults);
  Rank best = ranking.ranks[faults.faulty.front()].get(mode);
  for (std::size_t f : faults.faulty) best = std::min(best, ranking.ranks[f].get(mode));
  return best;
}

}  // namespace sbfl
