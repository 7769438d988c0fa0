#include "sbfl/tiebreak.hpp"

#include <algorithm>

#include "sbfl/error.hpp"

namespace sbfl {

Phi compute_phi(const FrequencyMatrix& freq, std::span<const Outcome> outcomes) {
  if (outcomes.size() != freq.num_tests) {
    throw Error(ErrorKind::Structural, "outcome count does not match frequency matrix columns");
  }
  if (std::none_of(outcomes.begin(), outcomes.end(),
                   [](Outcome o) { return o == Outcome::Failed; })) {
    throw Error(ErrorKind::NoFailingTest, "phi needs at least one failing test");
  }
  Phi phi(freq.num_methods, 0);
  for (std::size_t m = 0; m < freq.num_methods; ++m) {
    for (std::size_t t = 0; t < freq.num_tests; ++t) {
      if (outcomes[t] == Outcome::Failed) phi[m] += freq.at(m, t);
    }
  }
  return phi;
}

BrokenRanking break_ties(const Ranking& ranking, std::span<const std::uint64_t> phi) {
  if (phi.size() < ranking.size()) {
    throw Error(ErrorKind::Reference, "phi is missing for " +
                                          std::to_string(ranking.size() - phi.size()) +
                                          " ranked method(s)");
  }

  std::vector<TieGroup> refined;
  refined.reserve(ranking.groups.size());
  for (const auto& group : ranking.groups) {
    std::vector<std::size_t> members = group.members;
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) { return phi[a] > phi[b]; });
    std::size_t sub_start = refined.size();
    for (std::size_t m : members) {
      if (refined.size() == sub_start || phi[refined.back().members.front()] != phi[m]) {
        refined.push_back(TieGroup{{}, group.score, 0});
      }
      refined.back().members.push_back(m);
    }
  }

  BrokenRanking out;
  out.original_group = ranking.group_of;
  out.ranking = finalize_groups(std::move(refined), ranking.size());
  return out;
}

BrokenRanking unbroken(const Ranking& ranking) {
  return BrokenRanking{ranking, ranking.group_of};
}

}  // namespace sbfl
