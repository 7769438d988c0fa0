#ifndef SBFL_TIEBREAK_HPP
#define SBFL_TIEBREAK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sbfl/callstack.hpp"
#include "sbfl/ranking.hpp"

namespace sbfl {

/// Frequency-based ef: for each method, the sum of its frequency-matrix
/// entries over failing tests only.
using Phi = std::vector<std::uint64_t>;

/// `outcomes[t]` is the outcome of frequency column t.
/// Throws Error{NoFailingTest} when no column failed and Error{Structural}
/// when the outcome count does not match the matrix.
Phi compute_phi(const FrequencyMatrix& freq, std::span<const Outcome> outcomes);

/// A ranking refined by φ, with the original group of every method.
struct BrokenRanking {
  Ranking ranking;
  std::vector<std::size_t> original_group;  // method -> group index in the input ranking
};

/// Reorders the members of each tie group by descending φ. Members with equal
/// φ stay tied as a smaller group (ranked with MID). Boundaries between
/// different scores never move.
/// Throws Error{Reference} when φ does not cover every ranked method.
BrokenRanking break_ties(const Ranking& ranking, std::span<const std::uint64_t> phi);

/// Identity refinement, for pipelines run without tie-breaking.
BrokenRanking unbroken(const Ranking& ranking);

}  // namespace sbfl

#endif  // SBFL_TIEBREAK_HPP
