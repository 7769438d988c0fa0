#ifndef SBFL_SYNTHETIC_HPP
#define SBFL_SYNTHETIC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sbfl/rank.hpp"
#include "sbfl/subject.hpp"

namespace sbfl {

struct GeneratorParams {
  std::uint64_t seed = 0;
  std::size_t methods = 20;      // 2..200
  std::size_t tests = 20;        // 2..500
  std::size_t faults = 1;        // 1..methods
  double tie_pressure = 0.3;     // [0, 1]
};

struct SyntheticSubject {
  Subject subject;
  std::uint64_t seed = 0;
};

/// Random subject whose spectrum is derived from random balanced call trees.
///
/// Method 0 is always a "primary"; every other method becomes, with
/// probability tie_pressure, a "shadow" that is called (as a leaf) whenever a
/// randomly chosen primary leader is entered, so its coverage row copies the
/// leader's. Primary call trees are at most 7 deep with at most 6 random
/// children per frame, so stacks including shadows are at most 8 deep. A test
/// fails iff it executes a fault; every fault is executed by at least one test.
///
/// Deterministic for a fixed seed. Throws Error{Generation} for parameters
/// out of range.
SyntheticSubject generate_subject(const GeneratorParams& params);

struct OracleRanks {
  Rank min;
  Rank mid;
  Rank max;
};

/// Reference ranks for (score desc, φ desc) ordering: materializes every
/// position with a stable composite-key sort and averages each block of equal
/// (score, φ). Shares no code with build_ranking or break_ties.
std::vector<OracleRanks> oracle_rank(std::span<const double> scores,
                                     std::span<const std::uint64_t> phi);

}  // namespace sbfl

#endif  // SBFL_SYNTHETIC_HPP
