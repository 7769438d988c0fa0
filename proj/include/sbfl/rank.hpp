#ifndef SBFL_RANK_HPP
#define SBFL_RANK_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace sbfl {

/// A 1-based rank position that may be half-integral (MID of an even-sized
/// tie). Stored as twice its value so halves stay exact.
class Rank {
 public:
  constexpr Rank() = default;

  static constexpr Rank from_position(std::int64_t position) { return Rank(2 * position); }
  static constexpr Rank from_twice(std::int64_t twice) { return Rank(twice); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  friend constexpr auto operator<=>(Rank, Rank) = default;

 private:
  constexpr explicit Rank(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

/// One decimal place: "2.5", "4.0".
std::string format_rank(Rank r);

}  // namespace sbfl

#endif  // SBFL_RANK_HPP
