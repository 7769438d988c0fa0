#ifndef SBFL_FORMULAS_HPP
#define SBFL_FORMULAS_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbfl/spectra.hpp"

namespace sbfl {

enum class FormulaKind { Tarantula, Ochiai, DStar, GP13, Confidence };

inline constexpr std::array<FormulaKind, 5> kAllFormulas = {
    FormulaKind::Confidence, FormulaKind::DStar, FormulaKind::GP13, FormulaKind::Ochiai,
    FormulaKind::Tarantula};

struct Formula {
  FormulaKind kind = FormulaKind::DStar;
  unsigned star = 2;  // DStar exponent, ignored by the others

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Lower-case CLI name: tarantula, ochiai, dstar, gp13, confidence.
std::string_view formula_name(FormulaKind kind);
std::optional<FormulaKind> parse_formula(std::string_view name);

/// Suspiciousness of a method with counters `c`. Never NaN; DStar may return
/// +infinity when ef > 0 and ep + nf == 0.
///
/// Every formula is reduced to an exact integer ratio in lowest terms and
/// rounded once, so methods whose scores are equal as real numbers get
/// bit-identical doubles. Ochiai rounds its squared ratio once, then takes
/// the square root. Degenerate denominators:
///   Tarantula  ef == 0 -> 0; ep + np == 0 -> passing ratio taken as 0
///   Ochiai     ef == 0 -> 0
///   DStar      ef == 0 -> 0; ep + nf == 0 -> +inf
///   GP13       2ep + ef == 0 -> 0
///   Confidence ep + np == 0 -> second term 0
///
/// Throws Error{NoFailingTest} when ef + nf == 0.
double score(const Formula& formula, const Counters& c);

/// Element-wise score over methods (parallel), preserving order.
std::vector<double> score_all(const Formula& formula, std::span<const Counters> counters);

std::vector<double> score_all_serial(const Formula& formula, std::span<const Counters> counters);

}  // namespace sbfl

#endif  // SBFL_FORMULAS_HPP
