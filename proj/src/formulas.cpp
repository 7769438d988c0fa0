#include "sbfl/formulas.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "sbfl/error.hpp"

namespace sbfl {

namespace {

// num / den rounded once after reduction to lowest terms. The reduction makes
// the result a function of the rational value alone.
double ratio(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double tarantula(std::int64_t ef, std::int64_t ep, std::int64_t nf, std::int64_t np) {
  if (ef == 0) return 0.0;
  const std::int64_t failed = ef + nf;
  const std::int64_t passed = ep + np;
  if (passed == 0) return 1.0;
  // (ef/F) / (ef/F + ep/P) == ef*P / (ef*P + ep*F)
  return ratio(ef * passed, ef * passed + ep * failed);
}

double ochiai(std::int64_t ef, std::int64_t ep, std::int64_t nf) {
  if (ef == 0) return 0.0;
  return std::sqrt(ratio(ef * ef, (ef + nf) * (ef + ep)));
}

double dstar(std::int64_t ef, std::int64_t ep, std::int64_t nf, unsigned star) {
  if (ef == 0) return 0.0;
  const std::int64_t den = ep + nf;
  if (den == 0) return std::numeric_limits<double>::infinity();
  std::int64_t num = 1;
  for (unsigned i = 0; i < star; ++i) {
    if (num > std::numeric_limits<std::int64_t>::max() / ef) {
      return std::pow(static_cast<double>(ef), static_cast<double>(star)) /
             static_cast<double>(den);
    }
    num *= ef;
  }
  return ratio(num, den);
}

double gp13(std::int64_t ef, std::int64_t ep) {
  const std::int64_t den = 2 * ep + ef;
  if (den == 0) return 0.0;
  // ef * (1 + 1/den) == ef * (den + 1) / den
  return ratio(ef * (den + 1), den);
}

double confidence(std::int64_t ef, std::int64_t ep, std::int64_t nf, std::int64_t np) {
  const std::int64_t failed = ef + nf;
  const std::int64_t passed = ep + np;
  if (passed == 0) return ratio(ef, failed);
  return ratio(ef * passed - ep * failed, failed * passed);
}

}  // namespace

std::string_view formula_name(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::Tarantula: return "tarantula";
    case FormulaKind::Ochiai: return "ochiai";
    case FormulaKind::DStar: return "dstar";
    case FormulaKind::GP13: return "gp13";
    case FormulaKind::Confidence: return "confidence";
  }
  return "?";
}

std::optional<FormulaKind> parse_formula(std::string_view name) {
  for (auto kind : kAllFormulas) {
    if (formula_name(kind) == name) return kind;
  }
  return std::nullopt;
}

double score(const Formula& formula, const Counters& c) {
  const std::int64_t ef = c.ef, ep = c.ep, nf = c.nf, np = c.np;
  if (ef + nf == 0) {
    throw Error(ErrorKind::NoFailingTest, "cannot score without a failing test");
  }
  switch (formula.kind) {
    case FormulaKind::Tarantula: return tarantula(ef, ep, nf, np);
    case FormulaKind::Ochiai: return ochiai(ef, ep, nf);
    case FormulaKind::DStar: return dstar(ef, ep, nf, formula.star);
    case FormulaKind::GP13: return gp13(ef, ep);
    case FormulaKind::Confidence: return confidence(ef, ep, nf, np);
  }
  return 0.0;
}

std::vector<double> score_all(const Formula& formula, std::span<const Counters> counters) {
  if (!counters.empty() && counters.front().ef + counters.front().nf == 0) {
    throw Error(ErrorKind::NoFailingTest, "cannot score without a failing test");
  }
  std::vector<double> out(counters.size());
  const auto n = static_cast<std::ptrdiff_t>(counters.size());
  // ef + nf is the same for every method of one spectrum; per-method checks
  // below only fire on inconsistent hand-built input.
  bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& c = counters[static_cast<std::size_t>(i)];
    if (c.ef + c.nf == 0) {
      bad = true;
      continue;
    }
    out[static_cast<std::size_t>(i)] = score(formula, c);
  }
  if (bad) throw Error(ErrorKind::NoFailingTest, "cannot score without a failing test");
  return out;
}

std::vector<double> score_all_serial(const Formula& formula, std::span<const Counters> counters) {
  std::vector<double> out;
  out.reserve(counters.size());
  for (const auto& c : counters) out.push_back(score(formula, c));
  return out;
}

}  // namespace sbfl
