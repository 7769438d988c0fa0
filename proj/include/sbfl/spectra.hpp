#ifndef SBFL_SPECTRA_HPP
#define SBFL_SPECTRA_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sbfl {

/// A program element at method granularity. `id` is unique within a subject;
/// `display_name` falls back to the id when empty.
struct MethodId {
  std::string id;
  std::string display_name;

  const std::string& label() const { return display_name.empty() ? id : display_name; }
  friend bool operator==(const MethodId& a, const MethodId& b) { return a.id == b.id; }
};

enum class Outcome : std::uint8_t { Passed, Failed };

struct TestCase {
  std::string id;
  Outcome outcome = Outcome::Passed;

  bool failed() const { return outcome == Outcome::Failed; }
  friend bool operator==(const TestCase&, const TestCase&) = default;
};

/// Boolean coverage matrix, methods x tests, row-major. Cells are stored as
/// bytes so that malformed input (a 2, say) survives until validation.
struct HitSpectrum {
  std::vector<MethodId> methods;
  std::vector<TestCase> tests;
  std::vector<std::uint8_t> hits;

  std::size_t num_methods() const { return methods.size(); }
  std::size_t num_tests() const { return tests.size(); }
  std::uint8_t hit(std::size_t method, std::size_t test) const {
    return hits[method * tests.size() + test];
  }
  std::span<const std::uint8_t> row(std::size_t method) const {
    return {hits.data() + method * tests.size(), tests.size()};
  }
  std::size_t num_failed() const;
  std::size_t num_passed() const { return num_tests() - num_failed(); }
};

/// The four SBFL tallies. Exact integers; formulas convert at evaluation time.
struct Counters {
  std::uint32_t ef = 0;
  std::uint32_t ep = 0;
  std::uint32_t nf = 0;
  std::uint32_t np = 0;

  friend bool operator==(const Counters&, const Counters&) = default;
};

/// Ground-truth faulty methods, stored as indices into the spectrum's methods.
struct FaultSet {
  std::vector<std::size_t> faulty;

  bool contains(std::size_t method) const;
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Itemized check of every HitSpectrum invariant, including the presence of
/// at least one failing test. Never throws.
ValidationResult validate_spectrum(const HitSpectrum& spectrum);

/// Per-method counters, in method order. Rows are tallied in parallel.
/// Throws Error{Structural} on a dimension mismatch and Error{EmptyInput}
/// when there are no tests.
std::vector<Counters> compute_counters(const HitSpectrum& spectrum);

/// Single-threaded reference for compute_counters.
std::vector<Counters> compute_counters_serial(const HitSpectrum& spectrum);

/// Resolves fault ids against the spectrum's methods.
/// Throws Error{Reference} for an unknown id.
FaultSet resolve_faults(const HitSpectrum& spectrum, std::span<const std::string> ids);

/// Index of `id` in `methods`, or methods.size() when absent.
std::size_t find_method(std::span<const MethodId> methods, const std::string& id);

}  // namespace sbfl

#endif  // SBFL_SPECTRA_HPP
