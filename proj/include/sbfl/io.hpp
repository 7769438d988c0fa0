#ifndef SBFL_IO_HPP
#define SBFL_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbfl/callstack.hpp"
#include "sbfl/spectra.hpp"
#include "sbfl/subject.hpp"

// Line-oriented UTF-8 formats. Parse errors are Error{Parse} with a
// "<source>:<line>: " prefix.
//
// Spectrum (CSV):
//   method,t1,t2,...,tN
//   <methodId>,0|1,...        one row per method
//   __outcome__,P|F,...       final row
//
// Trace: one `testId,E|X,methodId` record per line, in execution order.
// Records of different tests may interleave; they are grouped by test id in
// order of first appearance.
//
// Faults: one method id per line.
//
// Blank lines are ignored; a trailing '\r' is stripped. Emitters write the
// canonical form: LF endings, no blank lines, final newline.

namespace sbfl {

inline constexpr std::string_view kOutcomeMarker = "__outcome__";

HitSpectrum parse_spectrum(std::istream& in, std::string_view source = "<spectrum>");
std::string emit_spectrum(const HitSpectrum& spectrum);

std::vector<TestTrace> parse_traces(std::istream& in, std::string_view source = "<trace>");
std::string emit_traces(std::span<const TestTrace> traces);

std::vector<std::string> parse_faults(std::istream& in, std::string_view source = "<faults>");
std::string emit_faults(const HitSpectrum& spectrum, const FaultSet& faults);

HitSpectrum read_spectrum_file(const std::filesystem::path& path);
std::vector<TestTrace> read_trace_file(const std::filesystem::path& path);
std::vector<std::string> read_fault_file(const std::filesystem::path& path);

/// A subject stored as three files sharing a path prefix:
/// <prefix>.spectrum, <prefix>.trace and <prefix>.faults.
/// Drops a trailing .spectrum, .trace or .faults, so any member file of a
/// bundle names the bundle.
std::filesystem::path bundle_prefix(const std::filesystem::path& path);

struct BundlePaths {
  std::filesystem::path spectrum;
  std::filesystem::path trace;
  std::filesystem::path faults;

  static BundlePaths from_prefix(const std::filesystem::path& prefix);
};

/// Parses and cross-checks a bundle: traces are aligned to the spectrum's
/// tests and every id must resolve. The subject is named after the prefix.
Subject load_bundle(const std::filesystem::path& prefix);

void write_bundle(const std::filesystem::path& prefix, const Subject& subject);

}  // namespace sbfl

#endif  // SBFL_IO_HPP
