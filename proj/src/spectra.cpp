#include "sbfl/spectra.hpp"

#include <algorithm>
#include <unordered_set>

#include "sbfl/error.hpp"

namespace sbfl {

namespace {

void check_shape(const HitSpectrum& spectrum) {
  if (spectrum.tests.empty()) {
    throw Error(ErrorKind::EmptyInput, "spectrum has zero tests");
  }
  if (spectrum.hits.size() != spectrum.methods.size() * spectrum.tests.size()) {
    throw Error(ErrorKind::Structural,
                "hit matrix has " + std::to_string(spectrum.hits.size()) + " cells, expected " +
                    std::to_string(spectrum.methods.size()) + " x " +
                    std::to_string(spectrum.tests.size()));
  }
}

Counters tally_row(const HitSpectrum& spectrum, std::size_t method) {
  Counters c;
  const auto row = spectrum.row(method);
  for (std::size_t t = 0; t < row.size(); ++t) {
    const bool executed = row[t] != 0;
    if (spectrum.tests[t].failed()) {
      ++(executed ? c.ef : c.nf);
    } else {
      ++(executed ? c.ep : c.np);
    }
  }
  return c;
}

}  // namespace

std::size_t HitSpectrum::num_failed() const {
  return static_cast<std::size_t>(
      std::count_if(tests.begin(), tests.end(), [](const TestCase& t) { return t.failed(); }));
}

bool FaultSet::contains(std::size_t method) const {
  return std::find(faulty.begin(), faulty.end(), method) != faulty.end();
}

ValidationResult validate_spectrum(const HitSpectrum& spectrum) {
  ValidationResult result;
  auto& v = result.violations;

  if (spectrum.tests.empty()) v.push_back("no tests");
  if (spectrum.methods.empty()) v.push_back("no methods");

  std::unordered_set<std::string> seen;
  for (const auto& m : spectrum.methods) {
    if (m.id.empty()) {
      v.push_back("empty method id");
    } else if (!seen.insert(m.id).second) {
      v.push_back("duplicate method id '" + m.id + "'");
    }
  }
  seen.clear();
  for (const auto& t : spectrum.tests) {
    if (t.id.empty()) {
      v.push_back("empty test id");
    } else if (!seen.insert(t.id).second) {
      v.push_back("duplicate test id '" + t.id + "'");
    }
  }

  if (spectrum.hits.size() != spectrum.methods.size() * spectrum.tests.size()) {
    v.push_back("dimension mismatch: " + std::to_string(spectrum.hits.size()) + " cells for " +
                std::to_string(spectrum.methods.size()) + " methods x " +
                std::to_string(spectrum.tests.size()) + " tests");
  } else {
    for (std::size_t m = 0; m < spectrum.methods.size(); ++m) {
      for (std::size_t t = 0; t < spectrum.tests.size(); ++t) {
        if (spectrum.hit(m, t) > 1) {
          v.push_back("non-binary hit value at method '" + spectrum.methods[m].id + "', test '" +
                      spectrum.tests[t].id + "'");
        }
      }
    }
  }

  if (spectrum.num_failed() == 0) v.push_back("no failing test");
  return result;
}

std::vector<Counters> compute_counters(const HitSpectrum& spectrum) {
  check_shape(spectrum);
  const auto n = static_cast<std::ptrdiff_t>(spectrum.methods.size());
  std::vector<Counters> out(spectrum.methods.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    out[static_cast<std::size_t>(m)] = tally_row(spectrum, static_cast<std::size_t>(m));
  }
  return out;
}

std::vector<Counters> compute_counters_serial(const HitSpectrum& spectrum) {
  check_shape(spectrum);
  std::vector<Counters> out;
  out.reserve(spectrum.methods.size());
  for (std::size_t m = 0; m < spectrum.methods.size(); ++m) {
    out.push_back(tally_row(spectrum, m));
  }
  return out;
}

std::size_t find_method(std::span<const MethodId> methods, const std::string& id) {
  const auto it =
      std::find_if(methods.begin(), methods.end(), [&](const MethodId& m) { return m.id == id; });
  return static_cast<std::size_t>(it - methods.begin());
}

FaultSet resolve_faults(const HitSpectrum& spectrum, std::span<const std::string> ids) {
  FaultSet faults;
  for (const auto& id : ids) {
    const std::size_t index = find_method(spectrum.methods, id);
    if (index == spectrum.methods.size()) {
      throw Error(ErrorKind::Reference, "unknown fault method '" + id + "'");
    }
    if (!faults.contains(index)) faults.faulty.push_back(index);
  }
  return faults;
}

}  // namespace sbfl
