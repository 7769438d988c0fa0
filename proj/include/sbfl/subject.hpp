#ifndef SBFL_SUBJECT_HPP
#define SBFL_SUBJECT_HPP

#include <string>
#include <vector>

#include "sbfl/callstack.hpp"
#include "sbfl/spectra.hpp"

namespace sbfl {

/// One buggy program version: coverage, per-test traces aligned with the
/// spectrum's tests, and the ground-truth faults.
struct Subject {
  std::string name;
  HitSpectrum spectrum;
  std::vector<TestTrace> traces;
  FaultSet faults;
};

}  // namespace sbfl

#endif  // SBFL_SUBJECT_HPP
