#include "sbfl/error.hpp"

namespace sbfl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::NoFailingTest: return "no failing test";
    case ErrorKind::Reference: return "reference";
    case ErrorKind::MalformedTrace: return "malformed trace";
    case ErrorKind::UndefinedMetric: return "undefined metric";
    case ErrorKind::LocalityViolation: return "locality violation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Generation: return "generation";
  }
  return "unknown";
}

}  // namespace sbfl
