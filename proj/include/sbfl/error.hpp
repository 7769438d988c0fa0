#ifndef SBFL_ERROR_HPP
#define SBFL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sbfl {

enum class ErrorKind {
  Structural,         // dimension mismatch and similar shape errors
  EmptyInput,
  NoFailingTest,
  Reference,          // id that does not resolve
  MalformedTrace,     // unbalanced Enter/Exit
  UndefinedMetric,
  LocalityViolation,  // tie-breaking moved a method outside its group
  Parse,
  Generation,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sbfl

#endif  // SBFL_ERROR_HPP
