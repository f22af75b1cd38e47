#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsys {

enum class ErrorKind {
  LevelUnderflow,
  UnknownElement,
  ParseError,
  InvariantViolation,
  StepBudgetExceeded,
  ScopeError,
  SideConditionViolated,
  NotUnital,
  OutsideCutoff,
  LevelMismatch,
  CompositionMismatch,
  CutoffTooLarge,
  NotACategory,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bsys
