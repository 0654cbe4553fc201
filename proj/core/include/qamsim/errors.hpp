// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qamsim {

// Structured failure reasons, so callers (and the CLI exit-code mapping)
// can react to the class of error without parsing messages.
enum class ErrorKind {
  DimensionMismatch,
  CapExceeded,
  NonCommuting,
  Dependent,
  ImaginaryPhase,
  InvalidArgument,
  ZeroOverlap,
  HypothesisViolated,
  Inapplicable,
  Io,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qamsim
