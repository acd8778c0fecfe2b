#pragma once

#include <stdexcept>
#include <string>

namespace seqmine {

enum class ErrorKind {
  UnknownLabel,
  EmptyElement,
  InvalidConfig,
  CapacityExceeded,
  UndefinedConfidence,
  FormatError,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this one exception type; callers
// that need to react differently (the CLI maps kinds to exit codes) switch on
// kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace seqmine
