#pragma once

#include <stdexcept>
#include <string>

namespace rrbkit {

enum class ErrorCode {
  InvalidArgument,
  SignatureMismatch,
  OutOfRange,
  BoundExceeded,
  Parse,
  Validation,
  Undefined,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so that the C API and the
// command front end can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rrbkit
