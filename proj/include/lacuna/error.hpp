#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lacuna {

enum class ErrorCode {
  PreconditionViolation,
  MaskViolation,
  VerificationFailure,
  WindowTooSmall,
  NotASolutionOnWindow,
  ZeroValueRejected,
  ParseError,
};

[[nodiscard]] std::string_view error_name(ErrorCode code) noexcept;

/// Base for every failure the library reports. `name()` is the stable
/// identifier echoed by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Raised by the windowed solution check; carries the first equation index
/// whose residual is nonzero.
class NotASolutionOnWindow : public Error {
 public:
  explicit NotASolutionOnWindow(std::int64_t index)
      : Error(ErrorCode::NotASolutionOnWindow,
              "residual is nonzero at n = " + std::to_string(index)),
        index_(index) {}

  [[nodiscard]] std::int64_t index() const noexcept { return index_; }

 private:
  std::int64_t index_;
};

[[noreturn]] inline void precondition_failed(const std::string& what) {
  throw Error(ErrorCode::PreconditionViolation, what);
}

}  // namespace lacuna
