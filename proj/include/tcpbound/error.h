#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcpbound {

enum class ErrorCode {
  kSizing,
  kInvalidArgument,
  kClassification,
  kRefused,
  kUnverifiedSolution,
  kNotPCertificate,
  kInvariantViolation,
  kExactSolutionInconsistent,
  kDegenerateQ,
  kDegenerateZ,
  kParse,
};

std::string_view ToString(ErrorCode code);

/// Every library failure carries a code so callers (and the CLI exit-status
/// mapping) can tell hypothesis failures from malformed input.
class TcpError : public std::runtime_error {
 public:
  TcpError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tcpbound
