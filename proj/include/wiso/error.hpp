#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wiso {

// Machine-readable failure categories. Every thrown wiso::Error carries one.
enum class ErrorCode {
  Domain,          // argument outside the mathematical domain
  InvalidPolygon,  // polygon fails a structural invariant
  NonConvergence,  // numerical method did not meet its tolerance
  Region,          // parameters outside an admissibility region
  Parse,           // malformed text input
  Config,          // semantically invalid configuration
  Io,              // file could not be read or written
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wiso
