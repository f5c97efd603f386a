#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace webcat {

/// Every failure raised by the library. `code` is a stable identifier
/// (TypeMismatch, SingularMatrix, ...), `location` names the offending
/// input element when one exists.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(std::move(code)), location_(std::move(location)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string code_;
  std::string location_;
};

}  // namespace webcat
