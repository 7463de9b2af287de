#pragma once

#include <stdexcept>
#include <string>

namespace levy_chaos {

/// Library error carrying a module-qualified code such as
/// "models.insufficient_moments" alongside the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message);

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace levy_chaos
