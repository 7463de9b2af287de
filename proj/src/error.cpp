#include "levy_chaos/error.hpp"

namespace levy_chaos {

Error::Error(std::string code, const std::string& message)
    : std::runtime_error(message), code_(std::move(code)) {}

}  // namespace levy_chaos
