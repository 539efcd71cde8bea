#pragma once

#include <stdexcept>
#include <string>

namespace distprof {

// Raised when caller-supplied data or parameters violate a documented
// precondition. The CLI maps it to exit code 2; anything else is internal.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[noreturn]] inline void fail(const std::string& message) {
    throw ValidationError(message);
}

// The message is built before the call; inside per-element loops use
// `if (!cond) fail(...)` so it is only built on failure.
inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ValidationError(message);
    }
}

} // namespace distprof
