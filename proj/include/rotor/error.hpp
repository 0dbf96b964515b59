#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rotor {

// Error with a short machine-readable code next to the human-readable detail.
// The CLI surfaces the code in its structured stderr JSON; library callers can
// switch on it without string-matching prose.
class RotorError : public std::runtime_error {
public:
    RotorError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace rotor
