#pragma once

#include <stdexcept>
#include <string>

namespace rrsim {

// Raised for anything caused by bad user input: malformed files, invalid
// config values, dangling references. The CLI maps this to exit code 2;
// every other exception maps to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rrsim
