#pragma once

#include <stdexcept>
#include <string>

namespace actch {

// Exit-code contract: 0 success, 2 config error, 3 infeasible, 4 numerical failure.

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace actch
