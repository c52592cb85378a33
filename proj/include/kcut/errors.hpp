#pragma once

#include <stdexcept>
#include <string>

namespace kcut {

// No k-cut (or no feasible deletion) exists for the requested parameters.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An exact enumeration would exceed its configured size cap.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace kcut
