#pragma once

#include <stdexcept>
#include <string>

namespace kec {

// Malformed input files / malformed problem data. CLI exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// The instance does not admit the requested solve (e.g. the LP the method
// needs is infeasible). CLI exit code 3.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A runtime invariant failed. Every structural guarantee the algorithm
// relies on is checked at runtime; a violation here is a genuine
// counterexample and must never be swallowed. CLI exit code 4.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

#define KEC_CHECK(cond, msg)                                                  \
    do {                                                                      \
        if (!(cond)) throw ::kec::InvariantError(std::string("invariant: ") + (msg)); \
    } while (0)

} // namespace kec
