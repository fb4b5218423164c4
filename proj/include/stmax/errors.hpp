#pragma once

#include <stdexcept>
#include <string>

namespace stmax {

// Input-domain errors. The CLI maps these to exit code 2.
struct NotAPrimePower : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct VertexOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SelfLoopRejected : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InstanceTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HypothesisViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed graph file; line is 1-based.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}
    int line;
};

// Verification failures. These signal a broken construction, never bad
// user input; the CLI maps them to exit code 1.
struct PolarityDegenerate : std::logic_error {
    using std::logic_error::logic_error;
};

struct IdentityFailed : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace stmax
