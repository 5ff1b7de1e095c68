#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zxg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// Operand wire types do not match the gate signature, or a wire is dead.
struct TypeError : Error {
    using Error::Error;
};

/// A rewrite was requested on a vertex set that does not match the rule.
struct PreconditionError : Error {
    using Error::Error;
};

/// An internal invariant broke, e.g. extraction found no way to progress.
struct InvariantError : Error {
    using Error::Error;
};

struct SizeLimitError : Error {
    using Error::Error;
};

}  // namespace zxg
