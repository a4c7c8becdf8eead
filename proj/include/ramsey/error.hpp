#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller handed us parameters or values that violate a documented precondition.
struct ParamError : Error {
    using Error::Error;
};

// Malformed textual input (DIMACS, coloring files, certificates, solution lines).
struct ParseError : Error {
    using Error::Error;
};

} // namespace ramsey
