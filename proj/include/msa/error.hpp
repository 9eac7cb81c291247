#pragma once

#include <stdexcept>
#include <string>

namespace msa {

// Base class for everything the library throws on bad input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ill-formed object or violated precondition (ambient mismatch, non-congruence, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A configured search/enumeration bound was exceeded.
struct BoundError : Error {
    using Error::Error;
};

// Syntax error in a term or workspace file; carries a position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), column(col_) {}
};

} // namespace msa
