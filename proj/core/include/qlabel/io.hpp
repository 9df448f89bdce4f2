#pragma once

#include <string>

#include "qlabel/povm.hpp"

namespace qlabel::io {

// Input file missing or unreadable.
struct FileError : Error {
    using Error::Error;
};

// JSON text could not be parsed; line/column locate the first offending byte.
struct ParseError : Error {
    ParseError(const std::string& message, int line, int column);
    int line;
    int column;
};

// JSON parsed but does not match the POVM schema; `field` names the culprit.
struct SchemaError : Error {
    SchemaError(const std::string& message, std::string field_name);
    std::string field;
};

// POVM file schema:
//   {"dimension": d, "labels": [...], "effects": [[[re,im], ...], ...]}
// with each effect a flat row-major list of d*d [re, im] pairs. Values
// round-trip bit-exactly through serialize_povm.
Observable parse_povm(const std::string& path, double tol = kDefaultTol);
Observable parse_povm_text(const std::string& json_text, double tol = kDefaultTol);

std::string serialize_povm(const Observable& obs);

}  // namespace qlabel::io
