#pragma once

// Deterministic JSON output. Doubles are printed with 17 significant digits
// ("%.17g") so that equal values always give equal bytes; non-finite values
// become the strings "inf", "-inf" and "nan".

#include <string>

#include <nlohmann/json.hpp>

namespace heat {

using Json = nlohmann::ordered_json;

/// A double as a JSON value; strings for non-finite values.
Json number(double x);

/// Serializes with the fixed 17-digit float format and `indent` spaces.
std::string dump_json(const Json& doc, int indent = 2);

/// "%.17g"
std::string format_double(double x);

}  // namespace heat
