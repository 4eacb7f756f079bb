#pragma once

// JSON helpers shared by the file formats. Floating-point tokens are kept as
// their source text so they can be converted to exact rationals.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "odx/rational.hpp"

namespace odx::detail {

using Json = nlohmann::json;

Json parse_json_exact(std::string_view text);

// Reads a numeric member (number, or "p/q"/decimal string). Throws
// Error(kParse) when present but malformed, or missing without a default.
Rational rational_member(const Json& object, const char* key);
Rational rational_member(const Json& object, const char* key, const Rational& fallback);
std::uint64_t index_member(const Json& object, const char* key);
const Json& array_member(const Json& object, const char* key);

// Exact numeric token: a bare JSON number for terminating decimals, a quoted
// "p/q" string otherwise.
std::string json_number(const Rational& value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace odx::detail
