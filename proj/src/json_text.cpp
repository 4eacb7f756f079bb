#include "json_text.hpp"

#include <fstream>
#include <sstream>

#include "odx/error.hpp"

namespace odx::detail {
namespace {

class ExactSax : public nlohmann::detail::json_sax_dom_parser<Json> {
 public:
  using Base = nlohmann::detail::json_sax_dom_parser<Json>;
  explicit ExactSax(Json& root) : Base(root, true) {}

  bool number_float(Json::number_float_t /*value*/, const Json::string_t& text) {
    Json::string_t copy = text;
    return Base::string(copy);
  }
};

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParse, what); }

}  // namespace

Json parse_json_exact(std::string_view text) {
  Json root;
  ExactSax sax(root);
  try {
    Json::sax_parse(text.begin(), text.end(), &sax);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  return root;
}

Rational rational_member(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) parse_error(std::string("missing numeric field '") + key + "'");
  const Json& value = *it;
  if (value.is_number_unsigned()) return Rational(value.get<std::uint64_t>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) return parse_rational(value.get_ref<const std::string&>());
  parse_error(std::string("field '") + key + "' is not a number");
}

Rational rational_member(const Json& object, const char* key, const Rational& fallback) {
  if (!object.contains(key)) return fallback;
  return rational_member(object, key);
}

std::uint64_t index_member(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) parse_error(std::string("missing integer field '") + key + "'");
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    // Negative indices are a validation problem, not a syntax one.
    throw Error(ErrorKind::kIndexOutOfRange, std::string("field '") + key + "' is negative");
  }
  parse_error(std::string("field '") + key + "' is not an integer");
}

const Json& array_member(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_array()) {
    parse_error(std::string("missing array field '") + key + "'");
  }
  return *it;
}

std::string json_number(const Rational& value) {
  std::string text = to_string(value);
  return is_terminating_decimal(value) ? text : "\"" + text + "\"";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace odx::detail
