#include "kary/canonical_json.hpp"

#include "kary/error.hpp"

namespace kary {

std::string to_canonical(const json& value) { return value.dump(); }

json parse_canonical(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (value.dump() != text) throw FormatError("JSON document is not in canonical form");
  return value;
}

const json& require_field(const json& obj, const char* key) {
  if (!obj.is_object()) throw FormatError("expected JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t require_uint(const json& obj, const char* key) {
  const json& v = require_field(obj, key);
  if (!v.is_number_unsigned()) throw FormatError(std::string("field '") + key + "' must be unsigned");
  return v.get<std::uint64_t>();
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require_field(obj, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

void require_exact_keys(const json& obj, std::initializer_list<const char*> expected) {
  if (!obj.is_object()) throw FormatError("expected JSON object");
  if (obj.size() != expected.size()) throw FormatError("unexpected set of fields");
  for (const char* key : expected) require_field(obj, key);
}

}  // namespace kary
