#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace kary {

using json = nlohmann::json;

/// Sorted keys, no insignificant whitespace.
std::string to_canonical(const json& value);

/// Parses `text` and rejects it unless it is already in canonical form.
/// A single trailing newline is tolerated. Throws FormatError.
json parse_canonical(std::string_view text);

/// Field accessors that throw FormatError on missing or mistyped members.
const json& require_field(const json& obj, const char* key);
std::uint64_t require_uint(const json& obj, const char* key);
std::string require_string(const json& obj, const char* key);
/// Rejects objects whose key set differs from `expected` (count and names).
void require_exact_keys(const json& obj, std::initializer_list<const char*> expected);

}  // namespace kary
