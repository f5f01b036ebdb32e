#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace negforge::text {

constexpr char to_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}
constexpr bool is_upper(char c) noexcept { return c >= 'A' && c <= 'Z'; }

std::string lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;

// Splits on `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char sep);
// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_ws(std::string_view s);
std::string_view trim(std::string_view s) noexcept;
std::string normalize_ws(std::string_view s);

// Strict non-negative decimal integer; false on empty, sign, or junk.
bool parse_uint(std::string_view s, unsigned long long& out) noexcept;

}  // namespace negforge::text
