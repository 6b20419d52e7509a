#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace natcorpus::unicode {

// Byte offset of the first invalid UTF-8 sequence, or nullopt if `text` is
// well-formed.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

// True when every code point is in a P* or S* general category.
bool is_punct_or_symbol(std::string_view text);

// True when every code point is in category Nd.
bool is_decimal_digits(std::string_view text);

// Full Unicode lowercase mapping (root locale).
std::string to_lower(std::string_view text);

}  // namespace natcorpus::unicode
