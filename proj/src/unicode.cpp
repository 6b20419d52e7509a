#include "natcorpus/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdint>

namespace natcorpus::unicode {

namespace {

template <typename Pred>
bool all_code_points(std::string_view text, Pred pred) {
  if (text.empty()) return false;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t offset = 0;
  while (offset < length) {
    UChar32 c;
    U8_NEXT(bytes, offset, length, c);
    if (c < 0 || !pred(c)) return false;
  }
  return true;
}

bool is_punct_or_symbol_category(UChar32 c) {
  const std::uint32_t mask = U_GET_GC_MASK(c);
  return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

}  // namespace

std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  std::size_t offset = 0;
  while (offset < text.size()) {
    if (bytes[offset] < 0x80) {
      ++offset;
      continue;
    }
    // A UTF-8 sequence is at most 4 bytes, so a 4-byte window is exact and
    // keeps ICU's int32 offsets small regardless of input size.
    const auto window = static_cast<std::int32_t>(std::min<std::size_t>(text.size() - offset, 4));
    std::int32_t local = 0;
    UChar32 c;
    U8_NEXT(bytes + offset, local, window, c);
    if (c < 0) return offset;
    offset += static_cast<std::size_t>(local);
  }
  return std::nullopt;
}

bool is_punct_or_symbol(std::string_view text) {
  return all_code_points(text, is_punct_or_symbol_category);
}

bool is_decimal_digits(std::string_view text) {
  return all_code_points(text, [](UChar32 c) { return u_charType(c) == U_DECIMAL_DIGIT_NUMBER; });
}

std::string to_lower(std::string_view text) {
  icu::UnicodeString ustr = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  ustr.toLower(icu::Locale::getRoot());
  std::string out;
  ustr.toUTF8String(out);
  return out;
}

}  // namespace natcorpus::unicode
