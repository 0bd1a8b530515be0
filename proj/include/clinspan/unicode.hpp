#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace clinspan::uni {

// Strict UTF-8 decoding: rejects overlong forms, surrogates, and code
// points above U+10FFFF. Throws Error{InvalidUtf8}.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view chars);

// Number of Unicode scalar values in a UTF-8 string.
std::size_t scalar_length(std::string_view bytes);

// Substring by scalar offsets, half-open [start, end).
// Throws Error{OffsetOutOfRange} when end exceeds the scalar length
// or start > end.
std::string scalar_slice(std::string_view bytes, std::size_t start, std::size_t end);

bool is_whitespace(char32_t cp);
bool is_punct_or_symbol(char32_t cp);
bool is_combining_mark(char32_t cp);
char32_t to_lower(char32_t cp);

// NFKD normalization (full compatibility decomposition followed by
// canonical reordering).
std::u32string nfkd(std::u32string_view chars);

// Lookup-key normalization used by the gazetteer: NFKD, combining
// marks removed, lowercased.
std::string fold_for_lookup(std::string_view utf8);

}  // namespace clinspan::uni
