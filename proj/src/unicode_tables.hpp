// Declarations for the generated Unicode property tables.
// See scripts/gen_unicode_tables.py.
#pragma once

#include <cstddef>
#include <cstdint>

namespace clinspan::uni::tables {

struct CpRange {
    char32_t lo;
    char32_t hi;  // inclusive
};

struct CccEntry {
    char32_t cp;
    std::uint8_t ccc;
};

struct DecompEntry {
    char32_t cp;
    std::uint32_t offset;
    std::uint8_t length;
};

struct LowerEntry {
    char32_t cp;
    char32_t lower;
};

extern const CpRange kWhitespace[];
extern const std::size_t kWhitespaceCount;
extern const CpRange kPunctSymbol[];
extern const std::size_t kPunctSymbolCount;
extern const CpRange kMark[];
extern const std::size_t kMarkCount;
extern const CccEntry kCcc[];
extern const std::size_t kCccCount;
extern const char32_t kDecompPool[];
extern const DecompEntry kDecomp[];
extern const std::size_t kDecompCount;
extern const LowerEntry kLower[];
extern const std::size_t kLowerCount;

}  // namespace clinspan::uni::tables
