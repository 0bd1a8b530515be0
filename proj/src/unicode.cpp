#include "clinspan/unicode.hpp"

#include <algorithm>

#include "clinspan/error.hpp"
#include "unicode_tables.hpp"

namespace clinspan::uni {

namespace {

using tables::CpRange;

bool in_ranges(const CpRange* ranges, std::size_t count, char32_t cp) {
    const CpRange* end = ranges + count;
    const CpRange* it = std::upper_bound(
        ranges, end, cp, [](char32_t v, const CpRange& r) { return v < r.lo; });
    return it != ranges && cp <= (it - 1)->hi;
}

[[noreturn]] void bad_utf8(std::size_t byte_pos, const char* what) {
    throw Error(ErrorKind::InvalidUtf8,
                std::string(what) + " at byte " + std::to_string(byte_pos));
}

// Decodes one scalar starting at `i`; advances `i` past it.
char32_t decode_one(std::string_view s, std::size_t& i) {
    const auto at = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    std::size_t start = i;
    unsigned char b0 = at(i++);
    if (b0 < 0x80) return b0;

    int extra;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        bad_utf8(start, "invalid leading byte");
    }
    if (i + extra > s.size()) bad_utf8(start, "truncated sequence");
    for (int k = 0; k < extra; ++k) {
        unsigned char b = at(i);
        if ((b & 0xC0) != 0x80) bad_utf8(start, "invalid continuation byte");
        cp = (cp << 6) | (b & 0x3F);
        ++i;
    }
    static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra]) bad_utf8(start, "overlong encoding");
    if (cp >= 0xD800 && cp <= 0xDFFF) bad_utf8(start, "surrogate code point");
    if (cp > 0x10FFFF) bad_utf8(start, "code point out of range");
    return cp;
}

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = 11172;

std::uint8_t combining_class(char32_t cp) {
    const auto* begin = tables::kCcc;
    const auto* end = tables::kCcc + tables::kCccCount;
    const auto* it = std::lower_bound(
        begin, end, cp, [](const tables::CccEntry& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

void append_decomposed(char32_t cp, std::u32string& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        char32_t idx = cp - kHangulSBase;
        out.push_back(kHangulLBase + idx / kHangulNCount);
        out.push_back(kHangulVBase + (idx % kHangulNCount) / kHangulTCount);
        char32_t t = idx % kHangulTCount;
        if (t != 0) out.push_back(kHangulTBase + t);
        return;
    }
    const auto* begin = tables::kDecomp;
    const auto* end = tables::kDecomp + tables::kDecompCount;
    const auto* it = std::lower_bound(
        begin, end, cp, [](const tables::DecompEntry& e, char32_t v) { return e.cp < v; });
    if (it != end && it->cp == cp) {
        out.append(tables::kDecompPool + it->offset, it->length);
    } else {
        out.push_back(cp);
    }
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) out.push_back(decode_one(bytes, i));
    return out;
}

std::string encode_utf8(std::u32string_view chars) {
    std::string out;
    out.reserve(chars.size());
    for (char32_t cp : chars) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::size_t scalar_length(std::string_view bytes) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < bytes.size()) {
        decode_one(bytes, i);
        ++n;
    }
    return n;
}

std::string scalar_slice(std::string_view bytes, std::size_t start, std::size_t end) {
    if (start > end) {
        throw Error(ErrorKind::OffsetOutOfRange,
                    "slice start " + std::to_string(start) + " > end " + std::to_string(end));
    }
    std::size_t i = 0;
    std::size_t n = 0;
    std::size_t byte_start = bytes.size();
    if (start == 0) byte_start = 0;
    while (i < bytes.size() && n < end) {
        decode_one(bytes, i);
        ++n;
        if (n == start) byte_start = i;
    }
    if (n < end) {
        throw Error(ErrorKind::OffsetOutOfRange,
                    "slice end " + std::to_string(end) + " exceeds text length " +
                        std::to_string(scalar_length(bytes)));
    }
    return std::string(bytes.substr(byte_start, i - byte_start));
}

bool is_whitespace(char32_t cp) {
    return in_ranges(tables::kWhitespace, tables::kWhitespaceCount, cp);
}

bool is_punct_or_symbol(char32_t cp) {
    return in_ranges(tables::kPunctSymbol, tables::kPunctSymbolCount, cp);
}

bool is_combining_mark(char32_t cp) {
    return in_ranges(tables::kMark, tables::kMarkCount, cp);
}

char32_t to_lower(char32_t cp) {
    const auto* begin = tables::kLower;
    const auto* end = tables::kLower + tables::kLowerCount;
    const auto* it = std::lower_bound(
        begin, end, cp, [](const tables::LowerEntry& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->lower : cp;
}

std::u32string nfkd(std::u32string_view chars) {
    std::u32string out;
    out.reserve(chars.size());
    for (char32_t cp : chars) append_decomposed(cp, out);

    // Canonical ordering: stable-sort each run of nonzero combining
    // classes. Runs are short; insertion order is fine.
    for (std::size_t i = 1; i < out.size(); ++i) {
        std::uint8_t ccc = combining_class(out[i]);
        if (ccc == 0) continue;
        std::size_t j = i;
        while (j > 0) {
            std::uint8_t prev = combining_class(out[j - 1]);
            if (prev == 0 || prev <= ccc) break;
            std::swap(out[j - 1], out[j]);
            --j;
        }
    }
    return out;
}

std::string fold_for_lookup(std::string_view utf8) {
    std::u32string decomposed = nfkd(decode_utf8(utf8));
    std::u32string folded;
    folded.reserve(decomposed.size());
    for (char32_t cp : decomposed) {
        if (is_combining_mark(cp)) continue;
        folded.push_back(to_lower(cp));
    }
    return encode_utf8(folded);
}

}  // namespace clinspan::uni
