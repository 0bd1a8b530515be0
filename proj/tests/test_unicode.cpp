#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "clinspan/error.hpp"
#include "clinspan/unicode.hpp"

using namespace clinspan;

TEST_CASE("utf8 round trip over ascii and accented text") {
    for (std::string s : {"", "hola", "dolor torácico", "á é í ó ú ñ – ¿¡", "漢字 한국어 🩺"}) {
        CHECK(uni::encode_utf8(uni::decode_utf8(s)) == s);
    }
}

TEST_CASE("scalar length counts code points not bytes") {
    CHECK(uni::scalar_length("") == 0);
    CHECK(uni::scalar_length("dolor") == 5);
    CHECK(uni::scalar_length("torácico") == 8);   // 9 bytes
    CHECK(uni::scalar_length("ñ–á") == 3);
    CHECK(uni::scalar_length("🩺") == 1);
}

TEST_CASE("scalar slice uses code point offsets") {
    std::string text = "más fiebre aguda";
    CHECK(uni::scalar_slice(text, 0, 3) == "más");
    CHECK(uni::scalar_slice(text, 4, 10) == "fiebre");
    CHECK(uni::scalar_slice(text, 0, 0) == "");
    CHECK(uni::scalar_slice(text, 16, 16) == "");
    CHECK_THROWS_AS((void)uni::scalar_slice(text, 0, 17), Error);
    CHECK_THROWS_AS((void)uni::scalar_slice(text, 5, 4), Error);
}

TEST_CASE("invalid utf8 is rejected with a structured error") {
    std::vector<std::string> bad = {
        "\x80",              // stray continuation
        "\xC3",              // truncated
        "\xC0\xAF",          // overlong
        "\xED\xA0\x80",      // surrogate
        "\xF4\x90\x80\x80",  // > U+10FFFF
        "\xFF",              // invalid leading byte
    };
    for (const std::string& s : bad) {
        CHECK_THROWS_AS((void)uni::decode_utf8(s), Error);
        try {
            (void)uni::decode_utf8(s);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidUtf8);
        }
    }
}

TEST_CASE("random utf8 strings survive encode/decode") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::u32string chars;
        std::size_t n = rng() % 50;
        for (std::size_t i = 0; i < n; ++i) {
            char32_t cp;
            do {
                cp = static_cast<char32_t>(rng() % 0x110000);
            } while (cp >= 0xD800 && cp <= 0xDFFF);
            chars.push_back(cp);
        }
        std::string bytes = uni::encode_utf8(chars);
        CHECK(uni::decode_utf8(bytes) == chars);
        CHECK(uni::scalar_length(bytes) == chars.size());
    }
}

TEST_CASE("character classes match the generated tables") {
    CHECK(uni::is_whitespace(U' '));
    CHECK(uni::is_whitespace(U'\t'));
    CHECK(uni::is_whitespace(U'\n'));
    CHECK(uni::is_whitespace(U' '));
    CHECK_FALSE(uni::is_whitespace(U'a'));
    CHECK_FALSE(uni::is_whitespace(U'á'));

    CHECK(uni::is_punct_or_symbol(U','));
    CHECK(uni::is_punct_or_symbol(U'.'));
    CHECK(uni::is_punct_or_symbol(U'¿'));
    CHECK(uni::is_punct_or_symbol(U'–'));
    CHECK(uni::is_punct_or_symbol(U'%'));
    CHECK(uni::is_punct_or_symbol(U'€'));
    CHECK(uni::is_punct_or_symbol(U'°'));
    CHECK_FALSE(uni::is_punct_or_symbol(U'a'));
    CHECK_FALSE(uni::is_punct_or_symbol(U'ñ'));
    CHECK_FALSE(uni::is_punct_or_symbol(U'9'));
    CHECK_FALSE(uni::is_punct_or_symbol(U'º'));  // ordinal indicator is a letter

    CHECK(uni::is_combining_mark(U'́'));  // combining acute
    CHECK_FALSE(uni::is_combining_mark(U'a'));

    CHECK(uni::to_lower(U'A') == U'a');
    CHECK(uni::to_lower(U'Ñ') == U'ñ');
    CHECK(uni::to_lower(U'Σ') == U'σ');
    CHECK(uni::to_lower(U'a') == U'a');
    CHECK(uni::to_lower(U'!') == U'!');
}

// Expected values computed with Python's unicodedata (same Unicode
// version the tables were generated from).
TEST_CASE("nfkd matches the reference implementation") {
    const std::pair<std::string, std::string> cases[] = {
        {"dolor torácico", "dolor torácico"},
        {"árbol ñandú Ü", "árbol ñandú Ü"},
        {"ﬁebre", "fiebre"},
        {"①②③", "123"},
        {"℃ № ⅓", "°C No 1⁄3"},
        {"한국어", "한국어"},
        {"q̣̇", "q̣̇"},
        {"ṩ", "ṩ"},
        {"Straße", "Straße"},
        {"İstanbul", "İstanbul"},
        {"ḱṷṓn", "ḱṷṓn"},
        {"ｆｕｌｌｗｉｄｔｈ", "fullwidth"},
    };
    for (const auto& [input, expected] : cases) {
        CHECK(uni::encode_utf8(uni::nfkd(uni::decode_utf8(input))) == expected);
    }
}

TEST_CASE("fold_for_lookup strips diacritics and case") {
    const std::pair<std::string, std::string> cases[] = {
        {"Dolor Torácico", "dolor toracico"},
        {"FIEBRE ALTA", "fiebre alta"},
        {"ñandú", "nandu"},
        {"Straße", "straße"},
        {"İstanbul", "istanbul"},
        {"ﬁebre", "fiebre"},
        {"ÁÉÍÓÚ äëïöü", "aeiou aeiou"},
    };
    for (const auto& [input, expected] : cases) {
        CHECK(uni::fold_for_lookup(input) == expected);
    }
}

TEST_CASE("fold_for_lookup is idempotent") {
    std::mt19937_64 rng(11);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    const std::u32string accents = U"áéíóúñüÁÉÍÓÚÑÜ";
    for (int trial = 0; trial < 200; ++trial) {
        std::u32string chars;
        std::size_t n = 1 + rng() % 20;
        for (std::size_t i = 0; i < n; ++i) {
            switch (rng() % 4) {
                case 0: chars.push_back(accents[rng() % accents.size()]); break;
                case 1: chars.push_back(U' '); break;
                default: chars.push_back(static_cast<char32_t>(alphabet[rng() % 26])); break;
            }
        }
        std::string once = uni::fold_for_lookup(uni::encode_utf8(chars));
        CHECK(uni::fold_for_lookup(once) == once);
    }
}
