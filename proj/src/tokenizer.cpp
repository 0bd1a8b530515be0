#include "clinspan/tokenizer.hpp"

#include <algorithm>
#include <charconv>
#include <memory>
#include <tuple>

#include "clinspan/parallel.hpp"
#include "clinspan/unicode.hpp"

namespace clinspan {

std::vector<Token> tokenize(std::string_view utf8_text) {
    std::u32string chars = uni::decode_utf8(utf8_text);
    std::vector<Token> tokens;

    auto emit = [&](std::size_t a, std::size_t b) {
        tokens.push_back(
            {a, b, uni::encode_utf8(std::u32string_view(chars).substr(a, b - a))});
    };

    std::size_t i = 0;
    const std::size_t n = chars.size();
    while (i < n) {
        if (uni::is_whitespace(chars[i])) {
            ++i;
            continue;
        }
        std::size_t run_end = i;
        while (run_end < n && !uni::is_whitespace(chars[run_end])) ++run_end;

        std::size_t a = i;
        std::size_t b = run_end;
        while (a < b && uni::is_punct_or_symbol(chars[a])) {
            emit(a, a + 1);
            ++a;
        }
        std::size_t core_end = b;
        while (core_end > a && uni::is_punct_or_symbol(chars[core_end - 1])) --core_end;
        if (a < core_end) emit(a, core_end);
        for (std::size_t p = core_end; p < b; ++p) emit(p, p + 1);

        i = run_end;
    }
    return tokens;
}

Tokenizer rule_tokenizer() {
    return [](const DocumentText& doc) { return tokenize(doc.text); };
}

TokenMap tokenize_documents(const DocumentMap& docs, std::size_t threads) {
    std::vector<const DocumentText*> order;
    order.reserve(docs.size());
    for (const auto& [_, doc] : docs) order.push_back(&doc);

    std::vector<std::vector<Token>> slots(order.size());
    parallel_for(order.size(), threads,
                 [&](std::size_t i) { slots[i] = tokenize(order[i]->text); });

    TokenMap out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.emplace(order[i]->doc_id, std::move(slots[i]));
    }
    return out;
}

std::string write_token_table(const TokenMap& tokens) {
    std::string out;
    for (const auto& [doc_id, toks] : tokens) {
        for (const Token& t : toks) {
            out += doc_id;
            out += '\t';
            out += std::to_string(t.start);
            out += '\t';
            out += std::to_string(t.end);
            out += '\n';
        }
    }
    return out;
}

namespace {

std::size_t parse_uint(std::string_view field, const char* name, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, 10);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw Error(ErrorKind::BadOffset,
                    std::string(name) + " is not a base-10 integer: '" + std::string(field) + "'",
                    line_no);
    }
    return value;
}

}  // namespace

TokenMap read_token_table(std::string_view bytes, const DocumentMap& docs) {
    uni::scalar_length(bytes);  // reject non-UTF-8 input outright

    TokenMap out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t nl = bytes.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos) ? bytes.substr(pos)
                                                               : bytes.substr(pos, nl - pos);
        pos = (nl == std::string_view::npos) ? bytes.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::size_t t1 = line.find('\t');
        std::size_t t2 = (t1 == std::string_view::npos) ? std::string_view::npos
                                                        : line.find('\t', t1 + 1);
        if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
            line.find('\t', t2 + 1) != std::string_view::npos) {
            throw Error(ErrorKind::MalformedRow, "expected 3 tab-separated columns", line_no);
        }
        std::string doc_id(line.substr(0, t1));
        std::size_t start = parse_uint(line.substr(t1 + 1, t2 - t1 - 1), "start", line_no);
        std::size_t end = parse_uint(line.substr(t2 + 1), "end", line_no);

        auto doc_it = docs.find(doc_id);
        if (doc_it == docs.end()) {
            throw Error(ErrorKind::UnknownDocument, "unknown document '" + doc_id + "'", line_no);
        }
        const DocumentText& doc = doc_it->second;
        if (start >= end || end > doc.length) {
            throw Error(ErrorKind::OffsetOutOfRange,
                        "token [" + std::to_string(start) + ", " + std::to_string(end) +
                            ") outside document '" + doc_id + "' of length " +
                            std::to_string(doc.length),
                        line_no);
        }
        std::string surface = uni::scalar_slice(doc.text, start, end);
        for (char32_t cp : uni::decode_utf8(surface)) {
            if (uni::is_whitespace(cp)) {
                throw Error(ErrorKind::InvalidToken,
                            "token [" + std::to_string(start) + ", " + std::to_string(end) +
                                ") in document '" + doc_id + "' contains whitespace",
                            line_no);
            }
        }
        out[doc_id].push_back({start, end, std::move(surface)});
    }

    for (auto& [doc_id, toks] : out) {
        std::sort(toks.begin(), toks.end(), [](const Token& a, const Token& b) {
            return std::tie(a.start, a.end) < std::tie(b.start, b.end);
        });
        for (std::size_t i = 1; i < toks.size(); ++i) {
            if (toks[i].start < toks[i - 1].end) {
                throw Error(ErrorKind::InvalidToken,
                            "overlapping tokens in document '" + doc_id + "' at offset " +
                                std::to_string(toks[i].start));
            }
        }
    }
    return out;
}

Tokenizer file_tokenizer(TokenMap tokens) {
    auto shared = std::make_shared<TokenMap>(std::move(tokens));
    return [shared](const DocumentText& doc) {
        auto it = shared->find(doc.doc_id);
        if (it == shared->end()) {
            throw Error(ErrorKind::UnknownDocument,
                        "token file does not cover document '" + doc.doc_id + "'");
        }
        return it->second;
    };
}

}  // namespace clinspan
