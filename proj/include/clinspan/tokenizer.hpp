#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clinspan/corpus.hpp"

namespace clinspan {

// A token: half-open scalar offsets plus the exact surface slice.
// Surfaces never contain whitespace.
struct Token {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string surface;  // UTF-8

    friend bool operator==(const Token&, const Token&) = default;
};

using TokenMap = std::map<std::string, std::vector<Token>>;

// Deterministic rule tokenizer:
//   1. split on Unicode whitespace;
//   2. within each run, repeatedly peel off leading/trailing characters
//      of category P* or S* as single-character tokens;
//   3. interior punctuation ("38.5", "anti-TNF") stays attached.
std::vector<Token> tokenize(std::string_view utf8_text);

// Any callable producing tokens for a document text. Lets an external
// tool's tokenization (loaded from a token file) replace the rule
// tokenizer everywhere downstream.
using Tokenizer = std::function<std::vector<Token>(const DocumentText&)>;

Tokenizer rule_tokenizer();

// Tokenizes every document. The map is keyed by doc_id, so the result is
// independent of input order.
TokenMap tokenize_documents(const DocumentMap& docs, std::size_t threads = 1);

// Token-offset file: `doc_id  start  end` TSV rows, LF newlines.
std::string write_token_table(const TokenMap& tokens);

// Parses and validates externally supplied tokenization against the
// document texts: offsets in range, strictly increasing, non-overlapping,
// whitespace-free surfaces. Throws Error{InvalidToken} on violations.
TokenMap read_token_table(std::string_view bytes, const DocumentMap& docs);

// Tokenizer backed by a token file for the documents it covers.
Tokenizer file_tokenizer(TokenMap tokens);

}  // namespace clinspan
