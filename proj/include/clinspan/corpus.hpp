#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "clinspan/error.hpp"

namespace clinspan {

// One clinical report. `length` counts Unicode scalar values, not bytes.
struct DocumentText {
    std::string doc_id;
    std::string text;  // UTF-8
    std::size_t length = 0;
};

// Validates UTF-8, computes the scalar length, and rejects doc ids that
// are empty or contain tabs/newlines.
DocumentText make_document(std::string doc_id, std::string utf8_text);

// A labeled character-offset span. Offsets are scalar values, half-open.
struct EntitySpan {
    std::string doc_id;
    std::string ann_id;
    std::string label;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string snippet;

    friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

inline bool span_order(const EntitySpan& a, const EntitySpan& b) {
    return std::tie(a.start, a.end, a.label, a.ann_id) <
           std::tie(b.start, b.end, b.label, b.ann_id);
}

using DocumentMap = std::map<std::string, DocumentText>;
using SpansByDoc = std::map<std::string, std::vector<EntitySpan>>;

struct AnnotatedCorpus {
    DocumentMap documents;
    SpansByDoc spans;  // per doc, sorted by (start, end, label, ann_id)

    std::size_t span_count() const;
    std::vector<EntitySpan> all_spans() const;  // in (doc_id, start, end, ann_id) order
};

enum class Strictness { Strict, Lenient };

// Default entity label of the annotation format.
inline constexpr std::string_view kDefaultLabel = "SINTOMA";

// Parses the tab-separated annotation table. Column order:
//   filename  ann_id  label  start_span  end_span  text
// A header row is recognized by the literal first cell `filename`. The
// text column is last and may itself contain tabs.
std::vector<EntitySpan> parse_annotation_table(std::string_view bytes);

struct BindResult {
    AnnotatedCorpus corpus;
    std::vector<Diagnostic> diagnostics;  // lenient mode: one entry per dropped span
};

// Establishes the corpus invariants. Strict mode throws on the first
// unknown document, out-of-range offset, snippet mismatch, or duplicate
// (doc_id, ann_id); lenient mode drops the offending span and records a
// diagnostic. Overlapping spans are accepted here either way.
BindResult bind_corpus(std::vector<DocumentText> docs, const std::vector<EntitySpan>& spans,
                       Strictness strictness);

// Serializes a corpus back to the annotation-table format: header row,
// then one row per span sorted by (doc_id, start, end, ann_id), LF
// newlines.
std::string write_annotation_table(const AnnotatedCorpus& corpus);
std::string write_annotation_table(const std::vector<EntitySpan>& spans);

// Reads every `<doc_id>.txt` file under `dir` (non-recursive).
std::vector<DocumentText> read_text_dir(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace clinspan
