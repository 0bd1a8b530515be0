#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "clinspan/corpus.hpp"

namespace clinspan {

enum class MatchMode { Strict, Overlap };

struct DocCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    friend bool operator==(const DocCounts&, const DocCounts&) = default;
};

// Micro-averaged span-level evaluation report. Convention: when both
// sides are empty (tp+fp = 0 and tp+fn = 0) all three metrics are 1.0;
// a single empty side yields 0.0 for the affected metric.
struct EvalReport {
    MatchMode mode = MatchMode::Strict;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::map<std::string, DocCounts> per_doc;
};

// 2pr / (p + r), or 0 when p + r = 0.
double f1_from_pr(double p, double r);

// Strict matching: a prediction is a true positive iff a gold span with
// the same (doc_id, start, end, label) exists. Both sides are
// deduplicated on (start, end, label) per document first. Every predicted
// doc_id must be a document of the gold corpus.
EvalReport evaluate_strict(const AnnotatedCorpus& gold, const SpansByDoc& predictions);

// Lenient diagnostic variant: greedy one-to-one matching in (start, end)
// order; a prediction matches the first unmatched same-label gold span
// whose interval intersects it.
EvalReport evaluate_overlap(const AnnotatedCorpus& gold, const SpansByDoc& predictions);

EvalReport evaluate(const AnnotatedCorpus& gold, const SpansByDoc& predictions, MatchMode mode);

const char* match_mode_name(MatchMode mode);

// Serialization used by the CLI: stable JSON (sorted keys), a TSV row
// per system in Table-style layout, and a human-readable block.
std::string report_to_json(const EvalReport& report, bool per_doc = true);
std::string report_tsv_header();
std::string report_tsv_row(const std::string& system_id, const EvalReport& report);
std::string report_human(const std::string& system_id, const EvalReport& report);

}  // namespace clinspan
