#include "clinspan/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

#include "json.hpp"

namespace clinspan {

namespace {

using SpanKey = std::tuple<std::size_t, std::size_t, std::string>;

std::vector<SpanKey> dedup_keys(const std::vector<EntitySpan>& spans) {
    std::vector<SpanKey> keys;
    keys.reserve(spans.size());
    for (const EntitySpan& s : spans) keys.emplace_back(s.start, s.end, s.label);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

void finalize(EvalReport& report) {
    const bool no_pred = report.tp + report.fp == 0;
    const bool no_gold = report.tp + report.fn == 0;
    if (no_pred && no_gold) {
        report.precision = report.recall = report.f1 = 1.0;
        return;
    }
    report.precision =
        no_pred ? 0.0 : static_cast<double>(report.tp) / static_cast<double>(report.tp + report.fp);
    report.recall =
        no_gold ? 0.0 : static_cast<double>(report.tp) / static_cast<double>(report.tp + report.fn);
    report.f1 = f1_from_pr(report.precision, report.recall);
}

const std::vector<EntitySpan>& spans_or_empty(const SpansByDoc& spans, const std::string& doc_id) {
    static const std::vector<EntitySpan> kEmpty;
    auto it = spans.find(doc_id);
    return it == spans.end() ? kEmpty : it->second;
}

void check_known_documents(const AnnotatedCorpus& gold, const SpansByDoc& predictions) {
    for (const auto& [doc_id, _] : predictions) {
        if (!gold.documents.contains(doc_id)) {
            throw Error(ErrorKind::UnknownDocument,
                        "predictions reference unknown document '" + doc_id + "'");
        }
    }
}

DocCounts count_strict(const std::vector<EntitySpan>& gold, const std::vector<EntitySpan>& pred) {
    auto gold_keys = dedup_keys(gold);
    auto pred_keys = dedup_keys(pred);
    std::size_t matched = 0;
    for (const SpanKey& key : pred_keys) {
        if (std::binary_search(gold_keys.begin(), gold_keys.end(), key)) ++matched;
    }
    return {matched, pred_keys.size() - matched, gold_keys.size() - matched};
}

DocCounts count_overlap(const std::vector<EntitySpan>& gold, const std::vector<EntitySpan>& pred) {
    auto gold_keys = dedup_keys(gold);
    auto pred_keys = dedup_keys(pred);
    std::vector<bool> taken(gold_keys.size(), false);
    std::size_t matched = 0;
    for (const SpanKey& p : pred_keys) {
        for (std::size_t g = 0; g < gold_keys.size(); ++g) {
            if (taken[g]) continue;
            if (std::get<2>(gold_keys[g]) != std::get<2>(p)) continue;
            if (std::get<0>(p) < std::get<1>(gold_keys[g]) &&
                std::get<0>(gold_keys[g]) < std::get<1>(p)) {
                taken[g] = true;
                ++matched;
                break;
            }
        }
    }
    return {matched, pred_keys.size() - matched, gold_keys.size() - matched};
}

EvalReport run_evaluation(const AnnotatedCorpus& gold, const SpansByDoc& predictions,
                          MatchMode mode) {
    check_known_documents(gold, predictions);
    EvalReport report;
    report.mode = mode;
    for (const auto& [doc_id, _] : gold.documents) {
        const auto& gold_spans = spans_or_empty(gold.spans, doc_id);
        const auto& pred_spans = spans_or_empty(predictions, doc_id);
        DocCounts counts = mode == MatchMode::Strict ? count_strict(gold_spans, pred_spans)
                                                     : count_overlap(gold_spans, pred_spans);
        report.tp += counts.tp;
        report.fp += counts.fp;
        report.fn += counts.fn;
        report.per_doc.emplace(doc_id, counts);
    }
    finalize(report);
    return report;
}

}  // namespace

double f1_from_pr(double p, double r) {
    if (p + r <= 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

EvalReport evaluate_strict(const AnnotatedCorpus& gold, const SpansByDoc& predictions) {
    return run_evaluation(gold, predictions, MatchMode::Strict);
}

EvalReport evaluate_overlap(const AnnotatedCorpus& gold, const SpansByDoc& predictions) {
    return run_evaluation(gold, predictions, MatchMode::Overlap);
}

EvalReport evaluate(const AnnotatedCorpus& gold, const SpansByDoc& predictions, MatchMode mode) {
    return run_evaluation(gold, predictions, mode);
}

const char* match_mode_name(MatchMode mode) {
    return mode == MatchMode::Strict ? "strict" : "overlap";
}

std::string report_to_json(const EvalReport& report, bool per_doc) {
    nlohmann::json j;
    j["mode"] = match_mode_name(report.mode);
    j["tp"] = report.tp;
    j["fp"] = report.fp;
    j["fn"] = report.fn;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    j["f1"] = report.f1;
    if (per_doc) {
        nlohmann::json docs = nlohmann::json::object();
        for (const auto& [doc_id, counts] : report.per_doc) {
            docs[doc_id] = {{"tp", counts.tp}, {"fp", counts.fp}, {"fn", counts.fn}};
        }
        j["per_doc"] = std::move(docs);
    }
    return j.dump(2);
}

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string report_tsv_header() {
    return "system\tprecision\trecall\tf1\ttp\tfp\tfn\n";
}

std::string report_tsv_row(const std::string& system_id, const EvalReport& report) {
    std::string out = system_id;
    out += '\t';
    out += fixed4(report.precision);
    out += '\t';
    out += fixed4(report.recall);
    out += '\t';
    out += fixed4(report.f1);
    out += '\t';
    out += std::to_string(report.tp);
    out += '\t';
    out += std::to_string(report.fp);
    out += '\t';
    out += std::to_string(report.fn);
    out += '\n';
    return out;
}

std::string report_human(const std::string& system_id, const EvalReport& report) {
    std::string out;
    out += "system:    " + system_id + "\n";
    out += "mode:      " + std::string(match_mode_name(report.mode)) + "\n";
    out += "tp/fp/fn:  " + std::to_string(report.tp) + " / " + std::to_string(report.fp) + " / " +
           std::to_string(report.fn) + "\n";
    out += "precision: " + fixed4(report.precision) + "\n";
    out += "recall:    " + fixed4(report.recall) + "\n";
    out += "f1:        " + fixed4(report.f1) + "\n";
    return out;
}

}  // namespace clinspan
