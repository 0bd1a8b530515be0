#include "clinspan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "clinspan/parallel.hpp"
#include "clinspan/unicode.hpp"

namespace clinspan {

namespace {

AnnotatedCorpus subset(const AnnotatedCorpus& corpus, const std::vector<std::string>& doc_ids) {
    AnnotatedCorpus out;
    for (const std::string& id : doc_ids) {
        out.documents.emplace(id, corpus.documents.at(id));
        auto it = corpus.spans.find(id);
        out.spans.emplace(id, it == corpus.spans.end() ? std::vector<EntitySpan>{} : it->second);
    }
    return out;
}

}  // namespace

SplitResult split_corpus(const AnnotatedCorpus& corpus, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "train fraction " + std::to_string(spec.train_fraction) + " outside (0, 1)");
    }
    const std::size_t n = corpus.documents.size();
    if (n < 2) {
        throw Error(ErrorKind::DegenerateSplit,
                    "corpus has " + std::to_string(n) + " document(s); need at least 2");
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& [doc_id, _] : corpus.documents) ids.push_back(doc_id);
    // documents is an ordered map, so ids are already sorted.

    // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is not
    // pinned by the standard, mt19937_64's output is.
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(ids[i], ids[j]);
    }

    // Round half up.
    const auto train_n =
        static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(n) + 0.5));
    if (train_n == 0 || train_n >= n) {
        throw Error(ErrorKind::DegenerateSplit,
                    "fraction " + std::to_string(spec.train_fraction) + " over " +
                        std::to_string(n) + " documents leaves one side empty");
    }

    std::vector<std::string> train_ids(ids.begin(), ids.begin() + static_cast<long>(train_n));
    std::vector<std::string> val_ids(ids.begin() + static_cast<long>(train_n), ids.end());
    return {subset(corpus, train_ids), subset(corpus, val_ids)};
}

Gazetteer Gazetteer::train(const AnnotatedCorpus& corpus) {
    if (corpus.span_count() == 0) {
        throw Error(ErrorKind::EmptyTraining, "training corpus has no spans");
    }
    Gazetteer gazetteer;
    for (const auto& [_, doc_spans] : corpus.spans) {
        for (const EntitySpan& span : doc_spans) {
            std::string key = uni::fold_for_lookup(span.snippet);
            if (key.empty()) continue;
            gazetteer.entries_.insert(std::move(key));
            gazetteer.max_tokens_ = std::max(gazetteer.max_tokens_, tokenize(span.snippet).size());
        }
    }
    if (gazetteer.entries_.empty()) {
        throw Error(ErrorKind::EmptyTraining, "no training snippet survives normalization");
    }
    return gazetteer;
}

std::vector<EntitySpan> Gazetteer::tag(const DocumentText& doc,
                                       const std::vector<Token>& tokens) const {
    std::vector<EntitySpan> spans;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t longest = std::min(max_tokens_, tokens.size() - i);
        bool matched = false;
        for (std::size_t k = longest; k >= 1; --k) {
            std::size_t start = tokens[i].start;
            std::size_t end = tokens[i + k - 1].end;
            std::string surface = uni::scalar_slice(doc.text, start, end);
            if (!entries_.contains(uni::fold_for_lookup(surface))) continue;

            EntitySpan span;
            span.doc_id = doc.doc_id;
            span.ann_id = "G" + std::to_string(spans.size() + 1);
            span.label = std::string(kDefaultLabel);
            span.start = start;
            span.end = end;
            span.snippet = std::move(surface);
            spans.push_back(std::move(span));
            i += k;
            matched = true;
            break;
        }
        if (!matched) ++i;
    }
    return spans;
}

SpansByDoc tag_corpus(const Gazetteer& gazetteer, const DocumentMap& docs, const TokenMap& tokens,
                      std::size_t threads) {
    std::vector<const DocumentText*> order;
    order.reserve(docs.size());
    for (const auto& [_, doc] : docs) order.push_back(&doc);

    std::vector<std::vector<EntitySpan>> slots(order.size());
    parallel_for(order.size(), threads, [&](std::size_t i) {
        const DocumentText& doc = *order[i];
        auto tok_it = tokens.find(doc.doc_id);
        if (tok_it == tokens.end()) {
            throw Error(ErrorKind::UnknownDocument,
                        "no tokenization for document '" + doc.doc_id + "'");
        }
        slots[i] = gazetteer.tag(doc, tok_it->second);
    });

    SpansByDoc out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.emplace(order[i]->doc_id, std::move(slots[i]));
    }
    return out;
}

PredictionFormat detect_prediction_format(std::string_view bytes) {
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        std::size_t nl = bytes.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos) ? bytes.substr(pos)
                                                               : bytes.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            return line.rfind("#doc ", 0) == 0 ? PredictionFormat::TokenTags
                                               : PredictionFormat::SpanTsv;
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return PredictionFormat::SpanTsv;  // empty file: an empty annotation table
}

LoadedPredictions read_predictions(std::string_view bytes, PredictionFormat format,
                                   const std::string& system_id, const DocumentMap& docs,
                                   const TokenMap& tokens) {
    LoadedPredictions loaded;
    loaded.set.system_id = system_id;

    if (format == PredictionFormat::TokenTags) {
        for (TagSequence& seq : read_tag_table(bytes, &docs)) {
            RepairResult repair = repair_tags(seq.tags, RepairMode::ToB);
            if (repair.changed > 0) {
                loaded.repaired += repair.changed;
                loaded.diagnostics.push_back(
                    {ErrorKind::InvalidSequence, seq.doc_id,
                     std::to_string(repair.changed) + " orphan inside tag(s) rewritten to B-",
                     0});
            }
            seq.tags = std::move(repair.tags);
            loaded.set.predictions.emplace(seq.doc_id, std::move(seq));
        }
        return loaded;
    }

    BindResult bound = bind_corpus(
        [&] {
            std::vector<DocumentText> list;
            list.reserve(docs.size());
            for (const auto& [_, doc] : docs) list.push_back(doc);
            return list;
        }(),
        parse_annotation_table(bytes), Strictness::Strict);

    for (const auto& [doc_id, doc_spans] : bound.corpus.spans) {
        if (!doc_spans.empty() && !tokens.contains(doc_id)) {
            throw Error(ErrorKind::UnknownDocument,
                        "no tokenization for predicted document '" + doc_id + "'");
        }
    }
    for (const auto& [doc_id, toks] : tokens) {
        auto span_it = bound.corpus.spans.find(doc_id);
        if (span_it == bound.corpus.spans.end()) {
            throw Error(ErrorKind::UnknownDocument,
                        "tokenization references unknown document '" + doc_id + "'");
        }
        EncodeResult encoded = encode_iob(doc_id, toks, span_it->second, OverlapPolicy::Clip);
        for (Diagnostic& d : encoded.diagnostics) loaded.diagnostics.push_back(std::move(d));
        loaded.set.predictions.emplace(doc_id, std::move(encoded.sequence));
    }
    return loaded;
}

std::string write_predictions(const PredictionSet& set, PredictionFormat format,
                              const DocumentMap& docs) {
    if (format == PredictionFormat::TokenTags) {
        std::vector<TagSequence> sequences;
        sequences.reserve(set.predictions.size());
        for (const auto& [_, seq] : set.predictions) sequences.push_back(seq);
        return write_tag_table(sequences);
    }

    std::vector<EntitySpan> spans;
    for (const auto& [doc_id, seq] : set.predictions) {
        auto doc_it = docs.find(doc_id);
        if (doc_it == docs.end()) {
            throw Error(ErrorKind::UnknownDocument,
                        "predictions reference unknown document '" + doc_id + "'");
        }
        for (EntitySpan& span : decode_iob(seq, doc_it->second.text)) {
            spans.push_back(std::move(span));
        }
    }
    return write_annotation_table(spans);
}

LoadedSpans read_prediction_spans(std::string_view bytes, PredictionFormat format,
                                  const DocumentMap& docs) {
    LoadedSpans loaded;
    if (format == PredictionFormat::SpanTsv) {
        BindResult bound = bind_corpus(
            [&] {
                std::vector<DocumentText> list;
                list.reserve(docs.size());
                for (const auto& [_, doc] : docs) list.push_back(doc);
                return list;
            }(),
            parse_annotation_table(bytes), Strictness::Strict);
        loaded.spans = std::move(bound.corpus.spans);
        return loaded;
    }

    for (TagSequence& seq : read_tag_table(bytes, &docs)) {
        RepairResult repair = repair_tags(seq.tags, RepairMode::ToB);
        if (repair.changed > 0) {
            loaded.repaired += repair.changed;
            loaded.diagnostics.push_back(
                {ErrorKind::InvalidSequence, seq.doc_id,
                 std::to_string(repair.changed) + " orphan inside tag(s) rewritten to B-", 0});
        }
        seq.tags = std::move(repair.tags);
        loaded.spans[seq.doc_id] = decode_iob(seq, docs.at(seq.doc_id).text);
    }
    return loaded;
}

}  // namespace clinspan
