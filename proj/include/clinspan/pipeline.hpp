#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "clinspan/ensemble.hpp"
#include "clinspan/metrics.hpp"
#include "clinspan/tagcodec.hpp"

namespace clinspan {

struct SplitSpec {
    double train_fraction = 0.95;
    std::uint64_t seed = 42;
};

struct SplitResult {
    AnnotatedCorpus train;
    AnnotatedCorpus validation;
};

// Deterministic seeded split. Doc ids are sorted, shuffled with a
// Fisher-Yates pass driven by std::mt19937_64 (bit-identical across
// platforms), and the first round(train_fraction * N) become the train
// side. Throws DegenerateSplit when either side would be empty.
SplitResult split_corpus(const AnnotatedCorpus& corpus, const SplitSpec& spec);

// Dictionary tagger used as a stand-in prediction producer. Entries are
// the training snippets normalized by uni::fold_for_lookup; the window
// bound is the largest entry token count.
class Gazetteer {
public:
    // Throws EmptyTraining when the corpus has no usable span.
    static Gazetteer train(const AnnotatedCorpus& corpus);

    // Left-to-right longest-match scan over token windows. Matched tokens
    // are consumed, so output spans never overlap. ann_ids are G1, G2, ...
    std::vector<EntitySpan> tag(const DocumentText& doc, const std::vector<Token>& tokens) const;

    std::size_t entry_count() const { return entries_.size(); }
    std::size_t max_window_tokens() const { return max_tokens_; }
    bool contains(std::string_view normalized) const {
        return entries_.contains(std::string(normalized));
    }

private:
    std::unordered_set<std::string> entries_;
    std::size_t max_tokens_ = 0;
};

// Tags every document; parallel across documents.
SpansByDoc tag_corpus(const Gazetteer& gazetteer, const DocumentMap& docs,
                      const TokenMap& tokens, std::size_t threads = 1);

enum class PredictionFormat { SpanTsv, TokenTags };

// A file starting with `#doc ` is a tag-sequence file; anything else is
// an annotation table.
PredictionFormat detect_prediction_format(std::string_view bytes);

struct LoadedPredictions {
    PredictionSet set;
    std::size_t repaired = 0;  // IOB violations rewritten by repair_tags
    std::vector<Diagnostic> diagnostics;
};

// Loads one system's predictions for ensembling. Tag-sequence files keep
// their own tokenization (validated against the texts); annotation tables
// are re-encoded with encode_iob(Clip) over the supplied tokenization,
// producing a sequence for every document in `tokens`. Output sequences
// always pass IOB validity.
LoadedPredictions read_predictions(std::string_view bytes, PredictionFormat format,
                                   const std::string& system_id, const DocumentMap& docs,
                                   const TokenMap& tokens);

std::string write_predictions(const PredictionSet& set, PredictionFormat format,
                              const DocumentMap& docs);

struct LoadedSpans {
    SpansByDoc spans;
    std::size_t repaired = 0;
    std::vector<Diagnostic> diagnostics;
};

// Loads predictions as plain spans for evaluation: annotation tables are
// bound strictly (offsets authoritative, snippets checked); tag-sequence
// files are repaired and decoded.
LoadedSpans read_prediction_spans(std::string_view bytes, PredictionFormat format,
                                  const DocumentMap& docs);

}  // namespace clinspan
