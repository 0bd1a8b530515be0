#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "clinspan/tagcodec.hpp"

namespace clinspan {

// One system's predictions over a corpus. Weights scale the system's
// votes; 1.0 reproduces plain majority voting.
struct PredictionSet {
    std::string system_id;
    double weight = 1.0;
    std::map<std::string, TagSequence> predictions;  // doc_id -> tags
};

enum class TiePolicy {
    PreferO,       // O wins any tie it participates in; otherwise lexicographic
    Lexicographic  // smallest tag string wins
};

// Token-level majority voting. All sets must cover the same doc_ids with
// identical token lists per document. Each token's output tag is the one
// with the greatest summed weight; the result is passed through
// repair_tags(ToB) so it is always valid IOB2.
std::map<std::string, TagSequence> vote_tokens(std::span<const PredictionSet> sets,
                                               TiePolicy tie_policy);

// Span-level majority voting: each system's sequences are decoded into
// spans, and a candidate (start, end, label) is kept when the weight of
// the systems predicting exactly that span exceeds threshold x total
// weight (threshold 1.0 keeps unanimous spans). Overlap conflicts among
// kept spans drop the lower-vote span; vote ties keep the earlier start.
// ann_ids are V1, V2, ... per document.
std::map<std::string, std::vector<EntitySpan>> vote_spans(std::span<const PredictionSet> sets,
                                                          double threshold,
                                                          const DocumentMap& docs);

inline constexpr double kDefaultVoteThreshold = 0.5;

}  // namespace clinspan
