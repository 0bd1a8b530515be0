#include "clinspan/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "clinspan/unicode.hpp"

namespace clinspan {

namespace {

// Order-independent sum: sorting first makes the result invariant under
// permutation of the prediction sets.
double stable_sum(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

double checked_total_weight(std::span<const PredictionSet> sets) {
    if (sets.empty()) {
        throw Error(ErrorKind::EmptyEnsemble, "no prediction sets given");
    }
    std::vector<double> weights;
    weights.reserve(sets.size());
    for (const PredictionSet& set : sets) {
        if (set.weight < 0.0 || !std::isfinite(set.weight)) {
            throw Error(ErrorKind::InvalidArgument,
                        "system '" + set.system_id + "' has weight " +
                            std::to_string(set.weight) + "; weights must be finite and >= 0");
        }
        weights.push_back(set.weight);
    }
    double total = stable_sum(weights);
    if (total <= 0.0) {
        throw Error(ErrorKind::EmptyEnsemble, "total ensemble weight is zero");
    }
    return total;
}

}  // namespace

std::map<std::string, TagSequence> vote_tokens(std::span<const PredictionSet> sets,
                                               TiePolicy tie_policy) {
    checked_total_weight(sets);

    const PredictionSet& reference = sets.front();
    for (const PredictionSet& set : sets) {
        if (set.predictions.size() != reference.predictions.size()) {
            throw Error(ErrorKind::TokenizationMismatch,
                        "system '" + set.system_id + "' covers " +
                            std::to_string(set.predictions.size()) + " documents, system '" +
                            reference.system_id + "' covers " +
                            std::to_string(reference.predictions.size()));
        }
        for (const auto& [doc_id, seq] : set.predictions) {
            auto it = reference.predictions.find(doc_id);
            if (it == reference.predictions.end()) {
                throw Error(ErrorKind::TokenizationMismatch,
                            "document '" + doc_id + "' is predicted by system '" + set.system_id +
                                "' but not by system '" + reference.system_id + "'");
            }
            if (seq.tokens != it->second.tokens) {
                throw Error(ErrorKind::TokenizationMismatch,
                            "token lists for document '" + doc_id + "' differ between systems '" +
                                set.system_id + "' and '" + reference.system_id + "'");
            }
        }
    }

    std::map<std::string, TagSequence> result;
    for (const auto& [doc_id, ref_seq] : reference.predictions) {
        TagSequence voted;
        voted.doc_id = doc_id;
        voted.tokens = ref_seq.tokens;
        voted.tags.reserve(ref_seq.tokens.size());

        for (std::size_t i = 0; i < ref_seq.tokens.size(); ++i) {
            // Tally weights per tag; keys sorted so iteration order (and
            // therefore tie handling) is deterministic.
            std::map<std::string, std::vector<double>> ballots;
            for (const PredictionSet& set : sets) {
                const TagSequence& seq = set.predictions.at(doc_id);
                ballots[seq.tags[i]].push_back(set.weight);
            }
            double best = -1.0;
            std::vector<std::string> winners;
            for (auto& [tag, weights] : ballots) {
                double sum = stable_sum(weights);
                if (sum > best) {
                    best = sum;
                    winners.assign(1, tag);
                } else if (sum == best) {
                    winners.push_back(tag);
                }
            }
            std::string chosen;
            if (tie_policy == TiePolicy::PreferO &&
                std::find(winners.begin(), winners.end(), kOutsideTag) != winners.end()) {
                chosen = kOutsideTag;
            } else {
                chosen = *std::min_element(winners.begin(), winners.end());
            }
            voted.tags.push_back(std::move(chosen));
        }

        voted.tags = repair_tags(voted.tags, RepairMode::ToB).tags;
        result.emplace(doc_id, std::move(voted));
    }
    return result;
}

std::map<std::string, std::vector<EntitySpan>> vote_spans(std::span<const PredictionSet> sets,
                                                          double threshold,
                                                          const DocumentMap& docs) {
    double total = checked_total_weight(sets);
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "threshold " + std::to_string(threshold) + " outside (0, 1]");
    }

    std::set<std::string> doc_ids;
    for (const PredictionSet& set : sets) {
        for (const auto& [doc_id, _] : set.predictions) doc_ids.insert(doc_id);
    }

    std::map<std::string, std::vector<EntitySpan>> result;
    for (const std::string& doc_id : doc_ids) {
        auto doc_it = docs.find(doc_id);
        if (doc_it == docs.end()) {
            throw Error(ErrorKind::UnknownDocument,
                        "predictions reference unknown document '" + doc_id + "'");
        }
        const std::string& text = doc_it->second.text;

        struct Candidate {
            std::size_t start;
            std::size_t end;
            std::string label;
            std::vector<double> weights;
        };
        std::map<std::tuple<std::size_t, std::size_t, std::string>, std::vector<double>> tally;
        for (const PredictionSet& set : sets) {
            auto pred_it = set.predictions.find(doc_id);
            if (pred_it == set.predictions.end()) continue;  // system votes for no spans here
            for (const EntitySpan& span : decode_iob(pred_it->second, text)) {
                tally[{span.start, span.end, span.label}].push_back(set.weight);
            }
        }

        std::vector<std::pair<Candidate, double>> kept;
        for (auto& [key, weights] : tally) {
            double votes = stable_sum(weights);
            // Threshold 1.0 keeps unanimous spans; below that the vote
            // mass must strictly exceed threshold x total, so a span
            // backed by exactly half the weight is dropped by default.
            bool keep = threshold >= 1.0 ? votes >= total : votes > threshold * total;
            if (!keep) continue;
            kept.push_back({{std::get<0>(key), std::get<1>(key), std::get<2>(key), {}}, votes});
        }

        // Conflict resolution: highest vote first, earlier start on ties.
        std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return std::tie(a.first.start, a.first.end, a.first.label) <
                   std::tie(b.first.start, b.first.end, b.first.label);
        });
        std::vector<Candidate> accepted;
        for (auto& [cand, votes] : kept) {
            bool clashes = false;
            for (const Candidate& prior : accepted) {
                if (cand.start < prior.end && prior.start < cand.end) {
                    clashes = true;
                    break;
                }
            }
            if (!clashes) accepted.push_back(std::move(cand));
        }
        std::sort(accepted.begin(), accepted.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.start, a.end, a.label) < std::tie(b.start, b.end, b.label);
        });

        std::vector<EntitySpan> spans;
        spans.reserve(accepted.size());
        for (const Candidate& cand : accepted) {
            EntitySpan span;
            span.doc_id = doc_id;
            span.ann_id = "V" + std::to_string(spans.size() + 1);
            span.label = cand.label;
            span.start = cand.start;
            span.end = cand.end;
            span.snippet = uni::scalar_slice(text, span.start, span.end);
            spans.push_back(std::move(span));
        }
        result.emplace(doc_id, std::move(spans));
    }
    return result;
}

}  // namespace clinspan
