#include "clinspan/tagcodec.hpp"

#include <algorithm>
#include <charconv>

#include "clinspan/unicode.hpp"

namespace clinspan {

std::string begin_tag(std::string_view label) {
    return "B-" + std::string(label);
}

std::string inside_tag(std::string_view label) {
    return "I-" + std::string(label);
}

bool is_outside(std::string_view tag) {
    return tag == kOutsideTag;
}

void check_tag(std::string_view tag, std::size_t line) {
    if (tag == kOutsideTag) return;
    if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') return;
    throw Error(ErrorKind::BadTag, "expected O, B-<label> or I-<label>, got '" + std::string(tag) + "'",
                line);
}

std::string_view tag_label(std::string_view tag) {
    if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') return tag.substr(2);
    return {};
}

namespace {

bool is_inside_tag(std::string_view tag) {
    return tag.size() > 2 && tag[0] == 'I' && tag[1] == '-';
}

bool continues(std::string_view prev, std::string_view inside) {
    // prev must be B-L or I-L with the same label as inside (an I-L tag).
    if (prev.size() != inside.size() || prev.size() < 3) return false;
    if (prev[0] != 'B' && prev[0] != 'I') return false;
    return prev[1] == '-' && prev.substr(2) == inside.substr(2);
}

}  // namespace

std::optional<std::size_t> first_iob_violation(const std::vector<std::string>& tags) {
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (!is_inside_tag(tags[i])) continue;
        if (i == 0 || !continues(tags[i - 1], tags[i])) return i;
    }
    return std::nullopt;
}

bool iob_valid(const std::vector<std::string>& tags) {
    return !first_iob_violation(tags).has_value();
}

EncodeResult encode_iob(const std::string& doc_id, const std::vector<Token>& tokens,
                        const std::vector<EntitySpan>& spans, OverlapPolicy policy) {
    EncodeResult result;
    result.sequence.doc_id = doc_id;
    result.sequence.tokens = tokens;
    result.sequence.tags.assign(tokens.size(), kOutsideTag);

    std::vector<EntitySpan> ordered(spans);
    std::sort(ordered.begin(), ordered.end(), span_order);

    const bool strict = policy == OverlapPolicy::Strict;
    if (strict) {
        for (std::size_t i = 1; i < ordered.size(); ++i) {
            if (ordered[i].start < ordered[i - 1].end) {
                throw Error(ErrorKind::OverlappingSpans,
                            "spans " + ordered[i - 1].ann_id + " and " + ordered[i].ann_id +
                                " overlap in document '" + doc_id + "'");
            }
        }
    }

    for (const EntitySpan& span : ordered) {
        // Intersecting token range [lo, hi).
        std::size_t lo = 0;
        while (lo < tokens.size() && tokens[lo].end <= span.start) ++lo;
        std::size_t hi = lo;
        while (hi < tokens.size() && tokens[hi].start < span.end) ++hi;

        std::string where = "span " + span.ann_id + " [" + std::to_string(span.start) + ", " +
                            std::to_string(span.end) + ") in document '" + doc_id + "'";
        if (lo >= hi) {
            throw Error(ErrorKind::TokenSpanMismatch, where + " intersects no token");
        }
        bool aligned = tokens[lo].start == span.start && tokens[hi - 1].end == span.end;
        if (!aligned) {
            if (strict) {
                throw Error(ErrorKind::MisalignedBoundary,
                            where + " does not align with token boundaries");
            }
            result.diagnostics.push_back({ErrorKind::MisalignedBoundary, doc_id,
                                          where + " expanded to token boundaries [" +
                                              std::to_string(tokens[lo].start) + ", " +
                                              std::to_string(tokens[hi - 1].end) + ")",
                                          0});
        }

        bool first = true;
        std::size_t labeled = 0;
        for (std::size_t t = lo; t < hi; ++t) {
            if (!is_outside(result.sequence.tags[t])) continue;  // claimed by an earlier span
            result.sequence.tags[t] = first ? begin_tag(span.label) : inside_tag(span.label);
            first = false;
            ++labeled;
        }
        if (labeled < hi - lo) {
            // Only reachable under Clip: Strict rejected overlaps above and
            // alignment guarantees disjoint token ranges.
            result.diagnostics.push_back({ErrorKind::OverlappingSpans, doc_id,
                                          where + (labeled == 0 ? " dropped: all its tokens"
                                                                : " truncated: some tokens") +
                                              " are claimed by an earlier span",
                                          0});
        }
    }
    return result;
}

std::vector<EntitySpan> decode_iob(const TagSequence& seq, std::string_view text) {
    if (seq.tags.size() != seq.tokens.size()) {
        throw Error(ErrorKind::InvalidSequence,
                    "document '" + seq.doc_id + "' has " + std::to_string(seq.tokens.size()) +
                        " tokens but " + std::to_string(seq.tags.size()) + " tags");
    }
    for (const std::string& tag : seq.tags) check_tag(tag);
    if (auto bad = first_iob_violation(seq.tags)) {
        throw Error(ErrorKind::InvalidSequence,
                    "orphan inside tag '" + seq.tags[*bad] + "' at token " + std::to_string(*bad) +
                        " in document '" + seq.doc_id + "' (run repair_tags first)");
    }

    std::vector<EntitySpan> spans;
    std::size_t i = 0;
    while (i < seq.tags.size()) {
        const std::string& tag = seq.tags[i];
        if (tag[0] != 'B') {
            ++i;
            continue;
        }
        std::string label(tag_label(tag));
        std::size_t last = i;
        while (last + 1 < seq.tags.size() && seq.tags[last + 1] == inside_tag(label)) ++last;

        EntitySpan span;
        span.doc_id = seq.doc_id;
        span.ann_id = "P" + std::to_string(spans.size() + 1);
        span.label = std::move(label);
        span.start = seq.tokens[i].start;
        span.end = seq.tokens[last].end;
        span.snippet = uni::scalar_slice(text, span.start, span.end);
        spans.push_back(std::move(span));
        i = last + 1;
    }
    return spans;
}

RepairResult repair_tags(const std::vector<std::string>& tags, RepairMode mode) {
    RepairResult result;
    result.tags = tags;
    for (std::size_t i = 0; i < result.tags.size(); ++i) {
        if (!is_inside_tag(result.tags[i])) continue;
        bool ok = i > 0 && continues(result.tags[i - 1], result.tags[i]);
        if (ok) continue;
        if (mode == RepairMode::ToB) {
            result.tags[i][0] = 'B';
        } else {
            result.tags[i] = kOutsideTag;
        }
        ++result.changed;
    }
    return result;
}

std::string write_tag_table(const std::vector<TagSequence>& sequences) {
    std::vector<const TagSequence*> ordered;
    ordered.reserve(sequences.size());
    for (const TagSequence& seq : sequences) ordered.push_back(&seq);
    std::sort(ordered.begin(), ordered.end(),
              [](const TagSequence* a, const TagSequence* b) { return a->doc_id < b->doc_id; });

    std::string out;
    for (std::size_t d = 0; d < ordered.size(); ++d) {
        if (d > 0) out += '\n';
        const TagSequence& seq = *ordered[d];
        out += "#doc ";
        out += seq.doc_id;
        out += '\n';
        for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
            const Token& t = seq.tokens[i];
            out += std::to_string(t.start);
            out += '\t';
            out += std::to_string(t.end);
            out += '\t';
            out += t.surface;
            out += '\t';
            out += seq.tags[i];
            out += '\n';
        }
    }
    return out;
}

std::vector<TagSequence> read_tag_table(std::string_view bytes, const DocumentMap* docs) {
    uni::scalar_length(bytes);

    std::vector<TagSequence> sequences;
    std::vector<std::string> seen_docs;
    bool in_doc = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t nl = bytes.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos) ? bytes.substr(pos)
                                                               : bytes.substr(pos, nl - pos);
        pos = (nl == std::string_view::npos) ? bytes.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.empty()) {
            in_doc = false;
            continue;
        }
        if (line.rfind("#doc ", 0) == 0) {
            std::string doc_id(line.substr(5));
            if (doc_id.empty() || doc_id.find('\t') != std::string::npos) {
                throw Error(ErrorKind::BadDocumentId, "bad document id '" + doc_id + "'", line_no);
            }
            if (std::find(seen_docs.begin(), seen_docs.end(), doc_id) != seen_docs.end()) {
                throw Error(ErrorKind::DuplicateDocument,
                            "document '" + doc_id + "' appears twice", line_no);
            }
            seen_docs.push_back(doc_id);
            sequences.push_back(TagSequence{doc_id, {}, {}});
            in_doc = true;
            continue;
        }
        if (!in_doc) {
            throw Error(ErrorKind::MalformedRow, "token row outside a #doc block", line_no);
        }

        auto next_tab = [&](std::size_t from) { return line.find('\t', from); };
        std::size_t t1 = next_tab(0);
        std::size_t t2 = (t1 == std::string_view::npos) ? t1 : next_tab(t1 + 1);
        std::size_t t3 = (t2 == std::string_view::npos) ? t2 : next_tab(t2 + 1);
        if (t3 == std::string_view::npos || next_tab(t3 + 1) != std::string_view::npos) {
            throw Error(ErrorKind::MalformedRow,
                        "expected 4 tab-separated columns (start, end, surface, tag)", line_no);
        }

        Token token;
        {
            std::string_view f0 = line.substr(0, t1);
            std::string_view f1 = line.substr(t1 + 1, t2 - t1 - 1);
            auto parse = [&](std::string_view field, const char* name) {
                std::size_t value = 0;
                auto [ptr, ec] =
                    std::from_chars(field.data(), field.data() + field.size(), value, 10);
                if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
                    throw Error(ErrorKind::BadOffset,
                                std::string(name) + " is not a base-10 integer: '" +
                                    std::string(field) + "'",
                                line_no);
                }
                return value;
            };
            token.start = parse(f0, "start");
            token.end = parse(f1, "end");
        }
        token.surface = std::string(line.substr(t2 + 1, t3 - t2 - 1));
        std::string tag(line.substr(t3 + 1));
        check_tag(tag, line_no);

        if (token.start >= token.end) {
            throw Error(ErrorKind::BadOffset,
                        "token start " + std::to_string(token.start) + " >= end " +
                            std::to_string(token.end),
                        line_no);
        }
        for (char32_t cp : uni::decode_utf8(token.surface)) {
            if (uni::is_whitespace(cp)) {
                throw Error(ErrorKind::InvalidToken, "token surface contains whitespace", line_no);
            }
        }

        TagSequence& seq = sequences.back();
        if (!seq.tokens.empty() && token.start < seq.tokens.back().end) {
            throw Error(ErrorKind::InvalidToken,
                        "token at offset " + std::to_string(token.start) +
                            " overlaps or precedes the previous token",
                        line_no);
        }
        seq.tokens.push_back(std::move(token));
        seq.tags.push_back(std::move(tag));
    }

    if (docs != nullptr) {
        for (const TagSequence& seq : sequences) {
            auto it = docs->find(seq.doc_id);
            if (it == docs->end()) {
                throw Error(ErrorKind::UnknownDocument, "unknown document '" + seq.doc_id + "'");
            }
            const DocumentText& doc = it->second;
            for (const Token& t : seq.tokens) {
                if (t.end > doc.length) {
                    throw Error(ErrorKind::OffsetOutOfRange,
                                "token [" + std::to_string(t.start) + ", " +
                                    std::to_string(t.end) + ") outside document '" + seq.doc_id +
                                    "' of length " + std::to_string(doc.length));
                }
                std::string slice = uni::scalar_slice(doc.text, t.start, t.end);
                if (slice != t.surface) {
                    throw Error(ErrorKind::TokenizationMismatch,
                                "token [" + std::to_string(t.start) + ", " +
                                    std::to_string(t.end) + ") in document '" + seq.doc_id +
                                    "' reads '" + slice + "' in the text but '" + t.surface +
                                    "' in the file");
                }
            }
        }
    }
    return sequences;
}

}  // namespace clinspan
