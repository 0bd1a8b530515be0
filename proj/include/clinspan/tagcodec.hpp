#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clinspan/corpus.hpp"
#include "clinspan/tokenizer.hpp"

namespace clinspan {

inline const std::string kOutsideTag = "O";

// IOB2 tag strings: "O", "B-<label>", "I-<label>".
std::string begin_tag(std::string_view label);
std::string inside_tag(std::string_view label);
bool is_outside(std::string_view tag);

// Throws Error{BadTag} unless tag is O, B-<label> or I-<label> with a
// non-empty label.
void check_tag(std::string_view tag, std::size_t line = 0);

// Label of a B-/I- tag; empty for O.
std::string_view tag_label(std::string_view tag);

// Index of the first IOB2 violation (an I- tag with no matching B-/I-
// predecessor), or nullopt when the sequence is valid.
std::optional<std::size_t> first_iob_violation(const std::vector<std::string>& tags);
bool iob_valid(const std::vector<std::string>& tags);

struct TagSequence {
    std::string doc_id;
    std::vector<Token> tokens;
    std::vector<std::string> tags;  // same length as tokens

    friend bool operator==(const TagSequence&, const TagSequence&) = default;
};

enum class OverlapPolicy { Strict, Clip };

struct EncodeResult {
    TagSequence sequence;
    std::vector<Diagnostic> diagnostics;
};

// Projects character spans onto per-token IOB2 tags. A token belongs to a
// span when their half-open intervals intersect. Strict mode rejects
// overlapping spans and span boundaries that fall inside a token; clip
// mode expands such boundaries outward to token edges (and skips spans
// whose tokens were all consumed by an earlier span), emitting one
// diagnostic per repair. A span intersecting no token at all is an error
// under both policies.
EncodeResult encode_iob(const std::string& doc_id, const std::vector<Token>& tokens,
                        const std::vector<EntitySpan>& spans, OverlapPolicy policy);

// Inverse direction: each maximal B-L (I-L)* run becomes a span whose
// snippet is sliced from the document text. ann_ids are P1, P2, ... in
// document order. Throws Error{InvalidSequence} on IOB2 violations.
std::vector<EntitySpan> decode_iob(const TagSequence& seq, std::string_view text);

enum class RepairMode { ToB, Drop };

struct RepairResult {
    std::vector<std::string> tags;
    std::size_t changed = 0;
};

// Rewrites orphan I- tags: ToB turns them into B- (IOB1-style input
// becomes IOB2), Drop turns them into O. Output always passes iob_valid;
// valid input comes back unchanged.
RepairResult repair_tags(const std::vector<std::string>& tags, RepairMode mode);

// Tag-sequence file: per document a `#doc <doc_id>` line, then one
// `start  end  surface  tag` TSV row per token, documents separated by a
// blank line.
std::string write_tag_table(const std::vector<TagSequence>& sequences);

// Parses the tag-sequence file. When `docs` is given, token offsets and
// surfaces are validated against the document texts.
std::vector<TagSequence> read_tag_table(std::string_view bytes, const DocumentMap* docs);

}  // namespace clinspan
