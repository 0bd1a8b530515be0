#include "clinspan/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "clinspan/unicode.hpp"

namespace clinspan {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    // CRLF input: drop one trailing carriage return per line.
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

std::size_t parse_offset(std::string_view field, const char* name, std::size_t line_no) {
    std::size_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value, 10);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw Error(ErrorKind::BadOffset,
                    std::string(name) + " is not a base-10 integer: '" + std::string(field) + "'",
                    line_no);
    }
    return value;
}

}  // namespace

DocumentText make_document(std::string doc_id, std::string utf8_text) {
    if (doc_id.empty()) {
        throw Error(ErrorKind::BadDocumentId, "document id is empty");
    }
    if (doc_id.find('\t') != std::string::npos || doc_id.find('\n') != std::string::npos ||
        doc_id.find('\r') != std::string::npos) {
        throw Error(ErrorKind::BadDocumentId,
                    "document id contains tab or newline: '" + doc_id + "'");
    }
    std::size_t length = uni::scalar_length(utf8_text);
    return DocumentText{std::move(doc_id), std::move(utf8_text), length};
}

std::size_t AnnotatedCorpus::span_count() const {
    std::size_t n = 0;
    for (const auto& [_, doc_spans] : spans) n += doc_spans.size();
    return n;
}

std::vector<EntitySpan> AnnotatedCorpus::all_spans() const {
    std::vector<EntitySpan> out;
    out.reserve(span_count());
    for (const auto& [_, doc_spans] : spans) {
        out.insert(out.end(), doc_spans.begin(), doc_spans.end());
    }
    return out;
}

std::vector<EntitySpan> parse_annotation_table(std::string_view bytes) {
    // Enforces the UTF-8 precondition up front so arbitrary binary input
    // fails with a structured error.
    uni::scalar_length(bytes);

    std::vector<EntitySpan> spans;
    auto lines = split_lines(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        std::size_t line_no = i + 1;
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (line_no == 1 && !fields.empty() && fields[0] == "filename") continue;
        if (fields.size() < 6) {
            throw Error(ErrorKind::MalformedRow,
                        "expected 6 tab-separated columns, got " + std::to_string(fields.size()),
                        line_no);
        }

        EntitySpan span;
        span.doc_id = std::string(fields[0]);
        span.ann_id = std::string(fields[1]);
        span.label = std::string(fields[2]);
        if (span.doc_id.empty() || span.ann_id.empty() || span.label.empty()) {
            throw Error(ErrorKind::EmptyField, "filename, ann_id and label must be non-empty",
                        line_no);
        }
        span.start = parse_offset(fields[3], "start_span", line_no);
        span.end = parse_offset(fields[4], "end_span", line_no);
        if (span.start >= span.end) {
            throw Error(ErrorKind::BadOffset,
                        "start_span " + std::to_string(span.start) + " >= end_span " +
                            std::to_string(span.end),
                        line_no);
        }
        // The text column is last; tabs inside the snippet are kept.
        std::string snippet(fields[5]);
        for (std::size_t f = 6; f < fields.size(); ++f) {
            snippet += '\t';
            snippet += fields[f];
        }
        span.snippet = std::move(snippet);
        spans.push_back(std::move(span));
    }
    return spans;
}

BindResult bind_corpus(std::vector<DocumentText> docs, const std::vector<EntitySpan>& spans,
                       Strictness strictness) {
    BindResult result;
    for (auto& doc : docs) {
        DocumentText validated = make_document(std::move(doc.doc_id), std::move(doc.text));
        auto [it, inserted] = result.corpus.documents.emplace(validated.doc_id, std::move(validated));
        if (!inserted) {
            throw Error(ErrorKind::DuplicateDocument, "duplicate document '" + it->first + "'");
        }
        result.corpus.spans.emplace(it->first, std::vector<EntitySpan>{});
    }

    const bool strict = strictness == Strictness::Strict;
    auto reject = [&](ErrorKind kind, const EntitySpan& span, const std::string& message) {
        if (strict) throw Error(kind, message);
        result.diagnostics.push_back({kind, span.doc_id, message, 0});
    };

    std::map<std::string, std::vector<std::string>> seen_ids;
    for (const EntitySpan& span : spans) {
        auto doc_it = result.corpus.documents.find(span.doc_id);
        if (doc_it == result.corpus.documents.end()) {
            reject(ErrorKind::UnknownDocument, span,
                   "span " + span.ann_id + " references unknown document '" + span.doc_id + "'");
            continue;
        }
        const DocumentText& doc = doc_it->second;
        if (span.start >= span.end || span.end > doc.length) {
            reject(ErrorKind::OffsetOutOfRange, span,
                   "span " + span.ann_id + " [" + std::to_string(span.start) + ", " +
                       std::to_string(span.end) + ") outside document '" + span.doc_id +
                       "' of length " + std::to_string(doc.length));
            continue;
        }
        std::string slice = uni::scalar_slice(doc.text, span.start, span.end);
        if (slice != span.snippet) {
            reject(ErrorKind::SnippetMismatch, span,
                   "span " + span.ann_id + " snippet '" + span.snippet +
                       "' does not match text slice '" + slice + "'");
            continue;
        }
        auto& ids = seen_ids[span.doc_id];
        if (std::find(ids.begin(), ids.end(), span.ann_id) != ids.end()) {
            reject(ErrorKind::DuplicateAnnId, span,
                   "duplicate annotation id '" + span.ann_id + "' in document '" + span.doc_id +
                       "'");
            continue;
        }
        ids.push_back(span.ann_id);
        result.corpus.spans[span.doc_id].push_back(span);
    }

    for (auto& [_, doc_spans] : result.corpus.spans) {
        std::sort(doc_spans.begin(), doc_spans.end(), span_order);
    }
    return result;
}

namespace {

std::string render_table(std::vector<EntitySpan> rows) {
    std::sort(rows.begin(), rows.end(), [](const EntitySpan& a, const EntitySpan& b) {
        return std::tie(a.doc_id, a.start, a.end, a.ann_id) <
               std::tie(b.doc_id, b.start, b.end, b.ann_id);
    });
    std::string out = "filename\tann_id\tlabel\tstart_span\tend_span\ttext\n";
    for (const EntitySpan& s : rows) {
        out += s.doc_id;
        out += '\t';
        out += s.ann_id;
        out += '\t';
        out += s.label;
        out += '\t';
        out += std::to_string(s.start);
        out += '\t';
        out += std::to_string(s.end);
        out += '\t';
        out += s.snippet;
        out += '\n';
    }
    return out;
}

}  // namespace

std::string write_annotation_table(const AnnotatedCorpus& corpus) {
    return render_table(corpus.all_spans());
}

std::string write_annotation_table(const std::vector<EntitySpan>& spans) {
    return render_table(spans);
}

std::vector<DocumentText> read_text_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorKind::Io, "not a directory: " + dir.string());
    }
    std::vector<DocumentText> docs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        docs.push_back(make_document(entry.path().stem().string(), read_file(entry.path())));
    }
    std::sort(docs.begin(), docs.end(),
              [](const DocumentText& a, const DocumentText& b) { return a.doc_id < b.doc_id; });
    return docs;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorKind::Io, "read failure on " + path.string());
    }
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw Error(ErrorKind::Io, "write failure on " + path.string());
    }
}

}  // namespace clinspan
