#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clinspan/corpus.hpp"
#include "clinspan/unicode.hpp"

using namespace clinspan;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::Io;
}

std::size_t line_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.line();
    }
    FAIL("expected an Error");
    return 0;
}

}  // namespace

TEST_CASE("parse maps columns to span fields") {
    auto spans = parse_annotation_table("doc01\tT1\tSINTOMA\t13\t27\tdolor torácico\n");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].doc_id == "doc01");
    CHECK(spans[0].ann_id == "T1");
    CHECK(spans[0].label == "SINTOMA");
    CHECK(spans[0].start == 13);
    CHECK(spans[0].end == 27);
    CHECK(spans[0].snippet == "dolor torácico");
}

TEST_CASE("parse skips the header row and keeps row order") {
    std::string table =
        "filename\tann_id\tlabel\tstart_span\tend_span\ttext\n"
        "b\tT2\tSINTOMA\t5\t8\ttos\n"
        "a\tT1\tSINTOMA\t0\t6\tfiebre\n";
    auto spans = parse_annotation_table(table);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].doc_id == "b");
    CHECK(spans[1].doc_id == "a");
}

TEST_CASE("parse of a header-only table yields an empty list") {
    CHECK(parse_annotation_table("filename\tann_id\tlabel\tstart_span\tend_span\ttext\n").empty());
    CHECK(parse_annotation_table("").empty());
}

TEST_CASE("parse errors carry kind and line number") {
    CHECK(kind_of([] { (void)parse_annotation_table("doc\tT1\tSINTOMA\t13\t27x\tz zzzzzzzzzzzz\n"); }) ==
          ErrorKind::BadOffset);
    CHECK(line_of([] {
              (void)parse_annotation_table(
                  "filename\tann_id\tlabel\tstart_span\tend_span\ttext\n"
                  "doc\tT1\tSINTOMA\t13\t27x\tz\n");
          }) == 2);
    CHECK(kind_of([] { (void)parse_annotation_table("doc\tT1\tSINTOMA\t13\n"); }) ==
          ErrorKind::MalformedRow);
    CHECK(kind_of([] { (void)parse_annotation_table("doc\tT1\tSINTOMA\t27\t13\tz\n"); }) ==
          ErrorKind::BadOffset);
    CHECK(kind_of([] { (void)parse_annotation_table("doc\t\tSINTOMA\t13\t27\tz\n"); }) ==
          ErrorKind::EmptyField);
    CHECK(kind_of([] { (void)parse_annotation_table("doc\tT1\t\t13\t27\tz\n"); }) ==
          ErrorKind::EmptyField);
}

TEST_CASE("snippet column may contain tabs") {
    auto spans = parse_annotation_table("doc\tT1\tSINTOMA\t0\t5\ta\tb\tc\n");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].snippet == "a\tb\tc");
}

TEST_CASE("bind accepts exact snippets and establishes sorted order") {
    std::vector<DocumentText> docs = {make_document("d1", "dolor de cabeza")};
    std::vector<EntitySpan> spans = {
        {"d1", "T2", "SINTOMA", 9, 15, "cabeza"},
        {"d1", "T1", "SINTOMA", 0, 5, "dolor"},
    };
    BindResult bound = bind_corpus(docs, spans, Strictness::Strict);
    CHECK(bound.diagnostics.empty());
    REQUIRE(bound.corpus.spans.at("d1").size() == 2);
    CHECK(bound.corpus.spans.at("d1")[0].ann_id == "T1");
    CHECK(bound.corpus.spans.at("d1")[1].ann_id == "T2");
}

TEST_CASE("bind validates offsets, snippets, documents and ann ids") {
    std::vector<DocumentText> docs = {make_document("d1", "dolor")};
    auto bind_one = [&](EntitySpan span) {
        return [docs, span] { (void)bind_corpus(docs, {span}, Strictness::Strict); };
    };
    CHECK(kind_of(bind_one({"d1", "T1", "SINTOMA", 0, 9, "dolor"})) == ErrorKind::OffsetOutOfRange);
    CHECK(kind_of(bind_one({"d1", "T1", "SINTOMA", 3, 3, ""})) == ErrorKind::OffsetOutOfRange);
    CHECK(kind_of(bind_one({"d1", "T1", "SINTOMA", 0, 5, "fiebre"})) == ErrorKind::SnippetMismatch);
    CHECK(kind_of(bind_one({"dX", "T1", "SINTOMA", 0, 5, "dolor"})) == ErrorKind::UnknownDocument);

    std::vector<EntitySpan> dup = {
        {"d1", "T1", "SINTOMA", 0, 5, "dolor"},
        {"d1", "T1", "SINTOMA", 0, 5, "dolor"},
    };
    CHECK(kind_of([&] { (void)bind_corpus(docs, dup, Strictness::Strict); }) ==
          ErrorKind::DuplicateAnnId);
}

TEST_CASE("lenient bind drops bad spans and reports them") {
    std::vector<DocumentText> docs = {make_document("d1", "dolor de cabeza")};
    std::vector<EntitySpan> spans = {
        {"d1", "T1", "SINTOMA", 0, 5, "fiebre"},  // snippet mismatch
        {"d1", "T2", "SINTOMA", 0, 5, "dolor"},
    };
    BindResult bound = bind_corpus(docs, spans, Strictness::Lenient);
    CHECK(bound.corpus.spans.at("d1").size() == 1);
    REQUIRE(bound.diagnostics.size() == 1);
    CHECK(bound.diagnostics[0].kind == ErrorKind::SnippetMismatch);
    CHECK(bound.diagnostics[0].doc_id == "d1");
}

TEST_CASE("overlapping spans are permitted by bind") {
    std::vector<DocumentText> docs = {make_document("d1", "dolor torácico agudo")};
    std::vector<EntitySpan> spans = {
        {"d1", "T1", "SINTOMA", 0, 14, "dolor torácico"},
        {"d1", "T2", "SINTOMA", 6, 20, "torácico agudo"},
    };
    BindResult bound = bind_corpus(docs, spans, Strictness::Strict);
    CHECK(bound.corpus.spans.at("d1").size() == 2);
}

TEST_CASE("offsets count code points so accented snippets reconstruct exactly") {
    std::string text = "Paciente con dolor torácico – fiebre añadida";
    std::vector<DocumentText> docs = {make_document("d1", text)};
    std::vector<EntitySpan> spans = {
        {"d1", "T1", "SINTOMA", 13, 27, "dolor torácico"},
        {"d1", "T2", "SINTOMA", 30, 36, "fiebre"},
    };
    BindResult bound = bind_corpus(docs, spans, Strictness::Strict);
    CHECK(bound.corpus.span_count() == 2);
}

TEST_CASE("write emits header plus one sorted row per span") {
    std::vector<DocumentText> docs = {make_document("a", "tos seca"),
                                      make_document("b", "fiebre")};
    std::vector<EntitySpan> spans = {
        {"b", "T1", "SINTOMA", 0, 6, "fiebre"},
        {"a", "T2", "SINTOMA", 4, 8, "seca"},
        {"a", "T1", "SINTOMA", 0, 3, "tos"},
    };
    std::string table = write_annotation_table(bind_corpus(docs, spans, Strictness::Strict).corpus);
    CHECK(table ==
          "filename\tann_id\tlabel\tstart_span\tend_span\ttext\n"
          "a\tT1\tSINTOMA\t0\t3\ttos\n"
          "a\tT2\tSINTOMA\t4\t8\tseca\n"
          "b\tT1\tSINTOMA\t0\t6\tfiebre\n");
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);
}

TEST_CASE("empty corpus writes the header line only") {
    CHECK(write_annotation_table(AnnotatedCorpus{}) ==
          "filename\tann_id\tlabel\tstart_span\tend_span\ttext\n");
}

TEST_CASE("document ids reject tabs and newlines") {
    CHECK_THROWS_AS((void)make_document("a\tb", "x"), Error);
    CHECK_THROWS_AS((void)make_document("a\nb", "x"), Error);
    CHECK_THROWS_AS((void)make_document("", "x"), Error);
}

namespace {

// Random corpus with accented vocabulary and aligned snippets.
struct RandomCorpus {
    std::vector<DocumentText> docs;
    std::vector<EntitySpan> spans;
};

RandomCorpus random_corpus(std::mt19937_64& rng) {
    static const std::vector<std::string> words = {
        "dolor", "torácico", "fiebre", "tos", "cefalea", "náusea", "mareo", "–", "38.5", "años"};
    RandomCorpus out;
    std::size_t n_docs = 1 + rng() % 4;
    for (std::size_t d = 0; d < n_docs; ++d) {
        std::string doc_id = "doc" + std::to_string(d);
        std::u32string text;
        std::vector<std::pair<std::size_t, std::size_t>> word_bounds;
        std::size_t n_words = 1 + rng() % 12;
        for (std::size_t w = 0; w < n_words; ++w) {
            if (w > 0) text.push_back(U' ');
            std::u32string word =
                clinspan::uni::decode_utf8(words[rng() % words.size()]);
            word_bounds.emplace_back(text.size(), text.size() + word.size());
            text += word;
        }
        std::string utf8 = clinspan::uni::encode_utf8(text);
        out.docs.push_back(make_document(doc_id, utf8));
        std::size_t n_spans = rng() % 3;
        for (std::size_t s = 0; s < n_spans; ++s) {
            auto [start, end] = word_bounds[rng() % word_bounds.size()];
            EntitySpan span;
            span.doc_id = doc_id;
            span.ann_id = "T" + std::to_string(s + 1);
            span.label = "SINTOMA";
            span.start = start;
            span.end = end;
            span.snippet = clinspan::uni::scalar_slice(utf8, start, end);
            out.spans.push_back(span);
        }
    }
    return out;
}

std::multiset<std::string> span_fingerprints(const std::vector<EntitySpan>& spans) {
    std::multiset<std::string> out;
    for (const EntitySpan& s : spans) {
        out.insert(s.doc_id + "|" + s.ann_id + "|" + s.label + "|" + std::to_string(s.start) +
                   "|" + std::to_string(s.end) + "|" + s.snippet);
    }
    return out;
}

}  // namespace

TEST_CASE("property: write then parse returns an equal span set") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        RandomCorpus rc = random_corpus(rng);
        BindResult bound = bind_corpus(rc.docs, rc.spans, Strictness::Strict);
        std::string table = write_annotation_table(bound.corpus);

        auto reparsed = parse_annotation_table(table);
        BindResult rebound = bind_corpus(rc.docs, reparsed, Strictness::Strict);
        CHECK(rebound.diagnostics.empty());
        CHECK(span_fingerprints(rebound.corpus.all_spans()) ==
              span_fingerprints(bound.corpus.all_spans()));
    }
}

TEST_CASE("parser survives mutated tables with structured errors only") {
    std::string base =
        "filename\tann_id\tlabel\tstart_span\tend_span\ttext\n"
        "doc01\tT1\tSINTOMA\t13\t27\tdolor torácico\n"
        "doc02\tT1\tSINTOMA\t0\t6\tfiebre\n";
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string mutated = base;
        std::size_t edits = 1 + rng() % 4;
        for (std::size_t e = 0; e < edits; ++e) {
            std::size_t pos = rng() % mutated.size();
            mutated[pos] = static_cast<char>(rng() % 256);
        }
        try {
            (void)parse_annotation_table(mutated);
        } catch (const Error&) {
            // structured failure is acceptable
        }
    }
}
