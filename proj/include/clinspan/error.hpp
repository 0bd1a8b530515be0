#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace clinspan {

enum class ErrorKind {
    Io,
    InvalidUtf8,
    // annotation table parsing
    MalformedRow,
    BadOffset,
    EmptyField,
    // corpus binding
    BadDocumentId,
    UnknownDocument,
    OffsetOutOfRange,
    SnippetMismatch,
    DuplicateAnnId,
    DuplicateDocument,
    // tokens and tags
    InvalidToken,
    BadTag,
    InvalidSequence,
    OverlappingSpans,
    MisalignedBoundary,
    TokenSpanMismatch,
    // ensembles
    TokenizationMismatch,
    EmptyEnsemble,
    // pipeline
    DegenerateSplit,
    EmptyTraining,
    // parameter domain violations (weights, thresholds, fractions)
    InvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

// All failures surface as this exception. `line()` is 1-based and 0 when
// the error is not tied to an input line.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
        : std::runtime_error(format(kind, message, line)), kind_(kind), line_(line) {}

    ErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    static std::string format(ErrorKind kind, const std::string& message, std::size_t line);

    ErrorKind kind_;
    std::size_t line_;
};

// Non-fatal finding reported by lenient/clip modes.
struct Diagnostic {
    ErrorKind kind;
    std::string doc_id;
    std::string message;
    std::size_t line = 0;
};

}  // namespace clinspan
