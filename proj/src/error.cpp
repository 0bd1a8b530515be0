#include "clinspan/error.hpp"

namespace clinspan {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Io: return "Io";
        case ErrorKind::InvalidUtf8: return "InvalidUtf8";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::BadOffset: return "BadOffset";
        case ErrorKind::EmptyField: return "EmptyField";
        case ErrorKind::BadDocumentId: return "BadDocumentId";
        case ErrorKind::UnknownDocument: return "UnknownDocument";
        case ErrorKind::OffsetOutOfRange: return "OffsetOutOfRange";
        case ErrorKind::SnippetMismatch: return "SnippetMismatch";
        case ErrorKind::DuplicateAnnId: return "DuplicateAnnId";
        case ErrorKind::DuplicateDocument: return "DuplicateDocument";
        case ErrorKind::InvalidToken: return "InvalidToken";
        case ErrorKind::BadTag: return "BadTag";
        case ErrorKind::InvalidSequence: return "InvalidSequence";
        case ErrorKind::OverlappingSpans: return "OverlappingSpans";
        case ErrorKind::MisalignedBoundary: return "MisalignedBoundary";
        case ErrorKind::TokenSpanMismatch: return "TokenSpanMismatch";
        case ErrorKind::TokenizationMismatch: return "TokenizationMismatch";
        case ErrorKind::EmptyEnsemble: return "EmptyEnsemble";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DegenerateSplit: return "DegenerateSplit";
        case ErrorKind::EmptyTraining: return "EmptyTraining";
    }
    return "Unknown";
}

std::string Error::format(ErrorKind kind, const std::string& message, std::size_t line) {
    std::string out = error_kind_name(kind);
    if (line > 0) {
        out += " at line ";
        out += std::to_string(line);
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace clinspan
