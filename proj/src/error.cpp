#include "hexe/error.hpp"

namespace hexe {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnsupportedSize: return "UnsupportedSize";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidPuzzle: return "InvalidPuzzle";
        case ErrorCode::NotRiff: return "NotRiff";
        case ErrorCode::TruncatedChunk: return "TruncatedChunk";
        case ErrorCode::MissingFmt: return "MissingFmt";
        case ErrorCode::MissingData: return "MissingData";
        case ErrorCode::UnsupportedEncoding: return "UnsupportedEncoding";
        case ErrorCode::EmptyKeystream: return "EmptyKeystream";
        case ErrorCode::AuthFailed: return "AuthFailed";
        case ErrorCode::ServiceUnavailable: return "ServiceUnavailable";
        case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::IntegrityMismatch: return "IntegrityMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::SilentReference: return "SilentReference";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::SingularFrame: return "SingularFrame";
    }
    return "Unknown";
}

}  // namespace hexe
