#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hexe {

enum class ErrorCode {
    InvalidArgument,
    UnsupportedSize,
    ParseError,
    InvalidPuzzle,
    // WAV container
    NotRiff,
    TruncatedChunk,
    MissingFmt,
    MissingData,
    UnsupportedEncoding,
    // cipher
    EmptyKeystream,
    // pinning service
    AuthFailed,
    ServiceUnavailable,
    PayloadTooLarge,
    NotFound,
    IntegrityMismatch,
    // metrics
    LengthMismatch,
    SilentReference,
    TooShort,
    SingularFrame,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hexe
