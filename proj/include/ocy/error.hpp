#ifndef OCY_ERROR_HPP
#define OCY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ocy {

enum class ErrorCode {
    MalformedFile,
    UnsupportedBitDepth,
    SequenceTooShort,
    EmptyStream,
    InvalidDistribution,
    KindMismatch,
    UnsupportedKind,
    ZeroMean,
    MassMismatch,
    SizeMismatch,
    InvalidArgument,
    Io,
    ManifestMalformed,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. Every failure raised by the
/// library is one of these.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ocy

#endif
