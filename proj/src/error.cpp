#include "ocy/error.hpp"

namespace ocy {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::UnsupportedBitDepth: return "UnsupportedBitDepth";
    case ErrorCode::SequenceTooShort: return "SequenceTooShort";
    case ErrorCode::EmptyStream: return "EmptyStream";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ManifestMalformed: return "ManifestMalformed";
    }
    return "Unknown";
}

} // namespace ocy
