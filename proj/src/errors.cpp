#include "vrc/errors.hpp"

namespace vrc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::GeometryError: return "GeometryError";
    case ErrorKind::UnparseableQuestion: return "UnparseableQuestion";
    case ErrorKind::NoCandidates: return "NoCandidates";
    case ErrorKind::EmptyScene: return "EmptyScene";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::MalformedAnswer: return "MalformedAnswer";
    case ErrorKind::BackendContract: return "BackendContract";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::NoValidAnchor: return "NoValidAnchor";
    case ErrorKind::PlacementFailure: return "PlacementFailure";
    case ErrorKind::NoUniqueQuestion: return "NoUniqueQuestion";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::CorpusError: return "CorpusError";
    case ErrorKind::InternalError: return "InternalError";
    }
    return "Error";
}

} // namespace vrc
