#pragma once

#include <stdexcept>
#include <string>

namespace vrc {

// Every contract failure in the pipeline carries one of these kinds so the
// harness can record stage errors without string matching.
enum class ErrorKind {
    UnknownToken,
    UnknownCategory,
    MalformedRecord,
    GeometryError,
    UnparseableQuestion,
    NoCandidates,
    EmptyScene,
    Ambiguous,
    NoMatch,
    MalformedAnswer,
    BackendContract,
    BackendUnavailable,
    NoValidAnchor,
    PlacementFailure,
    NoUniqueQuestion,
    ConfigError,
    CorpusError,
    InternalError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace vrc
