#pragma once

#include <string>

#include "vrc/integrator.hpp"
#include "vrc/query.hpp"

namespace vrc {

// Task-conditioned prompt. body carries the full text sent to the backend;
// the other fields expose the contract pieces for inspection.
struct Prompt {
    ReasoningType reasoning_mode = ReasoningType::Direct;
    std::string body;
    std::string answer_schema;
    std::string coordinate_convention;
    std::string serialized_candidates;
};

inline constexpr const char* kAnswerSchema =
    "output exactly one coordinate in the form (x,y) in pixels";
inline constexpr const char* kCoordinateConvention =
    "x increases rightward, y increases downward";

// Editable prompt templates keyed by reasoning mode ({question}, {candidates},
// {relation}, {reference}, {attributes}, {comparison} placeholders). Shipped
// under data/prompts/; built-ins are pinned to the files by a test.
class PromptLibrary {
public:
    static const PromptLibrary& standard();
    static PromptLibrary load_dir(const std::string& dir);

    std::string spatial;
    std::string direct;
    std::string comparative;

    const std::string& template_for(ReasoningType mode) const;

    bool operator==(const PromptLibrary&) const = default;
};

// Renders a human-readable description of one query record ("red cone",
// "letter 'T'", "number"). Used in prompts and in generated indirection text.
std::string describe_record(const QueryRecord& record);

// Builds the task-conditioned prompt: original instruction, serialized
// candidates (attribute list + center each), the reasoning-mode statement,
// the answer schema and coordinate convention, and the scene-only restriction.
// Spatial prompts name the relation/reference and carry the "!maybe result"
// guidance. Throws EmptyScene when there is nothing to decide over.
Prompt build_prompt(const ParsedQuery& query, const CandidateSet& candidates,
                    const PromptLibrary& library);

} // namespace vrc
