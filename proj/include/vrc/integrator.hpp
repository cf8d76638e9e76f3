#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vrc/detection.hpp"
#include "vrc/query.hpp"

namespace vrc {

inline constexpr const char* kMaybeResultTag = "!maybe result";
inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

// One retained detection plus its match/link bookkeeping. bbox is always
// present for pipeline-built candidates; wire-parsed augmented records may
// omit it (the serialized form carries attributes and center only).
struct Candidate {
    std::vector<AttributeTag> labels;
    std::optional<BBox> bbox;
    Point center;
    std::size_t matched_record = kNoIndex;   // index into ParsedQuery::records
    std::set<std::string> tags;              // subset of {"!maybe result"}
    std::optional<std::size_t> link;         // reference candidate index (RPIE)
    std::size_t source_detection = kNoIndex; // traversal-order provenance
    double confidence = 1.0;

    bool tagged_maybe_result() const { return tags.count(kMaybeResultTag) > 0; }
};

struct CandidateSet {
    std::vector<Candidate> candidates; // detection traversal order
};

// True when every populated field of the record matches the detection's
// attribute labels. Empty fields are wildcards on the query side; a populated
// constraint fails when the detection does not carry that attribute at all.
// Coarse categories expand through the ontology type maps. Constraint flags
// and locators are ignored here (the Policymaker applies them).
bool record_matches(const QueryRecord& record, const Detection& detection,
                    const Ontology& ontology);

// Filters a merged detection set down to the candidates matching at least one
// query record; each candidate is stamped with the first matching record.
// Throws NoCandidates when a Reference record matches nothing or when nothing
// matches at all; an empty match for a Target record alone is not an error.
CandidateSet match(const DetectionSet& merged, const ParsedQuery& query,
                   const Ontology& ontology);

// Candidate wire form: records with "Object" as the attribute array (tags
// appended), "location", and optionally "bbox".
std::string serialize_candidates(const CandidateSet& set, bool include_bbox,
                                 int indent = -1);
CandidateSet parse_candidates(std::string_view text, const Ontology& ontology);

} // namespace vrc
