#pragma once

#include <string>
#include <string_view>

#include "vrc/integrator.hpp"
#include "vrc/ontology.hpp"
#include "vrc/query.hpp"

namespace vrc {

// A resolved challenge answer: exactly one finite pixel coordinate.
struct Answer {
    Point point;
};

// Strict single-coordinate extraction: tolerant of surrounding prose, strict
// on arity. Throws MalformedAnswer for zero or multiple pairs or non-numeric
// components.
Answer parse_backend_answer(std::string_view text);

// "(x, y)" with one decimal, matching the serialized location precision.
std::string format_answer(const Point& p);

// Explicit decision rules for the three reasoning modes. All three are pure
// functions of (query, candidates): deterministic and image-free.
//
// Direct: exact match over the populated fields; cross-object constraints
// compare the flagged attribute against the resolved reference's value.
// Errors: Ambiguous (>= 2 matches), NoMatch (0).
Answer resolve_direct(const ParsedQuery& query, const CandidateSet& candidates,
                      const Ontology& ontology);

// Spatial: center of the unique "!maybe result" target; with several, prefer
// the one whose reference matched the most populated fields, then the first
// in traversal order; with none, enforce the relation geometrically over the
// candidate boxes and take the satisfying candidate nearest the reference
// along the relation axis. Errors: NoMatch.
Answer resolve_spatial(const ParsedQuery& query, const CandidateSet& candidates,
                       const Ontology& ontology);

// Comparative: Largest/Smallest by box area, Leftmost/Rightmost by center x,
// Topmost/Bottommost by center y; ties break to the first in traversal order.
// Errors: NoMatch on an empty candidate set.
Answer resolve_comparative(const ParsedQuery& query, const CandidateSet& candidates,
                           const Ontology& ontology);

// Pairwise relation test over boxes: left_of requires x_max(t) < x_min(r),
// and analogously for the other predicates. strict additionally requires the
// reference center to sit within the target's span on the orthogonal axis
// ("directly below" style phrasing).
bool relation_satisfied(Relation rel, bool strict, const BBox& target, const BBox& reference);

} // namespace vrc
