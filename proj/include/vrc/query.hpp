#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vrc/errors.hpp"

namespace vrc {

enum class Relation { LeftOf, RightOf, Above, Below };
enum class Comparator { Largest, Smallest, Leftmost, Rightmost, Topmost, Bottommost };
enum class ReasoningType { Direct, Spatial, Comparative };
enum class Role { Reference, Target };
enum class SharedAttribute { Color, Toward };

const char* to_string(Relation r);
const char* to_string(Comparator c);
const char* to_string(ReasoningType t);
const char* to_string(Role r);
const char* to_string(SharedAttribute a);
std::optional<Relation> relation_from_string(std::string_view s);

// Polarity involution: flip(flip(r)) == r.
Relation flip(Relation r);

// Unit direction u(r): left (-1,0), right (1,0), above (0,-1), below (0,1).
struct DirectionVector {
    int ux = 0;
    int uy = 0;
};
DirectionVector direction(Relation r);

// Shape slot of a query record: either a concrete ontology shape token or a
// coarse category name ("letter", "number", "3D object", "2D shape").
struct ShapeSpec {
    bool is_category = false;
    std::string value;

    bool operator==(const ShapeSpec&) const = default;
};

// Position qualifier used when a reference object is itself located relative
// to another described object ("the cone to the left of 'T'"). other_record
// indexes into ParsedQuery::records.
struct Locator {
    Relation rel = Relation::LeftOf;
    bool strict = false;
    std::size_t other_record = 0;

    bool operator==(const Locator&) const = default;
};

// One object mention. Empty attribute slots are wildcards on the query side,
// never statements about the object.
struct QueryRecord {
    std::optional<ShapeSpec> shape;
    std::optional<std::string> color;
    std::optional<std::string> toward;
    Role role = Role::Target;
    // Cross-object constraint flag: the object must share this attribute with
    // the resolved reference; applied by the Policymaker, not the Integrator.
    std::optional<SharedAttribute> share_with_reference;
    std::optional<Locator> locator;

    bool populated() const {
        return shape || color || toward || share_with_reference || locator;
    }
    bool operator==(const QueryRecord&) const = default;
};

struct ParsedQuery {
    std::vector<QueryRecord> records;   // references first, then targets
    std::optional<Relation> relation;   // present iff reasoning_type == Spatial
    bool relation_strict = false;       // "directly below" style phrasing
    std::optional<Comparator> comparator;
    ReasoningType reasoning_type = ReasoningType::Direct;
    std::string raw_text;

    std::optional<std::size_t> reference_index() const;
    std::optional<std::size_t> target_index() const;

    bool operator==(const ParsedQuery& other) const {
        return records == other.records && relation == other.relation &&
               relation_strict == other.relation_strict && comparator == other.comparator &&
               reasoning_type == other.reasoning_type;
    }
};

// Checks the structural invariants (relation <=> Spatial, comparator <=>
// Comparative, exactly one reference record on Spatial queries, every record
// populated). Throws InternalError on violation.
void validate(const ParsedQuery& query);

// Serializes the record list in the trace wire shape:
// [{"ObjectData": {"shape": "...", "color": "", "orientation": ""}}, ...]
// with empty strings for wildcards. Constraint flags and locators add
// "constraint" / "locator" keys only when present.
std::string serialize_query_records(const ParsedQuery& query);

} // namespace vrc
