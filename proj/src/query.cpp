#include "vrc/query.hpp"

#include "json.hpp"

namespace vrc {

using nlohmann::json;

const char* to_string(Relation r) {
    switch (r) {
    case Relation::LeftOf: return "left_of";
    case Relation::RightOf: return "right_of";
    case Relation::Above: return "above";
    case Relation::Below: return "below";
    }
    return "?";
}

const char* to_string(Comparator c) {
    switch (c) {
    case Comparator::Largest: return "largest";
    case Comparator::Smallest: return "smallest";
    case Comparator::Leftmost: return "leftmost";
    case Comparator::Rightmost: return "rightmost";
    case Comparator::Topmost: return "topmost";
    case Comparator::Bottommost: return "bottommost";
    }
    return "?";
}

const char* to_string(ReasoningType t) {
    switch (t) {
    case ReasoningType::Direct: return "direct";
    case ReasoningType::Spatial: return "spatial";
    case ReasoningType::Comparative: return "comparative";
    }
    return "?";
}

const char* to_string(Role r) { return r == Role::Reference ? "reference" : "target"; }

const char* to_string(SharedAttribute a) {
    return a == SharedAttribute::Color ? "color" : "direction";
}

std::optional<Relation> relation_from_string(std::string_view s) {
    if (s == "left_of") return Relation::LeftOf;
    if (s == "right_of") return Relation::RightOf;
    if (s == "above") return Relation::Above;
    if (s == "below") return Relation::Below;
    return std::nullopt;
}

Relation flip(Relation r) {
    switch (r) {
    case Relation::LeftOf: return Relation::RightOf;
    case Relation::RightOf: return Relation::LeftOf;
    case Relation::Above: return Relation::Below;
    case Relation::Below: return Relation::Above;
    }
    return r;
}

DirectionVector direction(Relation r) {
    switch (r) {
    case Relation::LeftOf: return {-1, 0};
    case Relation::RightOf: return {1, 0};
    case Relation::Above: return {0, -1};
    case Relation::Below: return {0, 1};
    }
    return {0, 0};
}

std::optional<std::size_t> ParsedQuery::reference_index() const {
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].role == Role::Reference && !records[i].locator) return i;
    // Locator-qualified anchors still count when nothing simpler exists.
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].role == Role::Reference) return i;
    return std::nullopt;
}

std::optional<std::size_t> ParsedQuery::target_index() const {
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].role == Role::Target) return i;
    return std::nullopt;
}

void validate(const ParsedQuery& query) {
    if ((query.reasoning_type == ReasoningType::Spatial) != query.relation.has_value())
        fail(ErrorKind::InternalError, "relation present iff reasoning type is spatial");
    if ((query.reasoning_type == ReasoningType::Comparative) != query.comparator.has_value())
        fail(ErrorKind::InternalError, "comparator present iff reasoning type is comparative");
    if (query.records.empty())
        fail(ErrorKind::InternalError, "query carries no records");
    for (const auto& rec : query.records)
        if (!rec.populated()) fail(ErrorKind::InternalError, "unpopulated query record");
    if (query.reasoning_type == ReasoningType::Spatial) {
        std::size_t refs = 0;
        for (const auto& rec : query.records)
            if (rec.role == Role::Reference) ++refs;
        if (refs != 1)
            fail(ErrorKind::InternalError, "spatial query must carry exactly one reference record");
    }
    for (const auto& rec : query.records)
        if (rec.locator && rec.locator->other_record >= query.records.size())
            fail(ErrorKind::InternalError, "locator points outside the record list");
}

std::string serialize_query_records(const ParsedQuery& query) {
    json arr = json::array();
    for (const auto& rec : query.records) {
        json data = json::object();
        data["shape"] = rec.shape ? rec.shape->value : "";
        data["color"] = rec.color ? *rec.color : "";
        data["orientation"] = rec.toward ? *rec.toward : "";
        if (rec.share_with_reference)
            data["constraint"] = std::string("same ") + to_string(*rec.share_with_reference);
        if (rec.locator) {
            json loc = json::object();
            loc["relation"] = to_string(rec.locator->rel);
            loc["record"] = rec.locator->other_record;
            data["locator"] = loc;
        }
        arr.push_back(json::object({{"ObjectData", data}}));
    }
    return arr.dump();
}

} // namespace vrc
