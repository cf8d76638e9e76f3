#include "vrc/integrator.hpp"

#include <algorithm>

#include "json.hpp"

namespace vrc {

using nlohmann::json;

namespace {

bool shape_matches(const ShapeSpec& spec, const Detection& det, const Ontology& ontology) {
    auto shape = det.shape();
    if (!shape) return false;
    if (!spec.is_category) return *shape == spec.value;
    const auto& members = ontology.expand_category(spec.value);
    return std::find(members.begin(), members.end(), *shape) != members.end();
}

} // namespace

bool record_matches(const QueryRecord& record, const Detection& detection,
                    const Ontology& ontology) {
    if (record.shape && !shape_matches(*record.shape, detection, ontology)) return false;
    if (record.color && detection.color() != record.color) return false;
    if (record.toward && detection.toward() != record.toward) return false;
    return true;
}

CandidateSet match(const DetectionSet& merged, const ParsedQuery& query,
                   const Ontology& ontology) {
    CandidateSet out;
    for (std::size_t d = 0; d < merged.detections.size(); ++d) {
        const Detection& det = merged.detections[d];
        for (std::size_t r = 0; r < query.records.size(); ++r) {
            if (!record_matches(query.records[r], det, ontology)) continue;
            Candidate cand;
            cand.labels = det.labels;
            cand.bbox = det.bbox;
            cand.center = det.center;
            cand.matched_record = r;
            cand.source_detection = d;
            cand.confidence = det.confidence;
            out.candidates.push_back(std::move(cand));
            break; // first matching record stamps the detection
        }
    }

    for (std::size_t r = 0; r < query.records.size(); ++r) {
        if (query.records[r].role != Role::Reference) continue;
        bool any = std::any_of(merged.detections.begin(), merged.detections.end(),
                               [&](const Detection& det) {
                                   return record_matches(query.records[r], det, ontology);
                               });
        if (!any)
            fail(ErrorKind::NoCandidates,
                 "reference record " + std::to_string(r) + " matches no detection");
    }
    if (out.candidates.empty())
        fail(ErrorKind::NoCandidates, "no detection matches any query record");
    return out;
}

std::string serialize_candidates(const CandidateSet& set, bool include_bbox, int indent) {
    json arr = json::array();
    for (const auto& cand : set.candidates) {
        json rec = json::object();
        json labels = json::array();
        for (const auto& l : cand.labels) labels.push_back(l.name);
        for (const auto& tag : cand.tags) labels.push_back(tag);
        rec["Object"] = labels;
        rec["location"] = json::array({round1(cand.center.x), round1(cand.center.y)});
        if (include_bbox && cand.bbox)
            rec["bbox"] = json::array({cand.bbox->x1, cand.bbox->y1, cand.bbox->x2, cand.bbox->y2});
        arr.push_back(rec);
    }
    return arr.dump(indent);
}

CandidateSet parse_candidates(std::string_view text, const Ontology& ontology) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedRecord, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) fail(ErrorKind::MalformedRecord, "expected an array of candidates");

    CandidateSet set;
    for (const auto& rec : doc) {
        if (!rec.is_object() || !rec.contains("Object") || !rec.contains("location"))
            fail(ErrorKind::MalformedRecord, "candidate record must carry Object and location");
        Candidate cand;
        const json& obj = rec.at("Object");
        if (!obj.is_array() || obj.empty())
            fail(ErrorKind::MalformedRecord, "candidate Object must be a non-empty array");
        for (const auto& item : obj) {
            if (!item.is_string())
                fail(ErrorKind::MalformedRecord, "candidate Object entry is not a string");
            std::string name = item.get<std::string>();
            if (name == kMaybeResultTag) {
                cand.tags.insert(name);
                continue;
            }
            cand.labels.push_back(ontology.parse_attribute_token(name));
        }
        const json& loc = rec.at("location");
        if (!loc.is_array() || loc.size() != 2)
            fail(ErrorKind::MalformedRecord, "candidate location must be a 2-array");
        cand.center = Point{loc[0].get<double>(), loc[1].get<double>()};
        if (!cand.center.finite()) fail(ErrorKind::GeometryError, "candidate location not finite");
        if (rec.contains("bbox")) {
            const json& box = rec.at("bbox");
            if (!box.is_array() || box.size() != 4)
                fail(ErrorKind::MalformedRecord, "candidate bbox must be a 4-array");
            BBox b{box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                   box[3].get<double>()};
            if (!b.valid()) fail(ErrorKind::GeometryError, "candidate bbox invalid");
            cand.bbox = b;
        }
        set.candidates.push_back(std::move(cand));
    }
    return set;
}

} // namespace vrc
