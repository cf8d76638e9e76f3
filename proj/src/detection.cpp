#include "vrc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace vrc {

using nlohmann::json;

bool Detection::has_label(std::string_view name) const {
    return std::any_of(labels.begin(), labels.end(),
                       [&](const AttributeTag& t) { return t.name == name; });
}

namespace {

std::optional<std::string> first_of_class(const std::vector<AttributeTag>& labels,
                                          AttributeClass cls) {
    for (const auto& l : labels)
        if (l.cls == cls) return l.name;
    return std::nullopt;
}

double number_field(const json& v, const char* what) {
    if (!v.is_number()) fail(ErrorKind::MalformedRecord, std::string(what) + " is not a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail(ErrorKind::GeometryError, std::string(what) + " is not finite");
    return d;
}

Detection parse_record(const json& rec, const Ontology& ontology) {
    if (!rec.is_object()) fail(ErrorKind::MalformedRecord, "detection record is not an object");
    if (!rec.contains("Object") || !rec.contains("location") || !rec.contains("bbox"))
        fail(ErrorKind::MalformedRecord, "detection record must carry Object/location/bbox");

    Detection det;
    const json& obj = rec.at("Object");
    if (obj.is_string()) {
        det.labels.push_back(ontology.parse_attribute_token(obj.get<std::string>()));
    } else if (obj.is_array()) {
        if (obj.empty()) fail(ErrorKind::MalformedRecord, "empty Object list");
        for (const auto& item : obj) {
            if (!item.is_string()) fail(ErrorKind::MalformedRecord, "Object list entry is not a string");
            det.labels.push_back(ontology.parse_attribute_token(item.get<std::string>()));
        }
    } else {
        fail(ErrorKind::MalformedRecord, "Object must be a string or an array of strings");
    }

    const json& loc = rec.at("location");
    if (!loc.is_array() || loc.size() != 2)
        fail(ErrorKind::MalformedRecord, "location must be a 2-array");
    det.center = Point{number_field(loc[0], "location.x"), number_field(loc[1], "location.y")};

    const json& box = rec.at("bbox");
    if (!box.is_array() || box.size() != 4)
        fail(ErrorKind::MalformedRecord, "bbox must be a 4-array");
    det.bbox = BBox{number_field(box[0], "bbox.x1"), number_field(box[1], "bbox.y1"),
                    number_field(box[2], "bbox.x2"), number_field(box[3], "bbox.y2")};
    if (!det.bbox.valid())
        fail(ErrorKind::GeometryError, "bbox corners out of order or not finite");

    Point mid = center_of(det.bbox);
    if (std::fabs(mid.x - det.center.x) > kCenterTolerancePx ||
        std::fabs(mid.y - det.center.y) > kCenterTolerancePx)
        fail(ErrorKind::GeometryError, "location does not sit on the bbox midpoint");

    if (rec.contains("confidence")) {
        det.confidence = number_field(rec.at("confidence"), "confidence");
        if (det.confidence < 0.0 || det.confidence > 1.0)
            fail(ErrorKind::MalformedRecord, "confidence outside [0,1]");
    }
    return det;
}

json record_to_json(const Detection& det) {
    json rec = json::object();
    if (det.labels.size() == 1) {
        rec["Object"] = det.labels.front().name;
    } else {
        json arr = json::array();
        for (const auto& l : det.labels) arr.push_back(l.name);
        rec["Object"] = arr;
    }
    rec["location"] = json::array({round1(det.center.x), round1(det.center.y)});
    rec["bbox"] = json::array({det.bbox.x1, det.bbox.y1, det.bbox.x2, det.bbox.y2});
    if (det.confidence != 1.0) rec["confidence"] = det.confidence;
    return rec;
}

} // namespace

std::optional<std::string> Detection::shape() const {
    return first_of_class(labels, AttributeClass::Shape);
}
std::optional<std::string> Detection::color() const {
    return first_of_class(labels, AttributeClass::Color);
}
std::optional<std::string> Detection::toward() const {
    return first_of_class(labels, AttributeClass::Toward);
}

DetectionSet parse_detections(std::string_view text, const Ontology& ontology) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedRecord, std::string("invalid JSON: ") + e.what());
    }

    DetectionSet set;
    const json* records = &doc;
    if (doc.is_object()) {
        if (doc.contains("image_size")) {
            const json& dims = doc.at("image_size");
            if (!dims.is_array() || dims.size() != 2)
                fail(ErrorKind::MalformedRecord, "image_size must be a 2-array");
            set.image_width = number_field(dims[0], "image_size.w");
            set.image_height = number_field(dims[1], "image_size.h");
        }
        if (!doc.contains("detections"))
            fail(ErrorKind::MalformedRecord, "sidecar object must carry a detections array");
        records = &doc.at("detections");
    }
    if (!records->is_array()) fail(ErrorKind::MalformedRecord, "expected an array of records");
    for (const auto& rec : *records) set.detections.push_back(parse_record(rec, ontology));
    return set;
}

std::string serialize_detections(const DetectionSet& set, bool with_header, int indent) {
    json arr = json::array();
    for (const auto& det : set.detections) arr.push_back(record_to_json(det));
    if (!with_header) return arr.dump(indent);
    json doc = json::object();
    if (set.image_width && set.image_height)
        doc["image_size"] = json::array({*set.image_width, *set.image_height});
    doc["detections"] = arr;
    return doc.dump(indent);
}

DetectionSet merge_colocated(const DetectionSet& set, double iou_threshold) {
    if (iou_threshold <= 0.0 || iou_threshold > 1.0)
        fail(ErrorKind::ConfigError, "iou threshold must be in (0,1]");

    const std::size_t n = set.detections.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Keep the smaller index as the representative.
        if (a < b) parent[b] = a; else parent[a] = b;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (iou(set.detections[i].bbox, set.detections[j].bbox) >= iou_threshold)
                unite(i, j);

    DetectionSet out;
    out.image_width = set.image_width;
    out.image_height = set.image_height;
    for (std::size_t i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        std::vector<std::size_t> members;
        for (std::size_t j = i; j < n; ++j)
            if (find(j) == i) members.push_back(j);
        if (members.size() == 1) {
            out.detections.push_back(set.detections[i]);
            continue;
        }
        Detection merged;
        merged.bbox = set.detections[i].bbox;
        merged.center = center_of(merged.bbox);
        merged.confidence = set.detections[i].confidence;
        for (std::size_t j : members)
            for (const auto& label : set.detections[j].labels)
                if (!merged.has_label(label.name)) merged.labels.push_back(label);
        out.detections.push_back(std::move(merged));
    }
    return out;
}

} // namespace vrc
