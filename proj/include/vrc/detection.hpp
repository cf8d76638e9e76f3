#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrc/geometry.hpp"
#include "vrc/ontology.hpp"

namespace vrc {

// One perceived object: attribute labels, confidence, box and center.
// The center mirrors the wire "location" field and must sit on the box
// midpoint within eps_center (wire locations are rounded to one decimal).
struct Detection {
    std::vector<AttributeTag> labels;
    double confidence = 1.0;
    BBox bbox;
    Point center;

    bool has_label(std::string_view name) const;
    std::optional<std::string> shape() const;
    std::optional<std::string> color() const;
    std::optional<std::string> toward() const;
};

// Ordered detection list; the order is the RPIE traversal order and is
// preserved exactly as ingested.
struct DetectionSet {
    std::vector<Detection> detections;
    std::optional<double> image_width;
    std::optional<double> image_height;
};

inline constexpr double kCenterTolerancePx = 0.5;
inline constexpr double kDefaultMergeIou = 0.8;

// Parses the detection wire format: a UTF-8 JSON array of records with keys
// exactly "Object" (string or array of strings), "location" ([x,y]) and
// "bbox" ([x1,y1,x2,y2]); "confidence" is accepted optionally and defaults
// to 1.0. A sidecar wrapper {"image_size":[w,h],"detections":[...]} is also
// accepted. Throws MalformedRecord / GeometryError / UnknownToken.
DetectionSet parse_detections(std::string_view text, const Ontology& ontology);

// Serializes back to the same structure. Single-label detections emit a bare
// string "Object"; multi-label ones emit an array. Locations are rounded to
// one decimal; confidence is emitted only when it differs from 1.0.
std::string serialize_detections(const DetectionSet& set, bool with_header = false,
                                 int indent = -1);

// Merges co-located atomic attribute records into multi-attribute detections:
// groups are transitive closures of pairwise IoU >= threshold; each group
// keeps its first member's bbox, the label union in input order (deduplicated)
// and the recomputed bbox midpoint as center. Group order follows the first
// members. Idempotent.
DetectionSet merge_colocated(const DetectionSet& set, double iou_threshold = kDefaultMergeIou);

} // namespace vrc
