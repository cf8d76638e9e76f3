#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vrc/detection.hpp"

namespace vrc {

// Normalized one-answer click region: fractions of image width/height.
struct GroundTruthRegion {
    double left = 0.0;
    double right = 0.0;
    double top = 0.0;
    double bottom = 0.0;

    bool valid() const {
        return 0.0 <= left && left < right && right <= 1.0 && 0.0 <= top && top < bottom &&
               bottom <= 1.0;
    }
};

struct Challenge {
    std::string id;
    std::string question;
    DetectionSet detections;
    std::optional<std::string> image_ref;
    double image_width = 0.0;
    double image_height = 0.0;
    GroundTruthRegion truth;
    std::optional<std::string> platform;
    std::optional<std::string> axes; // TSR variant annotation ("s,r", ...)
    std::optional<std::string> source_id;
};

// Corpus format: JSON Lines, one challenge object per line with keys
// id / question / image_size / truth / detections (perception wire format),
// plus optional platform / image / axes / source.
std::vector<Challenge> load_corpus(const std::string& path, const Ontology& ontology);
Challenge parse_challenge(std::string_view line, const Ontology& ontology);
std::string serialize_challenge(const Challenge& challenge);
void save_corpus(const std::vector<Challenge>& corpus, const std::string& path);

} // namespace vrc
