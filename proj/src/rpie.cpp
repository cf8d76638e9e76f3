#include "vrc/rpie.hpp"

namespace vrc {

Point shift(const Point& p, Relation r, double delta) {
    if (!(delta > 0.0)) fail(ErrorKind::ConfigError, "probe offset must be positive");
    DirectionVector u = direction(r);
    return Point{p.x + delta * u.ux, p.y + delta * u.uy};
}

namespace {

bool probe_in_bounds(const Point& probe, const DetectionSet& all) {
    if (probe.x < 0.0 || probe.y < 0.0) return false;
    if (all.image_width && probe.x > *all.image_width) return false;
    if (all.image_height && probe.y > *all.image_height) return false;
    return true;
}

double reference_extent(const BBox& box, Relation r) {
    DirectionVector u = direction(r);
    return u.ux != 0 ? box.width() : box.height();
}

} // namespace

CandidateSet infer_relative(const ParsedQuery& query, const CandidateSet& candidates,
                            const DetectionSet& all, const ProbeConfig& cfg) {
    if (!query.relation) return candidates;
    const Relation rel = *query.relation;
    auto ref_record = query.reference_index();

    // (input candidate index) -> linked detection index, if any.
    std::vector<std::optional<std::size_t>> linked(candidates.candidates.size());
    for (std::size_t i = 0; i < candidates.candidates.size(); ++i) {
        const Candidate& cand = candidates.candidates[i];
        if (!ref_record || cand.matched_record != *ref_record) continue;
        if (!cand.bbox) continue;

        double delta = cfg.delta;
        if (cfg.adaptive) delta = cfg.beta * reference_extent(*cand.bbox, rel);
        if (!(delta > 0.0)) continue;

        Point probe = shift(center_of(*cand.bbox), rel, delta);
        if (!probe_in_bounds(probe, all)) continue;

        for (std::size_t d = 0; d < all.detections.size(); ++d) {
            if (d == cand.source_detection) continue; // never link a reference to itself
            if (contains(probe, all.detections[d].bbox)) {
                linked[i] = d;
                break; // first match under the traversal order
            }
        }
    }

    CandidateSet out;
    std::vector<std::size_t> out_index(candidates.candidates.size());
    for (std::size_t i = 0; i < candidates.candidates.size(); ++i) {
        out_index[i] = out.candidates.size();
        out.candidates.push_back(candidates.candidates[i]);
        if (!linked[i]) continue;
        const Detection& det = all.detections[*linked[i]];
        Candidate target;
        target.labels = det.labels;
        target.bbox = det.bbox;
        target.center = det.center;
        target.matched_record = candidates.candidates[i].matched_record;
        target.tags.insert(kMaybeResultTag);
        target.link = out_index[i];
        target.source_detection = *linked[i];
        target.confidence = det.confidence;
        out.candidates.push_back(std::move(target));
    }
    return out;
}

} // namespace vrc
