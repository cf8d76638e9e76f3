#pragma once

#include "vrc/detection.hpp"
#include "vrc/integrator.hpp"
#include "vrc/query.hpp"

namespace vrc {

// Probe configuration. delta is the fixed pixel offset; adaptive mode scales
// it by the reference box extent along the probe direction instead.
struct ProbeConfig {
    double delta = 80.0;
    bool adaptive = false;
    double beta = 1.0;
};

// Probe point p + delta * u(r).
Point shift(const Point& p, Relation r, double delta);

// Resolves spatially-defined targets: for each candidate matched to the
// query's Reference record, projects a probe point from its center along the
// relation direction and links the first detection (in traversal order) whose
// box contains it. The reference's own detection is skipped; probes outside
// the image bounds skip the reference (only negative coordinates when the
// dimensions are unknown). Every input candidate passes through; inferred
// targets are inserted after their reference, tagged "!maybe result" and
// linked back to it. Without a relation the input is returned unchanged.
CandidateSet infer_relative(const ParsedQuery& query, const CandidateSet& candidates,
                            const DetectionSet& all, const ProbeConfig& cfg);

} // namespace vrc
