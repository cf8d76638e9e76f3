#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vrc/challenge.hpp"
#include "vrc/query.hpp"

namespace vrc {

// Ground-truth object of a synthetic scene.
struct PlacedObject {
    CompoundLabel label;
    BBox bbox;
};

enum class OverlapPolicy { Disjoint, Stacked };
enum class QuestionType { Direct, Spatial, Comparative };

const char* to_string(QuestionType t);

// Label-noise knobs for robustness studies: drop removes detection records,
// corrupt rewrites one attribute label. Ground truth stays untouched.
struct NoiseSpec {
    double drop_rate = 0.0;
    double corrupt_rate = 0.0;
    std::uint64_t seed = 0;
};

struct SceneSpec {
    double width = 640.0;
    double height = 640.0;
    int min_objects = 6;
    int max_objects = 12;
    std::vector<std::string> shapes;  // allowed shape pool; empty = full ontology
    std::vector<std::string> colors;  // empty = all five
    std::vector<std::string> towards; // empty = both
    OverlapPolicy overlap = OverlapPolicy::Disjoint;
    double stack_max_iou = 0.3; // occlusion cap under the stacked policy
    double w_direct = 1.0;
    double w_spatial = 1.0;
    double w_comparative = 1.0;
    std::uint64_t seed = 0;
};

// Table-2-style platform profiles: vtt, geetest, netease, dingxiang, shumei,
// xiaodun. Throws ConfigError for unknown names.
SceneSpec profile_spec(const std::string& name);
const std::vector<std::string>& profile_names();

struct GeneratedChallenge {
    Challenge challenge;
    std::vector<PlacedObject> objects;
    ParsedQuery intended; // what the templater meant; parse_question must invert to this
    std::size_t answer_index = 0;
};

// One seeded scene + question + ground truth. The emitted question always has
// a unique answer under the brute-force oracle (resampled otherwise); throws
// PlacementFailure / NoUniqueQuestion after bounded retries.
GeneratedChallenge generate_challenge(const SceneSpec& spec, std::optional<QuestionType> qtype,
                                      std::uint64_t seed, const Ontology& ontology,
                                      const std::string& id);

// Batch form; ids are "<prefix>-NNNNNN". Noise, when given, perturbs the
// emitted detections only.
std::vector<GeneratedChallenge> generate_corpus(const SceneSpec& spec, int count,
                                                std::uint64_t seed, const Ontology& ontology,
                                                std::optional<QuestionType> qtype = std::nullopt,
                                                const NoiseSpec* noise = nullptr,
                                                const std::string& id_prefix = "gen");

// Exact ground-truth perception for a scene in the detection wire model:
// one record per object, attribute list [shape, color, toward], confidence 1.
DetectionSet detections_from_objects(const std::vector<PlacedObject>& objects, double width,
                                     double height);

// Reconstructs ground-truth objects from merged detections (records carrying
// a shape label); used to oracle-check questions over existing corpora.
std::vector<PlacedObject> objects_from_detections(const DetectionSet& merged);

DetectionSet apply_noise(const DetectionSet& detections, const NoiseSpec& noise,
                         const Ontology& ontology);

// Independent solving oracle: exhaustively applies the attribute / spatial /
// comparative semantics over ground-truth objects and returns every solution
// index. Never calls pipeline code. Spatial predicates use the box
// inequalities; "directly" phrasing additionally requires the reference
// center to sit within the target's span on the orthogonal axis.
std::vector<std::size_t> brute_force_solve(const std::vector<PlacedObject>& objects,
                                           const ParsedQuery& query, const Ontology& ontology);

} // namespace vrc
