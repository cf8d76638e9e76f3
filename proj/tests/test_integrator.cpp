#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "vrc/integrator.hpp"
#include "vrc/qie.hpp"

using namespace vrc;
using nlohmann::json;

namespace {

const Ontology& onto = Ontology::standard();

const Qie& qie() {
    static const Qie instance(onto, Lexicon::standard());
    return instance;
}

Detection make_det(std::initializer_list<const char*> labels, BBox box) {
    Detection det;
    for (const char* l : labels) det.labels.push_back(onto.parse_attribute_token(l));
    det.bbox = box;
    det.center = center_of(box);
    return det;
}

DetectionSet listing_scene() {
    DetectionSet set;
    set.detections.push_back(make_det({"cylinder"}, BBox{335.72, 127.53, 398.07, 203.88}));
    set.detections.push_back(make_det({"6"}, BBox{401.04, 118.47, 467.62, 223.98}));
    return set;
}

} // namespace

TEST_CASE("type-map expansion retains only category members") {
    ParsedQuery q = qie().parse_question("Click the number");
    CandidateSet cs = match(listing_scene(), q, onto);
    REQUIRE(cs.candidates.size() == 1);
    CHECK(cs.candidates[0].labels[0].name == "6");
    CHECK(cs.candidates[0].matched_record == 0);
    CHECK(cs.candidates[0].source_detection == 1);
}

TEST_CASE("wildcards ignore unpopulated fields") {
    DetectionSet set;
    set.detections.push_back(make_det({"cone", "red", "front"}, BBox{0, 0, 10, 10}));
    set.detections.push_back(make_det({"cone", "blue", "side"}, BBox{20, 0, 30, 10}));
    set.detections.push_back(make_det({"cube", "red", "front"}, BBox{40, 0, 50, 10}));

    ParsedQuery q = qie().parse_question("Click the cone");
    CandidateSet cs = match(set, q, onto);
    CHECK(cs.candidates.size() == 2); // both cones regardless of color/orientation

    ParsedQuery q2 = qie().parse_question("Click the red cone");
    CandidateSet cs2 = match(set, q2, onto);
    REQUIRE(cs2.candidates.size() == 1);
    CHECK(cs2.candidates[0].source_detection == 0);
}

TEST_CASE("populated constraints need the attribute present on the detection") {
    DetectionSet set;
    set.detections.push_back(make_det({"cone"}, BBox{0, 0, 10, 10})); // shape-only detection
    ParsedQuery q = qie().parse_question("Click the red cone");
    CHECK_THROWS_AS(match(set, q, onto), Error); // absent color fails the populated field
}

TEST_CASE("no candidates at all is an error distinct from an empty target set") {
    DetectionSet blue_cones;
    blue_cones.detections.push_back(make_det({"cone", "blue", "side"}, BBox{0, 0, 10, 10}));

    ParsedQuery q = qie().parse_question("Click the red cone");
    try {
        match(blue_cones, q, onto);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoCandidates);
    }

    // Reference matches but the category target set is empty: not an error;
    // the decision stage reports NoMatch later.
    ParsedQuery q2 =
        qie().parse_question("Click the number that matches the color of the blue cone");
    CandidateSet cs = match(blue_cones, q2, onto);
    CHECK(cs.candidates.size() == 1);

    // An unmatched reference record is an error even when targets matched.
    DetectionSet digits;
    digits.detections.push_back(make_det({"6", "red", "front"}, BBox{0, 0, 10, 10}));
    try {
        match(digits, q2, onto);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoCandidates);
    }
}

TEST_CASE("monotonicity: adding a populated field never enlarges the match set") {
    std::mt19937_64 rng(23);
    const std::vector<std::string> shapes = {"cone", "cube", "sphere", "6", "T"};
    for (int round = 0; round < 200; ++round) {
        DetectionSet set;
        int n = 1 + int(rng() % 10);
        for (int i = 0; i < n; ++i) {
            Detection det = make_det({}, BBox{double(i) * 20, 0, double(i) * 20 + 10, 10});
            det.labels.push_back(
                AttributeTag{AttributeClass::Shape, shapes[rng() % shapes.size()]});
            det.labels.push_back(AttributeTag{AttributeClass::Color,
                                              onto.colors()[rng() % onto.colors().size()]});
            det.labels.push_back(AttributeTag{AttributeClass::Toward,
                                              onto.towards()[rng() % onto.towards().size()]});
            set.detections.push_back(det);
        }
        QueryRecord loose;
        loose.shape = ShapeSpec{false, shapes[rng() % shapes.size()]};
        loose.role = Role::Target;
        QueryRecord tight = loose;
        tight.color = onto.colors()[rng() % onto.colors().size()];

        std::size_t loose_count = 0, tight_count = 0;
        for (const auto& det : set.detections) {
            if (record_matches(loose, det, onto)) ++loose_count;
            if (record_matches(tight, det, onto)) ++tight_count;
        }
        CHECK(tight_count <= loose_count);
    }
}

TEST_CASE("wildcard equals the union of fully-specified records") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 50; ++round) {
        DetectionSet set;
        int n = 1 + int(rng() % 12);
        for (int i = 0; i < n; ++i) {
            Detection det = make_det({}, BBox{double(i) * 20, 0, double(i) * 20 + 10, 10});
            det.labels.push_back(AttributeTag{AttributeClass::Shape, rng() % 2 ? "cone" : "cube"});
            det.labels.push_back(AttributeTag{AttributeClass::Color,
                                              onto.colors()[rng() % onto.colors().size()]});
            det.labels.push_back(AttributeTag{AttributeClass::Toward,
                                              onto.towards()[rng() % onto.towards().size()]});
            set.detections.push_back(det);
        }
        QueryRecord wildcard;
        wildcard.shape = ShapeSpec{false, "cone"};
        wildcard.role = Role::Target;

        std::set<std::size_t> from_wildcard, from_union;
        for (std::size_t i = 0; i < set.detections.size(); ++i)
            if (record_matches(wildcard, set.detections[i], onto)) from_wildcard.insert(i);
        for (const auto& color : onto.colors()) {
            for (const auto& toward : onto.towards()) {
                QueryRecord full = wildcard;
                full.color = color;
                full.toward = toward;
                for (std::size_t i = 0; i < set.detections.size(); ++i)
                    if (record_matches(full, set.detections[i], onto)) from_union.insert(i);
            }
        }
        CHECK(from_wildcard == from_union);
    }
}

TEST_CASE("output is a subset of the input in traversal order") {
    DetectionSet set;
    for (int i = 0; i < 6; ++i)
        set.detections.push_back(
            make_det({i % 2 ? "cone" : "cube"}, BBox{double(i) * 20, 0, double(i) * 20 + 10, 10}));
    ParsedQuery q = qie().parse_question("Click the cone");
    CandidateSet cs = match(set, q, onto);
    REQUIRE(cs.candidates.size() == 3);
    std::size_t prev = 0;
    for (const auto& cand : cs.candidates) {
        CHECK(cand.source_detection >= prev);
        prev = cand.source_detection;
        CHECK(cand.labels == set.detections[cand.source_detection].labels);
    }
}

TEST_CASE("candidate serialization round-trips the augmented wire form") {
    const char* step5 =
        R"([
  {"Object": ["T", "blue", "side"], "location": [442.5, 168.2]},
  {"Object": ["blue", "cube", "side", "!maybe result"], "location": [442.2, 267.8]},
  {"Object": ["T", "front", "red"], "location": [358.8, 192.3]},
  {"Object": ["T", "red", "front"], "location": [56.1, 310.4]},
  {"Object": ["T", "green", "front"], "location": [99.3, 142.5]}
])";
    CandidateSet cs = parse_candidates(step5, onto);
    REQUIRE(cs.candidates.size() == 5);
    CHECK(cs.candidates[1].tagged_maybe_result());
    CHECK_FALSE(cs.candidates[0].tagged_maybe_result());
    CHECK_FALSE(cs.candidates[1].bbox.has_value());
    CHECK(json::parse(serialize_candidates(cs, false)) == json::parse(step5));
}
