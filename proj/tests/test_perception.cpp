#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "vrc/detection.hpp"

using namespace vrc;
using nlohmann::json;

namespace {

const char* kListing =
    R"([
  {"Object": "cylinder",
   "location": [366.9, 165.7],
   "bbox": [335.7237854003906, 127.53125762939453, 398.072265625, 203.88307189941406]},
  {"Object": "6",
   "location": [434.3, 171.2],
   "bbox": [401.0405578613281, 118.474853515625, 467.6160888671875, 223.9849090576172]}
])";

const Ontology& onto = Ontology::standard();

} // namespace

TEST_CASE("serialized detector output parses with order preserved") {
    DetectionSet set = parse_detections(kListing, onto);
    REQUIRE(set.detections.size() == 2);
    CHECK(set.detections[0].labels.size() == 1);
    CHECK(set.detections[0].labels[0].name == "cylinder");
    CHECK(set.detections[0].center.x == doctest::Approx(366.9));
    CHECK(set.detections[0].center.y == doctest::Approx(165.7));
    CHECK(set.detections[0].confidence == 1.0); // omitted score defaults to 1
    CHECK(set.detections[1].labels[0].name == "6");
    CHECK(set.detections[1].bbox.x1 == doctest::Approx(401.0405578613281));
}

TEST_CASE("attribute-list records parse into multi-label detections") {
    const char* text =
        R"([{"Object": ["T", "blue", "side"], "location": [442.5, 168.2],
             "bbox": [394.7731, 101.0462, 490.2843, 235.4473]}])";
    DetectionSet set = parse_detections(text, onto);
    REQUIRE(set.detections.size() == 1);
    REQUIRE(set.detections[0].labels.size() == 3);
    CHECK(set.detections[0].labels[0].name == "T");
    CHECK(set.detections[0].labels[1].name == "blue");
    CHECK(set.detections[0].labels[2].name == "side");
    CHECK(set.detections[0].shape() == "T");
    CHECK(set.detections[0].color() == "blue");
    CHECK(set.detections[0].toward() == "side");
}

TEST_CASE("parse errors carry the contract kinds") {
    auto kind_of = [](const char* text) {
        try {
            parse_detections(text, onto);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InternalError;
    };
    CHECK(kind_of(R"([{"Object":"6","location":[1,1]}])") == ErrorKind::MalformedRecord);
    CHECK(kind_of(R"([{"Object":"6","location":[10,15],"bbox":[10,10,5,20]}])") ==
          ErrorKind::GeometryError); // x1 > x2
    CHECK(kind_of(R"([{"Object":"teal","location":[5,5],"bbox":[0,0,10,10]}])") ==
          ErrorKind::UnknownToken);
    CHECK(kind_of(R"([{"Object":"6","location":[1],"bbox":[0,0,10,10]}])") ==
          ErrorKind::MalformedRecord);
    CHECK(kind_of(R"([{"Object":"6","location":[9,9],"bbox":[0,0,10,10]}])") ==
          ErrorKind::GeometryError); // location off the midpoint
    CHECK(kind_of(R"(not json)") == ErrorKind::MalformedRecord);
    CHECK(kind_of(R"([{"Object":[],"location":[5,5],"bbox":[0,0,10,10]}])") ==
          ErrorKind::MalformedRecord);
}

TEST_CASE("parse -> serialize -> parse is a fixed point, structurally bit-exact") {
    DetectionSet set = parse_detections(kListing, onto);
    std::string serialized = serialize_detections(set);
    CHECK(json::parse(serialized) == json::parse(kListing));
    DetectionSet again = parse_detections(serialized, onto);
    CHECK(serialize_detections(again) == serialized);
}

TEST_CASE("sidecar header carries image dimensions") {
    std::string text = std::string(R"({"image_size": [680, 460], "detections": )") + kListing + "}";
    DetectionSet set = parse_detections(text, onto);
    CHECK(set.image_width == 680.0);
    CHECK(set.image_height == 460.0);
    std::string serialized = serialize_detections(set, /*with_header=*/true);
    CHECK(json::parse(serialized)["image_size"] == json::array({680.0, 460.0}));
}

TEST_CASE("center_of") {
    CHECK(center_of(BBox{0, 0, 2, 2}).x == 1.0);
    CHECK(center_of(BBox{0, 0, 2, 2}).y == 1.0);
    // Degenerate zero-area box.
    CHECK(center_of(BBox{5, 5, 5, 5}).x == 5.0);
    CHECK(center_of(BBox{5, 5, 5, 5}).y == 5.0);
    Point c = center_of(BBox{394.7731, 101.0462, 490.2843, 235.4473});
    CHECK(c.x == doctest::Approx(442.5287).epsilon(1e-6));
    CHECK(c.y == doctest::Approx(168.2468).epsilon(1e-5));
}

TEST_CASE("center always lies inside its box") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        double x1 = double(rng() % 10000) / 10.0;
        double y1 = double(rng() % 10000) / 10.0;
        BBox b{x1, y1, x1 + double(rng() % 1000) / 10.0, y1 + double(rng() % 1000) / 10.0};
        CHECK(contains(center_of(b), b));
    }
}

TEST_CASE("co-located attribute records merge into one detection") {
    // Same-object attribute boxes from the worked letter-T scene.
    const char* text =
        R"([{"Object": "blue", "location": [442.2, 267.8],
             "bbox": [388.4220, 203.7325, 496.0359, 331.7915]},
            {"Object": "cube", "location": [442.2, 267.3],
             "bbox": [387.9681, 203.1617, 496.4134, 331.5254]},
            {"Object": "side", "location": [442.3, 267.8],
             "bbox": [388.9377, 204.2251, 495.6071, 331.2968]}])";
    DetectionSet merged = merge_colocated(parse_detections(text, onto), 0.8);
    REQUIRE(merged.detections.size() == 1);
    const Detection& det = merged.detections[0];
    REQUIRE(det.labels.size() == 3);
    // Label union in input order; first member's bbox; recomputed center.
    CHECK(det.labels[0].name == "blue");
    CHECK(det.labels[1].name == "cube");
    CHECK(det.labels[2].name == "side");
    CHECK(det.bbox.x1 == doctest::Approx(388.4220));
    CHECK(det.center.x == doctest::Approx(442.22895));
    CHECK(det.center.y == doctest::Approx(267.762));
}

TEST_CASE("disjoint boxes stay unmerged and empty sets pass through") {
    const char* text =
        R"([{"Object": "6", "location": [5, 5], "bbox": [0, 0, 10, 10]},
            {"Object": "T", "location": [105, 5], "bbox": [100, 0, 110, 10]}])";
    DetectionSet set = parse_detections(text, onto);
    DetectionSet merged = merge_colocated(set, 0.8);
    CHECK(merged.detections.size() == 2);
    CHECK(serialize_detections(merged) == serialize_detections(set));

    DetectionSet empty;
    CHECK(merge_colocated(empty, 0.8).detections.empty());
}

TEST_CASE("merge groups form by transitive closure") {
    // a~b and b~c overlap pairwise above threshold, a~c slightly less: one group.
    const char* text =
        R"([{"Object": "T", "location": [50, 50], "bbox": [0, 0, 100, 100]},
            {"Object": "red", "location": [52.5, 50], "bbox": [5, 0, 100, 100]},
            {"Object": "front", "location": [55, 50], "bbox": [10, 0, 100, 100]}])";
    DetectionSet merged = merge_colocated(parse_detections(text, onto), 0.9);
    REQUIRE(merged.detections.size() == 1);
    CHECK(merged.detections[0].labels.size() == 3);
}

TEST_CASE("merge_colocated is idempotent") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 50; ++round) {
        DetectionSet set;
        int n = 2 + int(rng() % 8);
        for (int i = 0; i < n; ++i) {
            Detection det;
            double x = double(rng() % 500);
            double y = double(rng() % 500);
            double w = 20 + double(rng() % 60);
            double h = 20 + double(rng() % 60);
            det.bbox = BBox{x, y, x + w, y + h};
            det.center = center_of(det.bbox);
            det.labels.push_back(onto.parse_attribute_token(
                onto.shapes()[rng() % onto.shapes().size()]));
            set.detections.push_back(det);
        }
        DetectionSet once = merge_colocated(set, 0.8);
        DetectionSet twice = merge_colocated(once, 0.8);
        CHECK(serialize_detections(twice) == serialize_detections(once));
    }
}

TEST_CASE("explicit confidence is preserved and validated") {
    const char* text =
        R"([{"Object": "6", "location": [5, 5], "bbox": [0, 0, 10, 10], "confidence": 0.75}])";
    DetectionSet set = parse_detections(text, onto);
    CHECK(set.detections[0].confidence == 0.75);
    CHECK(serialize_detections(set).find("0.75") != std::string::npos);

    CHECK_THROWS_AS(
        parse_detections(
            R"([{"Object":"6","location":[5,5],"bbox":[0,0,10,10],"confidence":1.5}])", onto),
        Error);
}
