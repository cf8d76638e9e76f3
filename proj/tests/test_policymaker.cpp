#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "vrc/backend.hpp"
#include "vrc/qie.hpp"
#include "vrc/rpie.hpp"

using namespace vrc;

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

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalError;
}

} // namespace

TEST_CASE("parse_backend_answer extracts exactly one pair") {
    Answer a = parse_backend_answer("The coordinates for the blue cube are (442.2, 267.8).");
    CHECK(a.point.x == doctest::Approx(442.2));
    CHECK(a.point.y == doctest::Approx(267.8));

    CHECK(parse_backend_answer("(10,20)").point.x == 10.0);
    CHECK(parse_backend_answer("(10,20)").point.y == 20.0);
    CHECK(parse_backend_answer("answer: ( 1.5 , 2.5 ) ok").point.y == 2.5);

    CHECK(kind_of([] { parse_backend_answer("(1,2) or (3,4)"); }) == ErrorKind::MalformedAnswer);
    CHECK(kind_of([] { parse_backend_answer("no coordinates here"); }) ==
          ErrorKind::MalformedAnswer);
    CHECK(kind_of([] { parse_backend_answer("(a,b)"); }) == ErrorKind::MalformedAnswer);
}

TEST_CASE("parse of a formatted answer is the identity") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        Point p{double(rng() % 100000) / 10.0, double(rng() % 100000) / 10.0};
        Answer back = parse_backend_answer(format_answer(p));
        CHECK(back.point.x == doctest::Approx(p.x).epsilon(1e-12));
        CHECK(back.point.y == doctest::Approx(p.y).epsilon(1e-12));
    }
}

TEST_CASE("resolve_direct returns the unique match") {
    DetectionSet set;
    set.detections.push_back(make_det({"cylinder"}, BBox{335.72, 127.53, 398.07, 203.88}));
    set.detections.push_back(make_det({"6"}, BBox{401.04, 118.47, 467.62, 223.98}));
    ParsedQuery q = qie().parse_question("Click the number '6'");
    CandidateSet cs = match(set, q, onto);
    Answer a = resolve_direct(q, cs, onto);
    CHECK(a.point.x == doctest::Approx(434.33));
    CHECK(a.point.y == doctest::Approx(171.225));
}

TEST_CASE("resolve_direct surfaces ambiguity instead of guessing") {
    DetectionSet set;
    set.detections.push_back(make_det({"cone", "red", "front"}, BBox{0, 0, 10, 10}));
    set.detections.push_back(make_det({"cone", "red", "front"}, BBox{20, 0, 30, 10}));
    ParsedQuery q = qie().parse_question("Click the red cone");
    CandidateSet cs = match(set, q, onto);
    CHECK(kind_of([&] { resolve_direct(q, cs, onto); }) == ErrorKind::Ambiguous);
}

TEST_CASE("same-direction constraint picks the digit matching the reference") {
    DetectionSet set;
    set.detections.push_back(make_det({"cone", "red", "side"}, BBox{0, 0, 10, 10}));
    set.detections.push_back(make_det({"6", "blue", "side"}, BBox{20, 0, 30, 10}));
    set.detections.push_back(make_det({"3", "blue", "front"}, BBox{40, 0, 50, 10}));
    ParsedQuery q =
        qie().parse_question("Please click on the number that matches the direction of the red cone");
    CandidateSet cs = match(set, q, onto);
    Answer a = resolve_direct(q, cs, onto);
    CHECK(a.point.x == doctest::Approx(25.0)); // the side-facing 6

    // Brute-force cross-check over every digit in the scene.
    for (const auto& det : set.detections) {
        if (det.shape() == "6") CHECK(det.toward() == set.detections[0].toward());
        if (det.shape() == "3") CHECK(det.toward() != set.detections[0].toward());
    }
}

TEST_CASE("resolve_spatial follows the unique link") {
    DetectionSet all;
    all.detections.push_back(make_det({"T"}, BBox{100, 40, 160, 100}));
    all.detections.push_back(make_det({"cube", "blue", "side"}, BBox{100, 150, 160, 260}));
    ParsedQuery q = qie().parse_question("Click the object directly below the letter 'T'");
    CandidateSet cs = infer_relative(q, match(all, q, onto), all, ProbeConfig{80.0});
    Answer a = resolve_spatial(q, cs, onto);
    CHECK(a.point.x == doctest::Approx(130.0));
    CHECK(a.point.y == doctest::Approx(205.0));
}

TEST_CASE("resolve_spatial falls back to axis enforcement without links") {
    // Reference plus a described target class; the probe misses (gap > delta)
    // but the geometric fallback still resolves it.
    DetectionSet all;
    all.detections.push_back(make_det({"cylinder"}, BBox{100, 300, 160, 360}));
    all.detections.push_back(make_det({"b", "red", "front"}, BBox{100, 40, 160, 100}));
    ParsedQuery q = qie().parse_question("Click the letter above the cylinder");
    CandidateSet cs = infer_relative(q, match(all, q, onto), all, ProbeConfig{80.0});
    for (const auto& c : cs.candidates) CHECK_FALSE(c.tagged_maybe_result());
    Answer a = resolve_spatial(q, cs, onto);
    CHECK(a.point.y == doctest::Approx(70.0));

    // Nearest satisfying candidate along the relation axis wins.
    all.detections.push_back(make_det({"c", "red", "front"}, BBox{100, 150, 160, 210}));
    CandidateSet cs2 = infer_relative(q, match(all, q, onto), all, ProbeConfig{80.0});
    Answer a2 = resolve_spatial(q, cs2, onto);
    CHECK(a2.point.y == doctest::Approx(180.0));
}

TEST_CASE("resolve_spatial reports NoMatch when nothing satisfies the relation") {
    DetectionSet all;
    all.detections.push_back(make_det({"cylinder"}, BBox{100, 40, 160, 100}));
    all.detections.push_back(make_det({"b", "red", "front"}, BBox{100, 150, 160, 210}));
    // Asked for a letter above, but the letter sits below.
    ParsedQuery q = qie().parse_question("Click the letter above the cylinder");
    CandidateSet cs = infer_relative(q, match(all, q, onto), all, ProbeConfig{80.0});
    CHECK(kind_of([&] { resolve_spatial(q, cs, onto); }) == ErrorKind::NoMatch);
}

TEST_CASE("resolve_comparative covers all six comparators") {
    DetectionSet set;
    set.detections.push_back(make_det({"sphere", "red", "front"}, BBox{0, 0, 2, 3}));   // area 6
    set.detections.push_back(make_det({"sphere", "red", "front"}, BBox{10, 10, 12, 12})); // area 4
    ParsedQuery q = qie().parse_question("Click the largest sphere");
    CandidateSet cs = match(set, q, onto);
    Answer a = resolve_comparative(q, cs, onto);
    CHECK(a.point.x == doctest::Approx(1.0));
    CHECK(a.point.y == doctest::Approx(1.5));

    ParsedQuery qs = qie().parse_question("Click the smallest sphere");
    CHECK(resolve_comparative(qs, cs, onto).point.x == doctest::Approx(11.0));

    // Appendix-style area arithmetic.
    BBox cube{387.9681, 203.1617, 496.4134, 331.5254};
    CHECK(cube.area() == doctest::Approx(13920.4).epsilon(1e-5));

    std::mt19937_64 rng(77);
    for (int round = 0; round < 200; ++round) {
        DetectionSet scene;
        int n = 2 + int(rng() % 8);
        for (int i = 0; i < n; ++i) {
            double x = double(rng() % 5000) / 10.0;
            double y = double(rng() % 5000) / 10.0;
            scene.detections.push_back(make_det(
                {"cube", "red", "front"},
                BBox{x, y, x + 10 + double(rng() % 900) / 10.0, y + 10 + double(rng() % 900) / 10.0}));
        }
        Comparator comp = static_cast<Comparator>(rng() % 6);
        ParsedQuery query;
        QueryRecord rec;
        rec.shape = ShapeSpec{false, "cube"};
        rec.role = Role::Target;
        query.records.push_back(rec);
        query.comparator = comp;
        query.reasoning_type = ReasoningType::Comparative;

        CandidateSet cands = match(scene, query, onto);
        Answer got = resolve_comparative(query, cands, onto);

        // Exhaustive scan oracle.
        std::size_t best = 0;
        auto metric = [&](std::size_t i) {
            const BBox& b = scene.detections[i].bbox;
            switch (comp) {
            case Comparator::Largest:
            case Comparator::Smallest: return b.area();
            case Comparator::Leftmost:
            case Comparator::Rightmost: return (b.x1 + b.x2) / 2;
            default: return (b.y1 + b.y2) / 2;
            }
        };
        bool take_max = comp == Comparator::Largest || comp == Comparator::Rightmost ||
                        comp == Comparator::Bottommost;
        for (std::size_t i = 1; i < scene.detections.size(); ++i)
            if (take_max ? metric(i) > metric(best) : metric(i) < metric(best)) best = i;
        CHECK(got.point.x == doctest::Approx(scene.detections[best].center.x));
        CHECK(got.point.y == doctest::Approx(scene.detections[best].center.y));
    }
}

TEST_CASE("comparative selection is translation invariant; size ranks survive scaling") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 100; ++round) {
        DetectionSet scene;
        int n = 2 + int(rng() % 6);
        for (int i = 0; i < n; ++i) {
            double x = double(rng() % 4000) / 10.0;
            double y = double(rng() % 4000) / 10.0;
            scene.detections.push_back(make_det(
                {"cube"}, BBox{x, y, x + 10 + double(rng() % 500) / 10.0,
                               y + 10 + double(rng() % 500) / 10.0}));
        }
        ParsedQuery query;
        QueryRecord rec;
        rec.shape = ShapeSpec{false, "cube"};
        rec.role = Role::Target;
        query.records.push_back(rec);
        query.comparator = static_cast<Comparator>(rng() % 6);
        query.reasoning_type = ReasoningType::Comparative;

        CandidateSet base = match(scene, query, onto);
        Answer a = resolve_comparative(query, base, onto);

        double dx = double(rng() % 100), dy = double(rng() % 100);
        DetectionSet shifted;
        for (const auto& det : scene.detections) {
            Detection moved = det;
            moved.bbox = BBox{det.bbox.x1 + dx, det.bbox.y1 + dy, det.bbox.x2 + dx,
                              det.bbox.y2 + dy};
            moved.center = center_of(moved.bbox);
            shifted.detections.push_back(moved);
        }
        Answer b = resolve_comparative(query, match(shifted, query, onto), onto);
        CHECK(b.point.x == doctest::Approx(a.point.x + dx));
        CHECK(b.point.y == doctest::Approx(a.point.y + dy));

        if (*query.comparator == Comparator::Largest || *query.comparator == Comparator::Smallest) {
            DetectionSet scaled;
            for (const auto& det : scene.detections) {
                Detection s = det;
                s.bbox = BBox{det.bbox.x1 * 2, det.bbox.y1 * 2, det.bbox.x2 * 2, det.bbox.y2 * 2};
                s.center = center_of(s.bbox);
                scaled.detections.push_back(s);
            }
            Answer c = resolve_comparative(query, match(scaled, query, onto), onto);
            CHECK(c.point.x == doctest::Approx(a.point.x * 2));
            CHECK(c.point.y == doctest::Approx(a.point.y * 2));
        }
    }
}

TEST_CASE("build_prompt carries the contract blocks") {
    DetectionSet all;
    all.detections.push_back(make_det({"T", "blue", "side"}, BBox{100, 40, 160, 100}));
    all.detections.push_back(make_det({"cube", "blue", "side"}, BBox{100, 150, 160, 260}));
    ParsedQuery q = qie().parse_question("Please click on the object directly below the letter 'T'.");
    CandidateSet cs = infer_relative(q, match(all, q, onto), all, ProbeConfig{80.0});
    Prompt prompt = build_prompt(q, cs, PromptLibrary::standard());

    CHECK(prompt.reasoning_mode == ReasoningType::Spatial);
    CHECK(prompt.body.find("output exactly one coordinate in the form (x,y) in pixels") !=
          std::string::npos);
    CHECK(prompt.body.find("x increases rightward, y increases downward") != std::string::npos);
    CHECK(prompt.body.find("only the described scene") != std::string::npos);
    CHECK(prompt.body.find("!maybe result") != std::string::npos);
    CHECK(prompt.body.find("Please click on the object directly below the letter 'T'.") !=
          std::string::npos);
    // The worked guidance block ships verbatim in the spatial template.
    CHECK(prompt.body.find("\"Click the letter above the cylinder\" means to click the letter, "
                           "not the cylinder.") != std::string::npos);
    CHECK(prompt.body.find("\"Click the object below 'j'\" means to click the object, not the "
                           "character 'j'.") != std::string::npos);
    CHECK(prompt.body.find("the reference is the letter 'T'") != std::string::npos);

    Prompt direct = build_prompt(qie().parse_question("Click the red cone"),
                                 match([] {
                                           DetectionSet s;
                                           s.detections.push_back(
                                               make_det({"cone", "red", "front"}, BBox{0, 0, 10, 10}));
                                           return s;
                                       }(),
                                       qie().parse_question("Click the red cone"), onto),
                                 PromptLibrary::standard());
    CHECK(direct.body.find("red cone") != std::string::npos);
    CHECK(direct.body.find("attribute conjunction") != std::string::npos);

    CHECK(kind_of([&] { build_prompt(q, CandidateSet{}, PromptLibrary::standard()); }) ==
          ErrorKind::EmptyScene);
}

TEST_CASE("oracle backend is answer-only and deterministic") {
    DetectionSet all;
    all.detections.push_back(make_det({"T"}, BBox{100, 40, 160, 100}));
    all.detections.push_back(make_det({"cube", "blue", "side"}, BBox{100, 150, 160, 260}));
    ParsedQuery q = qie().parse_question("Click the object directly below the letter 'T'");
    CandidateSet cs = infer_relative(q, match(all, q, onto), all, ProbeConfig{80.0});
    Prompt prompt = build_prompt(q, cs, PromptLibrary::standard());

    OracleBackend backend(onto);
    BackendRequest req;
    req.prompt = &prompt;
    req.candidates = &cs;
    req.query = &q;
    BackendResponse resp = backend.invoke(req);
    CHECK(resp.text == "(130.0, 205.0)");
    CHECK(backend.invoke(req).text == resp.text);

    // Prompt-only requests violate the oracle contract (the R1/R2 case).
    BackendRequest bare;
    bare.prompt = &prompt;
    CHECK(kind_of([&] { backend.invoke(bare); }) == ErrorKind::BackendContract);
}

TEST_CASE("shipped prompt templates equal the built-ins") {
    PromptLibrary loaded = PromptLibrary::load_dir(std::string(VRC_DATA_DIR) + "/prompts");
    CHECK(loaded == PromptLibrary::standard());
}
