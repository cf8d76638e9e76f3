#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "vrc/config.hpp"
#include "vrc/harness.hpp"
#include "vrc/scenegen.hpp"

using namespace vrc;
using nlohmann::json;

namespace {

const Ontology& onto = Ontology::standard();

Challenge golden_challenge() {
    static const std::vector<Challenge> corpus =
        load_corpus(std::string(VRC_DATA_DIR) + "/challenges/letter_t_scene.challenge", onto);
    return corpus.front();
}

} // namespace

TEST_CASE("score is inclusive on all four boundaries") {
    GroundTruthRegion region{0.5670, 0.7352, 0.4469, 0.7288};
    // The worked verification example: normalized (0.6503, 0.5822).
    CHECK(score(Point{0.6503 * 680, 0.5822 * 460}, region, 680, 460));
    CHECK_FALSE(score(Point{0.99 * 680, 0.99 * 460}, region, 680, 460));

    GroundTruthRegion unit{0.25, 0.75, 0.25, 0.75};
    CHECK(score(Point{25, 50}, unit, 100, 100));  // left edge
    CHECK(score(Point{75, 50}, unit, 100, 100));  // right edge
    CHECK(score(Point{50, 25}, unit, 100, 100));  // top edge
    CHECK(score(Point{50, 75}, unit, 100, 100));  // bottom edge
    CHECK(score(Point{25, 25}, unit, 100, 100));  // corner
    CHECK_FALSE(score(Point{24.99, 50}, unit, 100, 100));
    CHECK_FALSE(score(Point{50, 75.01}, unit, 100, 100));
}

TEST_CASE("score is invariant under consistent rescaling") {
    std::mt19937_64 rng(3);
    GroundTruthRegion region{0.2, 0.6, 0.3, 0.9};
    for (int i = 0; i < 300; ++i) {
        Point p{double(rng() % 1000), double(rng() % 1000)};
        double k = 0.5 + double(rng() % 100) / 10.0;
        bool base = score(p, region, 1000, 1000);
        CHECK(score(Point{p.x * k, p.y * k}, region, 1000 * k, 1000 * k) == base);
    }
}

TEST_CASE("golden challenge end-to-end under the full pipeline") {
    Challenge ch = golden_challenge();
    OracleBackend backend(onto);
    RunConfig cfg; // r3, oracle defaults, delta 80
    RunResult result = run_pipeline(ch, cfg, backend, Context{});

    REQUIRE(result.answer.has_value());
    CHECK(result.answer->x == doctest::Approx(442.2).epsilon(1e-9));
    CHECK(result.answer->y == doctest::Approx(267.8).epsilon(1e-9));
    CHECK(result.correct);
    CHECK_FALSE(result.error.has_value());

    // Stage snapshots captured in order.
    const char* stages[] = {"perception", "qie", "integrator", "rpie", "prompt",
                            "backend",    "answer", "score"};
    REQUIRE(result.trace.size() == 8);
    for (std::size_t i = 0; i < result.trace.size(); ++i) CHECK(result.trace[i].stage == stages[i]);
}

TEST_CASE("R1 prompts carry no detection records; R2 carries the full list") {
    Challenge ch = golden_challenge();
    OracleBackend backend(onto);

    RunConfig r1;
    r1.variant = Variant::R1;
    RunResult res1 = run_pipeline(ch, r1, backend, Context{});
    REQUIRE(res1.find_stage("prompt") != nullptr);
    const std::string& p1 = res1.find_stage("prompt")->snapshot;
    CHECK(p1.find("\"Object\"") == std::string::npos);
    CHECK(p1.find(ch.question) != std::string::npos);
    // The oracle cannot act without the structured query: recorded as an error.
    CHECK(res1.error.has_value());
    CHECK(res1.error->find("BackendContract") == 0);
    CHECK_FALSE(res1.correct);

    RunConfig r2;
    r2.variant = Variant::R2;
    RunResult res2 = run_pipeline(ch, r2, backend, Context{});
    const std::string& p2 = res2.find_stage("prompt")->snapshot;
    std::size_t count = 0, pos = 0;
    while ((pos = p2.find("\"Object\"", pos)) != std::string::npos) {
        ++count;
        pos += 8;
    }
    CHECK(count == ch.detections.detections.size());
    CHECK(res2.error.has_value()); // oracle contract again
}

TEST_CASE("stage errors are recorded and counted incorrect") {
    Challenge ch = golden_challenge();
    ch.detections = DetectionSet{}; // empty scene
    OracleBackend backend(onto);
    RunResult result = run_pipeline(ch, RunConfig{}, backend, Context{});
    REQUIRE(result.error.has_value());
    CHECK(result.error->find("NoCandidates") == 0);
    CHECK_FALSE(result.correct);
    CHECK_FALSE(result.answer.has_value());
}

TEST_CASE("aggregate computes accuracy and sample deviation") {
    std::vector<RunResult> results(3);
    results[0].challenge_id = "a";
    results[0].correct = true;
    results[0].latency_s = 5.0;
    results[1].challenge_id = "b";
    results[1].correct = true;
    results[1].latency_s = 7.0;
    results[2].challenge_id = "c";
    results[2].correct = false;
    results[2].latency_s = 6.0;

    auto rows = aggregate(results, [](const RunResult&) { return std::string("all"); });
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 3);
    CHECK(rows[0].correct == 2);
    CHECK(rows[0].accuracy_pct == doctest::Approx(66.6667).epsilon(1e-4));

    std::vector<RunResult> two(results.begin(), results.begin() + 2);
    auto rows2 = aggregate(two, [](const RunResult&) { return std::string("all"); });
    CHECK(rows2[0].latency_mean_s == doctest::Approx(6.0));
    CHECK(rows2[0].latency_sd_s == doctest::Approx(1.4142).epsilon(1e-4));
}

TEST_CASE("aggregate groups by key with a total row") {
    std::vector<RunResult> results(4);
    for (int i = 0; i < 4; ++i) {
        results[i].challenge_id = "c" + std::to_string(i);
        results[i].correct = i % 2 == 0;
    }
    auto rows = aggregate(results, [](const RunResult& r) {
        return r.challenge_id < "c2" ? std::string("vtt") : std::string("geetest");
    });
    REQUIRE(rows.size() == 3); // geetest, vtt, all
    CHECK(rows[0].group == "all");
    CHECK(rows[0].count == 4);
    CHECK(rows[1].group == "geetest");
    CHECK(rows[1].count == 2);
    CHECK(rows[2].group == "vtt");

    std::string csv = render_summary_csv(rows, true);
    CHECK(csv.find("group,count,correct,accuracy_pct,latency_mean_s,latency_sd_s") == 0);
    std::string text = render_summary_text(rows, false);
    CHECK(text.find("accuracy%") != std::string::npos);
}

TEST_CASE("challenge corpus serialization round-trips") {
    Challenge ch = golden_challenge();
    std::string line = serialize_challenge(ch);
    Challenge back = parse_challenge(line, onto);
    CHECK(back.id == ch.id);
    CHECK(back.question == ch.question);
    CHECK(back.image_width == ch.image_width);
    CHECK(back.truth.left == ch.truth.left);
    CHECK(serialize_challenge(back) == line);
}

TEST_CASE("corpus validation rejects bad records") {
    auto kind_of = [](const std::string& line) {
        try {
            parse_challenge(line, onto);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InternalError;
    };
    CHECK(kind_of("{}") == ErrorKind::CorpusError);
    CHECK(kind_of(R"({"id":"x","question":"q","image_size":[0,100],)"
                  R"("truth":{"left":0,"right":1,"top":0,"bottom":1},"detections":[]})") ==
          ErrorKind::CorpusError); // zero width
    CHECK(kind_of(R"({"id":"x","question":"q","image_size":[100,100],)"
                  R"("truth":{"left":0.9,"right":0.1,"top":0,"bottom":1},"detections":[]})") ==
          ErrorKind::CorpusError); // inverted region
}

TEST_CASE("run_corpus orders results by challenge id and honors workers") {
    SceneSpec spec = profile_spec("netease");
    auto generated = generate_corpus(spec, 20, 7, onto, QuestionType::Direct);
    std::vector<Challenge> corpus;
    for (auto& g : generated) corpus.push_back(g.challenge);

    OracleBackend backend(onto);
    auto serial = run_corpus(corpus, RunConfig{}, backend, Context{}, 1);
    auto parallel = run_corpus(corpus, RunConfig{}, backend, Context{}, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].challenge_id == parallel[i].challenge_id);
        CHECK(serial[i].correct == parallel[i].correct);
        if (i) CHECK(serial[i - 1].challenge_id <= serial[i].challenge_id);
    }
}

TEST_CASE("report excludes wall-clock values and echoes the configuration") {
    Challenge ch = golden_challenge();
    OracleBackend backend(onto);
    auto results = run_corpus({ch}, RunConfig{}, backend, Context{}, 1);
    std::string report = render_report(results, {ch}, "backend=oracle delta=80 seed=42");
    CHECK(report.find("backend=oracle delta=80 seed=42") != std::string::npos);
    CHECK(report.find("letter-t-001") != std::string::npos);
    CHECK(report.find("latency") == std::string::npos);
    CHECK(report.find("\"(442.2, 267.8)\"") != std::string::npos);

    // Raw results keep the latencies for the report subcommand.
    std::string raw = serialize_results(results);
    CHECK(raw.find("latency_s") != std::string::npos);
    auto parsed = parse_results(raw);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].correct);
    CHECK(parsed[0].answer->x == doctest::Approx(442.2));
}

TEST_CASE("global config precedence and validation") {
    GlobalConfig cfg;
    cfg.apply("delta", "120");
    cfg.apply("backend", "oracle");
    cfg.apply("seed", "42");
    CHECK(cfg.delta == 120.0);
    CHECK(cfg.seed == 42);
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.echo().find("delta=120") != std::string::npos);

    CHECK_THROWS_AS(cfg.apply("nonsense", "1"), Error);
    GlobalConfig bad;
    bad.delta = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
    GlobalConfig bad2;
    bad2.backend = "gpt";
    CHECK_THROWS_AS(bad2.validate(), Error);
    GlobalConfig bad3;
    bad3.iou_threshold = 0.0;
    CHECK_THROWS_AS(bad3.validate(), Error);
}
