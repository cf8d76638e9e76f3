#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "vrc/backend.hpp"

using namespace vrc;
using nlohmann::json;

namespace {

struct TestServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    explicit TestServer(httplib::Server::Handler handler) {
        server.Post("/v1/complete", std::move(handler));
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~TestServer() {
        server.stop();
        thread.join();
    }
};

Prompt test_prompt() {
    Prompt p;
    p.body = "where is the cube? output exactly one coordinate in the form (x,y) in pixels";
    return p;
}

RemoteConfig config_for(const TestServer& server) {
    RemoteConfig cfg;
    cfg.host = "127.0.0.1";
    cfg.port = server.port;
    cfg.timeout_s = 5.0;
    cfg.retries = 1;
    return cfg;
}

} // namespace

TEST_CASE("remote adapter posts prompt and reads a raw text reply") {
    std::atomic<int> calls{0};
    TestServer server([&](const httplib::Request& req, httplib::Response& res) {
        ++calls;
        json body = json::parse(req.body);
        CHECK(body.contains("prompt"));
        CHECK(body["prompt"].get<std::string>().find("cube") != std::string::npos);
        res.set_content("The cube sits at (10, 20).", "text/plain");
    });

    RemoteBackend backend(config_for(server));
    Prompt p = test_prompt();
    BackendRequest req;
    req.prompt = &p;
    BackendResponse resp = backend.invoke(req);
    CHECK(resp.text == "The cube sits at (10, 20).");
    CHECK(resp.attempts == 1);
    CHECK(resp.total_latency_s >= 0.0);
    CHECK(calls == 1); // single pass, no hidden retries
    CHECK(parse_backend_answer(resp.text).point.x == 10.0);
}

TEST_CASE("json replies use the text field; candidates travel with the request") {
    TestServer server([&](const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body);
        REQUIRE(body.contains("candidates"));
        CHECK(body["candidates"].is_array());
        CHECK(body["candidates"][0]["Object"][0] == "cube");
        res.set_content(R"({"text": "(1.0, 2.0)"})", "application/json");
    });

    RemoteBackend backend(config_for(server));
    Prompt p = test_prompt();
    CandidateSet cs;
    Candidate c;
    c.labels.push_back(AttributeTag{AttributeClass::Shape, "cube"});
    c.center = Point{1, 2};
    cs.candidates.push_back(c);

    BackendRequest req;
    req.prompt = &p;
    req.candidates = &cs;
    req.image_ref = "scene.png";
    BackendResponse resp = backend.invoke(req);
    CHECK(resp.text == "(1.0, 2.0)");
}

TEST_CASE("bounded retries recover from transient failures") {
    std::atomic<int> calls{0};
    TestServer server([&](const httplib::Request&, httplib::Response& res) {
        if (++calls == 1) {
            res.status = 500;
            return;
        }
        res.set_content("(3, 4)", "text/plain");
    });

    RemoteConfig cfg = config_for(server);
    cfg.retries = 2;
    RemoteBackend backend(cfg);
    Prompt p = test_prompt();
    BackendRequest req;
    req.prompt = &p;
    BackendResponse resp = backend.invoke(req);
    CHECK(resp.text == "(3, 4)");
    CHECK(resp.attempts == 2);
    CHECK(calls == 2);
    CHECK(resp.first_attempt_latency_s <= resp.total_latency_s);
}

TEST_CASE("exhausted retries surface BackendUnavailable") {
    TestServer server([&](const httplib::Request&, httplib::Response& res) { res.status = 503; });
    RemoteConfig cfg = config_for(server);
    cfg.retries = 1;
    RemoteBackend backend(cfg);
    Prompt p = test_prompt();
    BackendRequest req;
    req.prompt = &p;
    try {
        backend.invoke(req);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BackendUnavailable);
    }
}

TEST_CASE("concurrent invocations respect the in-flight cap") {
    std::atomic<int> inflight{0};
    std::atomic<int> peak{0};
    TestServer server([&](const httplib::Request&, httplib::Response& res) {
        int now = ++inflight;
        int old = peak.load();
        while (now > old && !peak.compare_exchange_weak(old, now)) {}
        std::this_thread::sleep_for(std::chrono::milliseconds(30));
        --inflight;
        res.set_content("(0, 0)", "text/plain");
    });

    RemoteConfig cfg = config_for(server);
    cfg.max_inflight = 2;
    RemoteBackend backend(cfg);
    Prompt p = test_prompt();

    std::vector<std::thread> threads;
    for (int i = 0; i < 6; ++i)
        threads.emplace_back([&] {
            BackendRequest req;
            req.prompt = &p;
            CHECK(backend.invoke(req).text == "(0, 0)");
        });
    for (auto& t : threads) t.join();
    CHECK(peak.load() <= 2);
}

TEST_CASE("configuration is validated") {
    RemoteConfig bad;
    bad.retries = -1;
    CHECK_THROWS_AS(RemoteBackend{bad}, Error);
    RemoteConfig bad2;
    bad2.max_inflight = 0;
    CHECK_THROWS_AS(RemoteBackend{bad2}, Error);
}
