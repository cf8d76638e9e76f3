#include "vrc/backend.hpp"

#include <chrono>
#include <semaphore>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace vrc {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

BackendResponse OracleBackend::invoke(const BackendRequest& request) {
    auto start = std::chrono::steady_clock::now();
    if (!request.query || !request.candidates)
        fail(ErrorKind::BackendContract,
             "oracle backend requires a parsed query and a candidate set");

    Answer answer;
    switch (request.query->reasoning_type) {
    case ReasoningType::Direct:
        answer = resolve_direct(*request.query, *request.candidates, *ontology_);
        break;
    case ReasoningType::Spatial:
        answer = resolve_spatial(*request.query, *request.candidates, *ontology_);
        break;
    case ReasoningType::Comparative:
        answer = resolve_comparative(*request.query, *request.candidates, *ontology_);
        break;
    }

    BackendResponse resp;
    resp.text = format_answer(answer.point);
    resp.total_latency_s = seconds_since(start);
    resp.first_attempt_latency_s = resp.total_latency_s;
    return resp;
}

struct RemoteBackend::Impl {
    RemoteConfig config;
    std::counting_semaphore<256> inflight;

    explicit Impl(RemoteConfig cfg)
        : config(std::move(cfg)), inflight(std::max(1, config.max_inflight)) {}
};

RemoteBackend::RemoteBackend(RemoteConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
    if (impl_->config.max_inflight < 1 || impl_->config.max_inflight > 256)
        fail(ErrorKind::ConfigError, "max_inflight must be in [1,256]");
    if (impl_->config.retries < 0) fail(ErrorKind::ConfigError, "retries must be >= 0");
    if (!(impl_->config.timeout_s > 0)) fail(ErrorKind::ConfigError, "timeout must be positive");
}

RemoteBackend::~RemoteBackend() = default;

BackendResponse RemoteBackend::invoke(const BackendRequest& request) {
    if (!request.prompt) fail(ErrorKind::BackendContract, "remote backend requires a prompt");
    const RemoteConfig& cfg = impl_->config;

    json payload = json::object();
    payload["prompt"] = request.prompt->body;
    if (request.image_ref) payload["image"] = *request.image_ref;
    if (request.candidates)
        payload["candidates"] = json::parse(serialize_candidates(*request.candidates, false));
    const std::string body = payload.dump();

    impl_->inflight.acquire();
    struct Release {
        std::counting_semaphore<256>* sem;
        ~Release() { sem->release(); }
    } release{&impl_->inflight};

    BackendResponse resp;
    auto overall = std::chrono::steady_clock::now();
    std::string last_error;
    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
        auto start = std::chrono::steady_clock::now();
        httplib::Client client(cfg.host, cfg.port);
        client.set_connection_timeout(std::chrono::duration<double>(cfg.timeout_s));
        client.set_read_timeout(std::chrono::duration<double>(cfg.timeout_s));
        auto res = client.Post(cfg.path, body, "application/json");
        double latency = seconds_since(start);
        if (attempt == 0) resp.first_attempt_latency_s = latency;
        resp.attempts = attempt + 1;

        if (res && res->status == 200) {
            std::string text = res->body;
            json parsed = json::parse(text, nullptr, false);
            if (parsed.is_object() && parsed.contains("text") && parsed["text"].is_string())
                text = parsed["text"].get<std::string>();
            resp.text = std::move(text);
            resp.total_latency_s = seconds_since(overall);
            return resp;
        }
        last_error = res ? "status " + std::to_string(res->status)
                         : "transport error " + httplib::to_string(res.error());
        if (attempt < cfg.retries)
            std::this_thread::sleep_for(std::chrono::milliseconds(50 * (attempt + 1)));
    }
    resp.total_latency_s = seconds_since(overall);
    fail(ErrorKind::BackendUnavailable,
         cfg.host + ":" + std::to_string(cfg.port) + " after " +
             std::to_string(cfg.retries + 1) + " attempts (" + last_error + ")");
}

} // namespace vrc
