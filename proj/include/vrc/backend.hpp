#pragma once

#include <memory>
#include <optional>
#include <string>

#include "vrc/integrator.hpp"
#include "vrc/policymaker.hpp"
#include "vrc/prompt.hpp"
#include "vrc/query.hpp"

namespace vrc {

// One invocation per challenge attempt; the response is raw answer text (the
// pipeline extracts the coordinate). No reasoning trace is requested or
// parsed.
struct BackendRequest {
    const Prompt* prompt = nullptr;
    std::optional<std::string> image_ref;
    const CandidateSet* candidates = nullptr; // null under the no-perception ablation
    const ParsedQuery* query = nullptr;       // null unless the full pipeline ran
};

struct BackendResponse {
    std::string text;
    double first_attempt_latency_s = 0.0;
    double total_latency_s = 0.0;
    int attempts = 1;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string name() const = 0;
    virtual BackendResponse invoke(const BackendRequest& request) = 0;
};

// Deterministic backend implementing the explicit decision rules exactly:
// a pure function of (query, candidates), image-free. Requires the structured
// query; prompt-only requests are a contract violation (BackendContract).
class OracleBackend final : public Backend {
public:
    explicit OracleBackend(const Ontology& ontology) : ontology_(&ontology) {}

    std::string name() const override { return "oracle"; }
    BackendResponse invoke(const BackendRequest& request) override;

private:
    const Ontology* ontology_;
};

// Generic text-completion adapter: POSTs {"prompt", "image"?, "candidates"?}
// as JSON to host:port/path and reads the reply text (raw body, or the "text"
// field when the body is a JSON object). Bounded retries; per-call latency
// recorded; concurrent invocations capped by max_inflight.
struct RemoteConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string path = "/v1/complete";
    double timeout_s = 30.0;
    int retries = 2;
    int max_inflight = 4;
};

class RemoteBackend final : public Backend {
public:
    explicit RemoteBackend(RemoteConfig config);
    ~RemoteBackend() override;

    std::string name() const override { return "remote"; }
    BackendResponse invoke(const BackendRequest& request) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace vrc
