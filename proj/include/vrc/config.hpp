#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vrc/harness.hpp"
#include "vrc/tsr.hpp"

namespace vrc {

// Shared run configuration. Precedence: flags > config file > defaults; the
// effective configuration is echoed into every report header.
struct GlobalConfig {
    double delta = 80.0;
    bool adaptive_delta = false;
    double beta = 1.0;
    double iou_threshold = kDefaultMergeIou;
    std::string backend = "oracle";
    double timeout_s = 30.0;
    int retries = 2;
    int max_inflight = 4;
    std::string remote_host = "127.0.0.1";
    int remote_port = 8080;
    std::string remote_path = "/v1/complete";
    std::uint64_t seed = 0;
    int workers = 1;
    std::string data_dir; // empty: built-in tables
    bool include_image = false;

    static GlobalConfig from_file(const std::string& path);
    void apply(const std::string& key, const std::string& value);
    void validate() const;
    std::string echo() const;

    RunConfig run_config(Variant variant) const;
};

// Owns data-dir overrides; context() yields the pointers a run needs.
struct LoadedContext {
    std::optional<Ontology> ontology;
    std::optional<Lexicon> lexicon;
    std::optional<PromptLibrary> prompts;
    std::optional<TsrTables> tsr;

    Context context() const;
    const Ontology& get_ontology() const { return ontology ? *ontology : Ontology::standard(); }
    const Lexicon& get_lexicon() const { return lexicon ? *lexicon : Lexicon::standard(); }
    const TsrTables& get_tsr() const { return tsr ? *tsr : TsrTables::standard(); }
};

// Loads ontology/, lexicon/, prompts/, tsr/ from a data directory; an empty
// path keeps the built-ins.
LoadedContext load_context(const std::string& data_dir);

std::unique_ptr<Backend> make_backend(const GlobalConfig& cfg, const Ontology& ontology);

} // namespace vrc
