#include "vrc/config.hpp"

#include <sstream>

#include "text_util.hpp"

namespace vrc {

namespace tu = textutil;

GlobalConfig GlobalConfig::from_file(const std::string& path) {
    GlobalConfig cfg;
    for (auto& [k, v] : tu::parse_kv(tu::read_file(path), path)) cfg.apply(k, v);
    return cfg;
}

void GlobalConfig::apply(const std::string& key, const std::string& value) {
    try {
        if (key == "delta") delta = std::stod(value);
        else if (key == "adaptive_delta") adaptive_delta = value == "true" || value == "1";
        else if (key == "beta") beta = std::stod(value);
        else if (key == "iou_threshold") iou_threshold = std::stod(value);
        else if (key == "backend") backend = value;
        else if (key == "timeout_s") timeout_s = std::stod(value);
        else if (key == "retries") retries = std::stoi(value);
        else if (key == "max_inflight") max_inflight = std::stoi(value);
        else if (key == "remote_host") remote_host = value;
        else if (key == "remote_port") remote_port = std::stoi(value);
        else if (key == "remote_path") remote_path = value;
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "workers") workers = std::stoi(value);
        else if (key == "data_dir") data_dir = value;
        else if (key == "include_image") include_image = value == "true" || value == "1";
        else fail(ErrorKind::ConfigError, "unknown configuration key '" + key + "'");
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::ConfigError, "bad value for '" + key + "': " + value);
    } catch (const std::out_of_range&) {
        fail(ErrorKind::ConfigError, "value out of range for '" + key + "': " + value);
    }
}

void GlobalConfig::validate() const {
    if (!(delta > 0.0)) fail(ErrorKind::ConfigError, "delta must be positive");
    if (!(beta > 0.0)) fail(ErrorKind::ConfigError, "beta must be positive");
    if (!(iou_threshold > 0.0) || iou_threshold > 1.0)
        fail(ErrorKind::ConfigError, "iou_threshold must be in (0,1]");
    if (backend != "oracle" && backend != "remote")
        fail(ErrorKind::ConfigError, "backend must be 'oracle' or 'remote'");
    if (!(timeout_s > 0.0)) fail(ErrorKind::ConfigError, "timeout_s must be positive");
    if (retries < 0) fail(ErrorKind::ConfigError, "retries must be >= 0");
    if (max_inflight < 1) fail(ErrorKind::ConfigError, "max_inflight must be >= 1");
    if (workers < 1) fail(ErrorKind::ConfigError, "workers must be >= 1");
    if (remote_port < 1 || remote_port > 65535) fail(ErrorKind::ConfigError, "remote_port out of range");
}

std::string GlobalConfig::echo() const {
    std::ostringstream out;
    out << "backend=" << backend << " delta=" << delta
        << " adaptive_delta=" << (adaptive_delta ? "true" : "false") << " beta=" << beta
        << " iou_threshold=" << iou_threshold << " seed=" << seed << " workers=" << workers
        << " include_image=" << (include_image ? "true" : "false");
    if (backend == "remote")
        out << " remote=" << remote_host << ':' << remote_port << remote_path
            << " timeout_s=" << timeout_s << " retries=" << retries
            << " max_inflight=" << max_inflight;
    if (!data_dir.empty()) out << " data_dir=" << data_dir;
    return out.str();
}

RunConfig GlobalConfig::run_config(Variant variant) const {
    RunConfig rc;
    rc.variant = variant;
    rc.backend_name = backend;
    rc.delta = delta;
    rc.iou_threshold = iou_threshold;
    rc.seed = seed;
    rc.include_image = include_image;
    rc.adaptive_delta = adaptive_delta;
    rc.beta = beta;
    return rc;
}

Context LoadedContext::context() const {
    Context ctx;
    if (ontology) ctx.ontology = &*ontology;
    if (lexicon) ctx.lexicon = &*lexicon;
    if (prompts) ctx.prompts = &*prompts;
    return ctx;
}

LoadedContext load_context(const std::string& data_dir) {
    LoadedContext loaded;
    if (data_dir.empty()) return loaded;
    loaded.ontology = Ontology::load_dir(data_dir + "/ontology");
    loaded.lexicon = Lexicon::load_dir(data_dir + "/lexicon");
    loaded.prompts = PromptLibrary::load_dir(data_dir + "/prompts");
    loaded.tsr = TsrTables::load_dir(data_dir + "/tsr");
    return loaded;
}

std::unique_ptr<Backend> make_backend(const GlobalConfig& cfg, const Ontology& ontology) {
    if (cfg.backend == "oracle") return std::make_unique<OracleBackend>(ontology);
    if (cfg.backend == "remote") {
        RemoteConfig rc;
        rc.host = cfg.remote_host;
        rc.port = cfg.remote_port;
        rc.path = cfg.remote_path;
        rc.timeout_s = cfg.timeout_s;
        rc.retries = cfg.retries;
        rc.max_inflight = cfg.max_inflight;
        return std::make_unique<RemoteBackend>(rc);
    }
    fail(ErrorKind::ConfigError, "unknown backend '" + cfg.backend + "'");
}

} // namespace vrc
