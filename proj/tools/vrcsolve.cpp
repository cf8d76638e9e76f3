#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "vrc/config.hpp"
#include "vrc/scenegen.hpp"
#include "vrc/tsr.hpp"

namespace {

using namespace vrc;

std::vector<std::string> split_csv(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ConfigError, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorKind::ConfigError, "cannot write " + out_path);
    out << text;
}

void dump_traces(const std::vector<RunResult>& results) {
    for (const auto& r : results) {
        std::cerr << "--- trace " << r.challenge_id << "\n";
        for (const auto& t : r.trace) std::cerr << "[" << t.stage << "] " << t.snapshot << "\n";
        if (r.error) std::cerr << "[error] " << *r.error << "\n";
    }
}

void timing_to_stderr(const std::vector<RunResult>& results) {
    auto rows = aggregate(results, [](const RunResult&) { return std::string("all"); });
    for (const auto& row : rows) {
        if (row.group != "all") continue;
        std::cerr << "[timing] n=" << row.count << " latency mean=" << row.latency_mean_s
                  << "s sd=" << row.latency_sd_s << "s\n";
    }
}

// Flag values are staged so precedence stays flags > config file > defaults
// no matter where --config appears on the command line.
struct CommonOpts {
    GlobalConfig cfg;
    bool trace = false;

    std::string config_path;
    std::optional<double> delta, beta, iou, timeout;
    std::optional<std::string> backend, data_dir, remote_host, remote_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers, retries, max_inflight, remote_port;
    bool adaptive = false, include_image = false;

    void finalize() {
        if (!config_path.empty()) cfg = GlobalConfig::from_file(config_path);
        if (delta) cfg.delta = *delta;
        if (adaptive) cfg.adaptive_delta = true;
        if (beta) cfg.beta = *beta;
        if (iou) cfg.iou_threshold = *iou;
        if (backend) cfg.backend = *backend;
        if (seed) cfg.seed = *seed;
        if (workers) cfg.workers = *workers;
        if (data_dir) cfg.data_dir = *data_dir;
        if (timeout) cfg.timeout_s = *timeout;
        if (retries) cfg.retries = *retries;
        if (max_inflight) cfg.max_inflight = *max_inflight;
        if (remote_host) cfg.remote_host = *remote_host;
        if (remote_port) cfg.remote_port = *remote_port;
        if (remote_path) cfg.remote_path = *remote_path;
        if (include_image) cfg.include_image = true;
        cfg.validate();
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "key=value configuration file (flags override it)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--delta", opts.delta, "probe offset in pixels");
    cmd->add_flag("--adaptive-delta", opts.adaptive,
                  "scale the probe offset by the reference box extent");
    cmd->add_option("--beta", opts.beta, "adaptive probe scale factor");
    cmd->add_option("--iou", opts.iou, "co-location merge threshold");
    cmd->add_option("--backend", opts.backend, "oracle | remote");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--workers", opts.workers, "parallel challenge workers");
    cmd->add_option("--data-dir", opts.data_dir,
                    "load ontology/lexicon/prompts/tsr tables from this directory");
    cmd->add_option("--timeout", opts.timeout, "remote timeout seconds");
    cmd->add_option("--retries", opts.retries, "remote retry count");
    cmd->add_option("--max-inflight", opts.max_inflight, "remote in-flight request cap");
    cmd->add_option("--remote-host", opts.remote_host, "remote host");
    cmd->add_option("--remote-port", opts.remote_port, "remote port");
    cmd->add_option("--remote-path", opts.remote_path, "remote path");
    cmd->add_flag("--include-image", opts.include_image,
                  "attach the image reference to backend requests");
    cmd->add_flag("--trace", opts.trace, "stage traces to stderr");
}

int run_bench(CommonOpts& opts, Variant variant, const std::string& in,
              const std::string& out, const std::string& results_path) {
    opts.finalize();
    LoadedContext loaded = load_context(opts.cfg.data_dir);
    auto corpus = load_corpus(in, loaded.get_ontology());
    auto backend = make_backend(opts.cfg, loaded.get_ontology());

    auto results = run_corpus(corpus, opts.cfg.run_config(variant), *backend, loaded.context(),
                              opts.cfg.workers);
    std::string header = std::string("variant=") + to_string(variant) + " " + opts.cfg.echo() +
                         " corpus=" + in;
    write_output(render_report(results, corpus, header), out);
    if (!results_path.empty()) {
        std::ofstream raw(results_path, std::ios::binary);
        if (!raw) fail(ErrorKind::ConfigError, "cannot write " + results_path);
        raw << serialize_results(results);
    }
    timing_to_stderr(results);
    if (opts.trace) dump_traces(results);

    bool all_correct = std::all_of(results.begin(), results.end(),
                                   [](const RunResult& r) { return r.correct; });
    return all_correct ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"visual-reasoning captcha pipeline: solve, benchmark, defend"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one challenge and check it");
    CommonOpts solve_opts;
    std::string solve_in;
    int solve_index = 0;
    std::string solve_variant = "r3";
    add_common(solve, solve_opts);
    solve->add_option("--challenge", solve_in, "challenge file (JSON lines)")->required();
    solve->add_option("--index", solve_index, "challenge index within the file");
    solve->add_option("--variant", solve_variant, "r1 | r2 | r3");

    // bench / ablate
    auto* bench = app.add_subcommand("bench", "run a corpus and report accuracy");
    CommonOpts bench_opts;
    std::string bench_in, bench_out, bench_results, bench_variant = "r3";
    add_common(bench, bench_opts);
    bench->add_option("--variant", bench_variant, "r1 | r2 | r3");
    bench->add_option("--in", bench_in, "challenge corpus")->required();
    bench->add_option("--out", bench_out, "report path (default: stdout)");
    bench->add_option("--results", bench_results, "raw per-run results (JSON lines)");

    auto* ablate = app.add_subcommand("ablate", "run r1/r2/r3 side by side");
    CommonOpts ablate_opts;
    std::string ablate_in, ablate_out;
    add_common(ablate, ablate_opts);
    ablate->add_option("--in", ablate_in, "challenge corpus")->required();
    ablate->add_option("--out", ablate_out, "report path (default: stdout)");

    // tsr gen
    auto* tsr_cmd = app.add_subcommand("tsr", "template-space randomization");
    auto* tsr_gen = tsr_cmd->add_subcommand("gen", "generate semantics-preserving variants");
    CommonOpts tsr_opts;
    std::string tsr_in, tsr_out, tsr_axes = "s,r,i", tsr_skips;
    add_common(tsr_gen, tsr_opts);
    tsr_gen->add_option("--axes", tsr_axes, "enabled axes, e.g. s,r,i");
    tsr_gen->add_option("--in", tsr_in, "source corpus")->required();
    tsr_gen->add_option("--out", tsr_out, "variant corpus (default: stdout)");
    tsr_gen->add_option("--skips", tsr_skips, "skip report path (also logged to stderr)");

    // scenegen
    auto* scen = app.add_subcommand("scenegen", "generate a synthetic challenge corpus");
    CommonOpts scen_opts;
    std::string scen_profile = "vtt", scen_out, scen_noise, scen_qtype;
    int scen_count = 100;
    add_common(scen, scen_opts);
    scen->add_option("--profile", scen_profile, "vtt|geetest|netease|dingxiang|shumei|xiaodun");
    scen->add_option("--count", scen_count, "number of challenges");
    scen->add_option("--qtype", scen_qtype, "force question type: direct|spatial|comparative");
    scen->add_option("--noise", scen_noise, "drop=P,corrupt=Q");
    scen->add_option("--out", scen_out, "corpus path (default: stdout)");

    // report
    auto* report = app.add_subcommand("report", "summarize raw results");
    std::string report_results, report_corpus, report_group = "platform";
    report->add_option("--results", report_results, "raw results (JSON lines)")->required();
    report->add_option("--corpus", report_corpus, "corpus for grouping metadata");
    report->add_option("--group", report_group, "platform | none");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*solve) {
            solve_opts.finalize();
            auto variant = variant_from_string(solve_variant);
            if (!variant) fail(ErrorKind::ConfigError, "unknown variant " + solve_variant);
            LoadedContext loaded = load_context(solve_opts.cfg.data_dir);
            auto corpus = load_corpus(solve_in, loaded.get_ontology());
            if (solve_index < 0 || std::size_t(solve_index) >= corpus.size())
                fail(ErrorKind::ConfigError, "challenge index out of range");
            auto backend = make_backend(solve_opts.cfg, loaded.get_ontology());
            RunResult result = run_pipeline(corpus[solve_index], solve_opts.cfg.run_config(*variant),
                                            *backend, loaded.context());
            if (solve_opts.trace) dump_traces({result});
            if (result.answer)
                std::cout << format_answer(*result.answer) << "\n"
                          << (result.correct ? "correct" : "incorrect") << "\n";
            else
                std::cout << "error: " << *result.error << "\n";
            return result.correct ? 0 : 1;
        }

        if (*bench) {
            auto variant = variant_from_string(bench_variant);
            if (!variant) fail(ErrorKind::ConfigError, "unknown variant " + bench_variant);
            return run_bench(bench_opts, *variant, bench_in, bench_out, bench_results);
        }

        if (*ablate) {
            ablate_opts.finalize();
            LoadedContext loaded = load_context(ablate_opts.cfg.data_dir);
            auto corpus = load_corpus(ablate_in, loaded.get_ontology());
            auto backend = make_backend(ablate_opts.cfg, loaded.get_ontology());
            std::ostringstream out;
            bool any_incorrect = false;
            for (Variant v : {Variant::R1, Variant::R2, Variant::R3}) {
                auto results = run_corpus(corpus, ablate_opts.cfg.run_config(v), *backend,
                                          loaded.context(), ablate_opts.cfg.workers);
                auto rows = aggregate(results, [](const RunResult&) { return std::string("all"); });
                for (const auto& row : rows)
                    if (row.group == "all") {
                        out << to_string(v) << "," << row.count << "," << row.correct << ","
                            << row.accuracy_pct << "\n";
                        if (row.correct != row.count) any_incorrect = true;
                    }
                if (ablate_opts.trace) dump_traces(results);
            }
            write_output("variant,count,correct,accuracy_pct\n" + out.str(), ablate_out);
            return any_incorrect ? 1 : 0;
        }

        if (*tsr_gen) {
            tsr_opts.finalize();
            LoadedContext loaded = load_context(tsr_opts.cfg.data_dir);
            auto corpus = load_corpus(tsr_in, loaded.get_ontology());
            Qie qie(loaded.get_ontology(), loaded.get_lexicon());

            bool want_s = tsr_axes.find('s') != std::string::npos;
            bool want_r = tsr_axes.find('r') != std::string::npos;
            bool want_i = tsr_axes.find('i') != std::string::npos;

            std::ostringstream out, skips;
            for (const auto& ch : corpus) {
                auto gen = generate_variants(ch, qie, loaded.get_tsr(), tsr_opts.cfg.seed);
                for (const auto& v : gen.variants) {
                    if ((v.axes.s && !want_s) || (v.axes.r && !want_r) || (v.axes.i && !want_i))
                        continue;
                    out << serialize_challenge(variant_challenge(ch, v)) << "\n";
                }
                for (const auto& s : gen.skips) {
                    if ((s.axes.s && !want_s) || (s.axes.r && !want_r) || (s.axes.i && !want_i))
                        continue;
                    skips << s.source_id << "," << s.axes.str() << "," << s.reason << "\n";
                }
            }
            write_output(out.str(), tsr_out);
            if (!skips.str().empty()) std::cerr << "[skips]\n" << skips.str();
            if (!tsr_skips.empty()) {
                std::ofstream f(tsr_skips, std::ios::binary);
                f << skips.str();
            }
            return 0;
        }

        if (*scen) {
            scen_opts.finalize();
            LoadedContext loaded = load_context(scen_opts.cfg.data_dir);
            SceneSpec spec = profile_spec(scen_profile);
            spec.seed = scen_opts.cfg.seed;

            std::optional<QuestionType> qtype;
            if (!scen_qtype.empty()) {
                if (scen_qtype == "direct") qtype = QuestionType::Direct;
                else if (scen_qtype == "spatial") qtype = QuestionType::Spatial;
                else if (scen_qtype == "comparative") qtype = QuestionType::Comparative;
                else fail(ErrorKind::ConfigError, "unknown qtype " + scen_qtype);
            }

            std::optional<NoiseSpec> noise;
            if (!scen_noise.empty()) {
                NoiseSpec n;
                n.seed = scen_opts.cfg.seed;
                for (const auto& part : split_csv(scen_noise, ',')) {
                    auto kv = split_csv(part, '=');
                    if (kv.size() != 2) fail(ErrorKind::ConfigError, "bad --noise: " + scen_noise);
                    if (kv[0] == "drop") n.drop_rate = std::stod(kv[1]);
                    else if (kv[0] == "corrupt") n.corrupt_rate = std::stod(kv[1]);
                    else fail(ErrorKind::ConfigError, "bad --noise key: " + kv[0]);
                }
                noise = n;
            }

            auto generated = generate_corpus(spec, scen_count, scen_opts.cfg.seed,
                                             loaded.get_ontology(), qtype,
                                             noise ? &*noise : nullptr, scen_profile);
            std::ostringstream out;
            for (auto& g : generated) {
                g.challenge.platform = scen_profile;
                out << serialize_challenge(g.challenge) << "\n";
            }
            write_output(out.str(), scen_out);
            return 0;
        }

        if (*report) {
            auto results = parse_results(slurp(report_results));
            if (results.empty()) fail(ErrorKind::CorpusError, "no results in " + report_results);
            std::map<std::string, std::string> platform_by_id;
            if (!report_corpus.empty()) {
                for (const auto& ch : load_corpus(report_corpus, Ontology::standard()))
                    platform_by_id[ch.id] = ch.platform.value_or("-");
            }
            auto key = [&](const RunResult& r) {
                if (report_group != "platform") return std::string("all");
                auto it = platform_by_id.find(r.challenge_id);
                return it != platform_by_id.end() ? it->second : std::string("-");
            };
            auto rows = aggregate(results, key);
            std::cout << render_summary_csv(rows, true) << "\n"
                      << render_summary_text(rows, true);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
