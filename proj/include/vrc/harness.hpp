#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vrc/backend.hpp"
#include "vrc/challenge.hpp"
#include "vrc/prompt.hpp"
#include "vrc/qie.hpp"
#include "vrc/rpie.hpp"

namespace vrc {

// Ablation variants: R1 sends question (+image) only; R2 appends the full
// unfiltered detector output to the prompt; R3 runs the whole pipeline.
enum class Variant { R1, R2, R3 };

const char* to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view s);

struct RunConfig {
    Variant variant = Variant::R3;
    std::string backend_name = "oracle";
    double delta = 80.0;
    double iou_threshold = kDefaultMergeIou;
    std::uint64_t seed = 0;
    bool include_image = false;
    bool adaptive_delta = false;
    double beta = 1.0;
};

struct StageTrace {
    std::string stage;
    std::string snapshot;
};

struct RunResult {
    std::string challenge_id;
    std::optional<Point> answer;
    std::optional<std::string> error; // "<Kind>: <message>" when a stage failed
    bool correct = false;
    double latency_s = 0.0;
    double backend_latency_s = 0.0;
    double backend_first_attempt_s = 0.0;
    std::vector<StageTrace> trace;

    const StageTrace* find_stage(std::string_view stage) const;
};

// Everything a run needs besides the challenge itself.
struct Context {
    const Ontology* ontology = &Ontology::standard();
    const Lexicon* lexicon = &Lexicon::standard();
    const PromptLibrary* prompts = &PromptLibrary::standard();
};

// Inclusive containment of the normalized answer in the truth region.
bool score(const Point& answer, const GroundTruthRegion& truth, double width, double height);

// Runs one challenge under the given variant. Stage errors are recorded in
// the result (counted as incorrect), never thrown. The per-stage trace
// snapshots are always captured.
RunResult run_pipeline(const Challenge& challenge, const RunConfig& cfg, Backend& backend,
                       const Context& ctx);

// Runs a corpus, optionally across workers; results come back ordered by
// challenge id.
std::vector<RunResult> run_corpus(const std::vector<Challenge>& corpus, const RunConfig& cfg,
                                  Backend& backend, const Context& ctx, int workers = 1);

struct SummaryRow {
    std::string group;
    std::size_t count = 0;
    std::size_t correct = 0;
    double accuracy_pct = 0.0;
    double latency_mean_s = 0.0;
    double latency_sd_s = 0.0; // sample standard deviation
};

// Per-group accuracy and latency statistics plus an "all" row; groups sorted
// by key. The group key function typically maps a result to its platform or
// reasoning type.
std::vector<SummaryRow> aggregate(const std::vector<RunResult>& results,
                                  const std::function<std::string(const RunResult&)>& group_key);

std::string render_summary_csv(const std::vector<SummaryRow>& rows, bool with_latency);
std::string render_summary_text(const std::vector<SummaryRow>& rows, bool with_latency);

// Deterministic bench report: configuration header, one CSV line per
// challenge (id, answer, correctness, error kind) and the accuracy summary.
// Wall-clock values are deliberately excluded; timing lives in the raw
// results (see serialize_results).
std::string render_report(const std::vector<RunResult>& results,
                          const std::vector<Challenge>& corpus, const std::string& config_echo);

// Raw per-run records (JSON Lines), including latencies and per-stage traces.
std::string serialize_results(const std::vector<RunResult>& results);
std::vector<RunResult> parse_results(const std::string& text);

} // namespace vrc
