#include "vrc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace vrc {

using nlohmann::json;

const char* to_string(Variant v) {
    switch (v) {
    case Variant::R1: return "r1";
    case Variant::R2: return "r2";
    case Variant::R3: return "r3";
    }
    return "?";
}

std::optional<Variant> variant_from_string(std::string_view s) {
    if (s == "r1" || s == "R1") return Variant::R1;
    if (s == "r2" || s == "R2") return Variant::R2;
    if (s == "r3" || s == "R3") return Variant::R3;
    return std::nullopt;
}

const StageTrace* RunResult::find_stage(std::string_view stage) const {
    for (const auto& t : trace)
        if (t.stage == stage) return &t;
    return nullptr;
}

bool score(const Point& answer, const GroundTruthRegion& truth, double width, double height) {
    if (!(width > 0.0) || !(height > 0.0)) fail(ErrorKind::ConfigError, "image dimensions must be positive");
    double xn = answer.x / width;
    double yn = answer.y / height;
    return truth.left <= xn && xn <= truth.right && truth.top <= yn && yn <= truth.bottom;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t count_detection_records(const std::string& prompt_body) {
    std::size_t count = 0, pos = 0;
    while ((pos = prompt_body.find("\"Object\"", pos)) != std::string::npos) {
        ++count;
        pos += 8;
    }
    return count;
}

// Minimal prompts for the reduced variants; the full pipeline's templates
// stay reserved for R3.
Prompt build_r1_prompt(const Challenge& challenge) {
    Prompt prompt;
    prompt.reasoning_mode = ReasoningType::Direct;
    prompt.answer_schema = kAnswerSchema;
    prompt.coordinate_convention = kCoordinateConvention;
    prompt.body = "You are solving a visual reasoning captcha. Look at the image and answer "
                  "the question.\n\nQuestion: \"" +
                  challenge.question +
                  "\"\n\nOutput exactly one coordinate in the form (x,y) in pixels. "
                  "Coordinates are integer pixels with the origin at the top-left corner; "
                  "x increases rightward, y increases downward.\n";
    return prompt;
}

Prompt build_r2_prompt(const Challenge& challenge) {
    Prompt prompt = build_r1_prompt(challenge);
    prompt.serialized_candidates = serialize_detections(challenge.detections, false, 0);
    prompt.body += "\nDetected objects (unfiltered):\n" + prompt.serialized_candidates + "\n";
    return prompt;
}

} // namespace

RunResult run_pipeline(const Challenge& challenge, const RunConfig& cfg, Backend& backend,
                       const Context& ctx) {
    RunResult result;
    result.challenge_id = challenge.id;
    auto started = std::chrono::steady_clock::now();

    auto record_error = [&](const Error& e) {
        result.error = e.what();
        result.correct = false;
        result.latency_s = seconds_since(started);
    };

    try {
        Prompt prompt;
        std::optional<ParsedQuery> query;
        CandidateSet candidates;
        bool have_candidates = false;

        if (cfg.variant == Variant::R3) {
            DetectionSet merged = merge_colocated(challenge.detections, cfg.iou_threshold);
            result.trace.push_back({"perception", serialize_detections(merged)});

            Qie qie(*ctx.ontology, *ctx.lexicon);
            query = qie.parse_question(challenge.question);
            {
                json meta = json::object();
                meta["records"] = json::parse(serialize_query_records(*query));
                meta["reasoning_type"] = to_string(query->reasoning_type);
                if (query->relation) meta["relation"] = to_string(*query->relation);
                if (query->comparator) meta["comparator"] = to_string(*query->comparator);
                result.trace.push_back({"qie", meta.dump()});
            }

            candidates = match(merged, *query, *ctx.ontology);
            have_candidates = true;
            result.trace.push_back({"integrator", serialize_candidates(candidates, true)});

            if (query->reasoning_type == ReasoningType::Spatial) {
                ProbeConfig probe{cfg.delta, cfg.adaptive_delta, cfg.beta};
                candidates = infer_relative(*query, candidates, merged, probe);
                result.trace.push_back({"rpie", serialize_candidates(candidates, false)});
            }

            prompt = build_prompt(*query, candidates, *ctx.prompts);
        } else if (cfg.variant == Variant::R2) {
            prompt = build_r2_prompt(challenge);
        } else {
            prompt = build_r1_prompt(challenge);
        }
        result.trace.push_back({"prompt", prompt.body});

        // Structural ablation contract, checked on every run.
        std::size_t records_in_prompt = count_detection_records(prompt.body);
        if (cfg.variant == Variant::R1 && records_in_prompt != 0)
            fail(ErrorKind::InternalError, "R1 prompt carries detection records");
        if (cfg.variant == Variant::R2 && records_in_prompt != challenge.detections.detections.size())
            fail(ErrorKind::InternalError, "R2 prompt does not carry the full detection list");

        BackendRequest request;
        request.prompt = &prompt;
        if (cfg.include_image || cfg.variant != Variant::R3) request.image_ref = challenge.image_ref;
        if (have_candidates) request.candidates = &candidates;
        if (query) request.query = &*query;

        BackendResponse response = backend.invoke(request);
        result.backend_latency_s = response.total_latency_s;
        result.backend_first_attempt_s = response.first_attempt_latency_s;
        result.trace.push_back({"backend", response.text});

        Answer answer = parse_backend_answer(response.text);
        result.answer = answer.point;
        result.trace.push_back({"answer", format_answer(answer.point)});

        result.correct = score(answer.point, challenge.truth, challenge.image_width,
                               challenge.image_height);
        result.trace.push_back({"score", result.correct ? "true" : "false"});
        result.latency_s = seconds_since(started);
    } catch (const Error& e) {
        record_error(e);
    }
    return result;
}

std::vector<RunResult> run_corpus(const std::vector<Challenge>& corpus, const RunConfig& cfg,
                                  Backend& backend, const Context& ctx, int workers) {
    std::vector<RunResult> results(corpus.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i)
            results[i] = run_pipeline(corpus[i], cfg, backend, ctx);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= corpus.size()) return;
                results[i] = run_pipeline(corpus[i], cfg, backend, ctx);
            }
        };
        std::vector<std::thread> pool;
        int n = std::min<int>(workers, static_cast<int>(corpus.size()));
        pool.reserve(n);
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(results.begin(), results.end(),
              [](const RunResult& a, const RunResult& b) { return a.challenge_id < b.challenge_id; });
    return results;
}

std::vector<SummaryRow> aggregate(const std::vector<RunResult>& results,
                                  const std::function<std::string(const RunResult&)>& group_key) {
    if (results.empty()) fail(ErrorKind::InternalError, "nothing to aggregate");
    std::map<std::string, std::vector<const RunResult*>> groups;
    for (const auto& r : results) groups[group_key(r)].push_back(&r);
    groups["all"] = {};
    for (const auto& r : results) groups["all"].push_back(&r);

    std::vector<SummaryRow> rows;
    for (const auto& [key, members] : groups) {
        SummaryRow row;
        row.group = key;
        row.count = members.size();
        double sum = 0.0;
        for (const RunResult* r : members) {
            if (r->correct) ++row.correct;
            sum += r->latency_s;
        }
        row.accuracy_pct = 100.0 * static_cast<double>(row.correct) / static_cast<double>(row.count);
        row.latency_mean_s = sum / static_cast<double>(row.count);
        if (members.size() > 1) {
            double ss = 0.0;
            for (const RunResult* r : members) {
                double d = r->latency_s - row.latency_mean_s;
                ss += d * d;
            }
            row.latency_sd_s = std::sqrt(ss / static_cast<double>(members.size() - 1));
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

std::string render_summary_csv(const std::vector<SummaryRow>& rows, bool with_latency) {
    std::ostringstream out;
    out << "group,count,correct,accuracy_pct";
    if (with_latency) out << ",latency_mean_s,latency_sd_s";
    out << '\n';
    for (const auto& r : rows) {
        out << r.group << ',' << r.count << ',' << r.correct << ',' << fmt(r.accuracy_pct, 2);
        if (with_latency) out << ',' << fmt(r.latency_mean_s, 4) << ',' << fmt(r.latency_sd_s, 4);
        out << '\n';
    }
    return out.str();
}

std::string render_summary_text(const std::vector<SummaryRow>& rows, bool with_latency) {
    std::size_t group_w = 5;
    for (const auto& r : rows) group_w = std::max(group_w, r.group.size());
    std::ostringstream out;
    out << std::left;
    out.width(group_w);
    out << "group";
    out << "  count  correct  accuracy%";
    if (with_latency) out << "  latency(s) mean+/-sd";
    out << '\n';
    for (const auto& r : rows) {
        out.width(group_w);
        out << r.group;
        std::string count = std::to_string(r.count);
        std::string correct = std::to_string(r.correct);
        out << "  " << count << std::string(count.size() < 5 ? 5 - count.size() : 0, ' ')
            << "  " << correct << std::string(correct.size() < 7 ? 7 - correct.size() : 0, ' ')
            << "  " << fmt(r.accuracy_pct, 2);
        if (with_latency)
            out << "  " << fmt(r.latency_mean_s, 4) << " +/- " << fmt(r.latency_sd_s, 4);
        out << '\n';
    }
    return out.str();
}

std::string render_report(const std::vector<RunResult>& results,
                          const std::vector<Challenge>& corpus, const std::string& config_echo) {
    std::map<std::string, const Challenge*> by_id;
    for (const auto& ch : corpus) by_id[ch.id] = &ch;

    std::ostringstream out;
    out << "# bench report\n";
    out << "# " << config_echo << '\n';
    out << "id,platform,answer,correct,error\n";
    for (const auto& r : results) {
        auto it = by_id.find(r.challenge_id);
        const char* platform = "-";
        if (it != by_id.end() && it->second->platform) platform = it->second->platform->c_str();
        out << r.challenge_id << ',' << platform << ',';
        if (r.answer)
            out << '"' << format_answer(*r.answer) << '"';
        else
            out << "-";
        out << ',' << (r.correct ? "true" : "false") << ',';
        if (r.error) {
            std::string kind = *r.error;
            auto colon = kind.find(':');
            if (colon != std::string::npos) kind.resize(colon);
            out << kind;
        } else {
            out << "-";
        }
        out << '\n';
    }

    auto rows = aggregate(results, [&](const RunResult& r) {
        auto it = by_id.find(r.challenge_id);
        return it != by_id.end() && it->second->platform ? *it->second->platform
                                                         : std::string("-");
    });
    out << "# summary (csv)\n" << render_summary_csv(rows, false);
    out << "# summary (text)\n" << render_summary_text(rows, false);
    return out.str();
}

std::string serialize_results(const std::vector<RunResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        json doc = json::object();
        doc["id"] = r.challenge_id;
        if (r.answer) doc["answer"] = json::array({r.answer->x, r.answer->y});
        if (r.error) doc["error"] = *r.error;
        doc["correct"] = r.correct;
        doc["latency_s"] = r.latency_s;
        doc["backend_latency_s"] = r.backend_latency_s;
        doc["backend_first_attempt_s"] = r.backend_first_attempt_s;
        json trace = json::array();
        for (const auto& t : r.trace)
            trace.push_back(json::object({{"stage", t.stage}, {"snapshot", t.snapshot}}));
        doc["trace"] = trace;
        out << doc.dump() << '\n';
    }
    return out.str();
}

std::vector<RunResult> parse_results(const std::string& text) {
    std::vector<RunResult> results;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded()) fail(ErrorKind::CorpusError, "bad results line");
        RunResult r;
        r.challenge_id = doc.at("id").get<std::string>();
        if (doc.contains("answer"))
            r.answer = Point{doc["answer"][0].get<double>(), doc["answer"][1].get<double>()};
        if (doc.contains("error")) r.error = doc["error"].get<std::string>();
        r.correct = doc.at("correct").get<bool>();
        r.latency_s = doc.value("latency_s", 0.0);
        r.backend_latency_s = doc.value("backend_latency_s", 0.0);
        r.backend_first_attempt_s = doc.value("backend_first_attempt_s", 0.0);
        if (doc.contains("trace"))
            for (const auto& t : doc["trace"])
                r.trace.push_back({t.at("stage").get<std::string>(),
                                   t.at("snapshot").get<std::string>()});
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace vrc
