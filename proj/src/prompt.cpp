#include "vrc/prompt.hpp"

#include "vrc/builtin_data.hpp"
#include "text_util.hpp"

namespace vrc {

namespace {

std::string replace_all(std::string text, std::string_view key, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
    return text;
}

const char* relation_phrase(Relation r) {
    switch (r) {
    case Relation::LeftOf: return "left of";
    case Relation::RightOf: return "right of";
    case Relation::Above: return "above";
    case Relation::Below: return "below";
    }
    return "?";
}

} // namespace

const PromptLibrary& PromptLibrary::standard() {
    static const PromptLibrary instance{std::string(builtin::prompt_spatial()),
                                        std::string(builtin::prompt_direct()),
                                        std::string(builtin::prompt_comparative())};
    return instance;
}

PromptLibrary PromptLibrary::load_dir(const std::string& dir) {
    return PromptLibrary{textutil::read_file(dir + "/spatial.txt"),
                         textutil::read_file(dir + "/direct.txt"),
                         textutil::read_file(dir + "/comparative.txt")};
}

const std::string& PromptLibrary::template_for(ReasoningType mode) const {
    switch (mode) {
    case ReasoningType::Spatial: return spatial;
    case ReasoningType::Comparative: return comparative;
    case ReasoningType::Direct: return direct;
    }
    return direct;
}

std::string describe_record(const QueryRecord& record) {
    std::string out;
    auto add = [&](const std::string& word) {
        if (!out.empty()) out += ' ';
        out += word;
    };
    if (record.toward) add(*record.toward + "-facing");
    if (record.color) add(*record.color);
    if (record.shape) {
        if (record.shape->is_category) {
            add(record.shape->value);
        } else if (record.shape->value.size() == 1) {
            bool digit = std::isdigit(static_cast<unsigned char>(record.shape->value[0])) != 0;
            add(std::string(digit ? "number" : "letter") + " '" + record.shape->value + "'");
        } else {
            add(record.shape->value);
        }
    }
    if (out.empty()) out = "object";
    return out;
}

Prompt build_prompt(const ParsedQuery& query, const CandidateSet& candidates,
                    const PromptLibrary& library) {
    if (candidates.candidates.empty() && query.reasoning_type != ReasoningType::Spatial)
        fail(ErrorKind::EmptyScene, "no candidates to reason over");
    if (candidates.candidates.empty())
        fail(ErrorKind::EmptyScene, "no candidates and no references");

    Prompt prompt;
    prompt.reasoning_mode = query.reasoning_type;
    prompt.answer_schema = kAnswerSchema;
    prompt.coordinate_convention = kCoordinateConvention;
    prompt.serialized_candidates = serialize_candidates(candidates, /*include_bbox=*/false, 0);

    std::string body = library.template_for(query.reasoning_type);
    body = replace_all(std::move(body), "{question}", query.raw_text);
    body = replace_all(std::move(body), "{candidates}", prompt.serialized_candidates);

    if (query.reasoning_type == ReasoningType::Spatial) {
        body = replace_all(std::move(body), "{relation}", relation_phrase(*query.relation));
        auto ref = query.reference_index();
        body = replace_all(std::move(body), "{reference}",
                           ref ? "the " + describe_record(query.records[*ref]) : "the reference");
    } else if (query.reasoning_type == ReasoningType::Comparative) {
        body = replace_all(std::move(body), "{comparison}", to_string(*query.comparator));
    } else {
        auto target = query.target_index();
        std::string attrs = target ? describe_record(query.records[*target]) : "object";
        if (target && query.records[*target].share_with_reference) {
            auto ref = query.reference_index();
            attrs += std::string(" sharing ") + to_string(*query.records[*target].share_with_reference) +
                     " with the " + (ref ? describe_record(query.records[*ref]) : "reference");
        }
        body = replace_all(std::move(body), "{attributes}", attrs);
    }

    prompt.body = std::move(body);
    return prompt;
}

} // namespace vrc
