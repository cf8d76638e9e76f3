#include "vrc/challenge.hpp"

#include <fstream>

#include "json.hpp"

namespace vrc {

using nlohmann::json;

Challenge parse_challenge(std::string_view line, const Ontology& ontology) {
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        fail(ErrorKind::CorpusError, "challenge line is not a JSON object");
    for (const char* key : {"id", "question", "image_size", "truth", "detections"})
        if (!doc.contains(key))
            fail(ErrorKind::CorpusError, std::string("challenge missing '") + key + "'");

    Challenge ch;
    ch.id = doc.at("id").get<std::string>();
    ch.question = doc.at("question").get<std::string>();

    const json& dims = doc.at("image_size");
    if (!dims.is_array() || dims.size() != 2)
        fail(ErrorKind::CorpusError, "image_size must be a 2-array");
    ch.image_width = dims[0].get<double>();
    ch.image_height = dims[1].get<double>();
    if (!(ch.image_width > 0.0) || !(ch.image_height > 0.0))
        fail(ErrorKind::CorpusError, "image dimensions must be positive");

    const json& truth = doc.at("truth");
    ch.truth = GroundTruthRegion{truth.at("left").get<double>(), truth.at("right").get<double>(),
                                 truth.at("top").get<double>(), truth.at("bottom").get<double>()};
    if (!ch.truth.valid()) fail(ErrorKind::CorpusError, "truth region out of order or range");

    ch.detections = parse_detections(doc.at("detections").dump(), ontology);
    ch.detections.image_width = ch.image_width;
    ch.detections.image_height = ch.image_height;

    if (doc.contains("platform")) ch.platform = doc.at("platform").get<std::string>();
    if (doc.contains("image")) ch.image_ref = doc.at("image").get<std::string>();
    if (doc.contains("axes")) ch.axes = doc.at("axes").get<std::string>();
    if (doc.contains("source")) ch.source_id = doc.at("source").get<std::string>();
    return ch;
}

std::string serialize_challenge(const Challenge& challenge) {
    json doc = json::object();
    doc["id"] = challenge.id;
    if (challenge.platform) doc["platform"] = *challenge.platform;
    doc["question"] = challenge.question;
    doc["image_size"] = json::array({challenge.image_width, challenge.image_height});
    doc["truth"] = json::object({{"left", challenge.truth.left},
                                 {"right", challenge.truth.right},
                                 {"top", challenge.truth.top},
                                 {"bottom", challenge.truth.bottom}});
    if (challenge.image_ref) doc["image"] = *challenge.image_ref;
    if (challenge.axes) doc["axes"] = *challenge.axes;
    if (challenge.source_id) doc["source"] = *challenge.source_id;
    doc["detections"] = json::parse(serialize_detections(challenge.detections));
    return doc.dump();
}

std::vector<Challenge> load_corpus(const std::string& path, const Ontology& ontology) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::CorpusError, "cannot open corpus " + path);
    std::vector<Challenge> corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            corpus.push_back(parse_challenge(line, ontology));
        } catch (const Error& e) {
            fail(ErrorKind::CorpusError,
                 path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (corpus.empty()) fail(ErrorKind::CorpusError, "corpus is empty: " + path);
    return corpus;
}

void save_corpus(const std::vector<Challenge>& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::CorpusError, "cannot write corpus " + path);
    for (const auto& ch : corpus) out << serialize_challenge(ch) << '\n';
}

} // namespace vrc
