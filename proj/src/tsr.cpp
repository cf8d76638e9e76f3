#include "vrc/tsr.hpp"

#include <algorithm>
#include <random>

#include "vrc/builtin_data.hpp"
#include "vrc/scenegen.hpp"
#include "text_util.hpp"

namespace vrc {

namespace tu = textutil;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

const std::string& pick(Rng& rng, const std::vector<std::string>& v) {
    return v[rng() % v.size()];
}

std::string plain_relation_phrase(Relation rel) {
    switch (rel) {
    case Relation::Below: return "below";
    case Relation::Above: return "above";
    case Relation::LeftOf: return "to the left of";
    case Relation::RightOf: return "to the right of";
    }
    return "?";
}

std::string shape_phrase(const std::string& shape) {
    if (shape.size() == 1) {
        bool digit = std::isdigit(static_cast<unsigned char>(shape[0])) != 0;
        return std::string(digit ? "number" : "letter") + " '" + shape + "'";
    }
    return shape;
}

} // namespace

std::string TsrAxes::str() const {
    std::string out;
    auto add = [&](const char* a) {
        if (!out.empty()) out += ',';
        out += a;
    };
    if (s) add("s");
    if (r) add("r");
    if (i) add("i");
    return out;
}

const TsrTables& TsrTables::standard() {
    static const TsrTables instance =
        TsrTables::from_strings(builtin::tsr_synonyms(), builtin::tsr_rewordings());
    return instance;
}

TsrTables TsrTables::load_dir(const std::string& dir) {
    return TsrTables::from_strings(tu::read_file(dir + "/synonyms.txt"),
                                   tu::read_file(dir + "/rewordings.txt"));
}

TsrTables TsrTables::from_strings(std::string_view synonyms, std::string_view rewordings) {
    TsrTables tables;
    for (auto& [k, v] : tu::parse_kv(synonyms, "tsr synonyms"))
        tables.synonyms[tu::lower(k)] = tu::split(v, '|');

    std::string section;
    for (auto& [k, v] : tu::parse_kv(rewordings, "tsr rewordings")) {
        if (!k.empty() && k.front() == '[') {
            section = k;
            continue;
        }
        auto alts = tu::split(v, '|');
        if (section == "[relations]") tables.relations[tu::lower(k)] = alts;
        else if (section == "[comparatives]") tables.comparatives[tu::lower(k)] = alts;
        else if (section == "[attributes]") tables.attributes.emplace_back(tu::lower(k), alts);
        else fail(ErrorKind::ConfigError, "rewordings entry outside a section: " + k);
    }
    return tables;
}

std::string substitute_synonyms(const std::string& text, const TsrTables& tables,
                                std::uint64_t seed) {
    Rng rng(splitmix64(seed ^ 0x73796e6full));
    std::string low = tu::lower(tu::normalize_quotes(text));
    std::string out;
    out.reserve(text.size());

    // Longest keys first so "hexagonal prism"-style entries would win.
    std::vector<const std::string*> keys;
    for (const auto& [k, _] : tables.synonyms) keys.push_back(&k);
    std::sort(keys.begin(), keys.end(),
              [](const std::string* a, const std::string* b) { return a->size() > b->size(); });

    std::size_t pos = 0;
    while (pos < low.size()) {
        const std::string* hit = nullptr;
        for (const auto* k : keys) {
            if (tu::phrase_at(low, pos, *k)) {
                hit = k;
                break;
            }
        }
        if (hit) {
            out += pick(rng, tables.synonyms.at(*hit));
            pos += hit->size();
        } else {
            out += text[pos];
            ++pos;
        }
    }
    return out;
}

namespace {

std::string reword_span(const std::string& text, std::size_t pos, std::size_t len,
                        const std::string& replacement) {
    std::string out = tu::normalize_quotes(text);
    out.replace(pos, len, replacement);
    return out;
}

} // namespace

std::string reword_relation(const std::string& text, const TsrTables& tables, const Qie& qie,
                            std::uint64_t seed) {
    auto m = qie.find_relation(text);
    if (!m) return text;
    Rng rng(splitmix64(seed ^ 0x72656cull));

    std::string key = std::string(to_string(m->rel)) + (m->strict ? ",strict" : "");
    auto it = tables.relations.find(key);
    if (it == tables.relations.end() || it->second.empty()) return text;
    std::string replacement = pick(rng, it->second);

    std::string out = reword_span(text, m->pos, m->len, replacement);
    auto check = qie.extract_spatial_relation(out);
    if (!check || *check != m->rel)
        fail(ErrorKind::ConfigError, "rewording table broke the relation: " + replacement);
    return out;
}

std::string apply_rewording_axis(const std::string& text, const TsrTables& tables, const Qie& qie,
                                 std::uint64_t seed) {
    if (qie.find_relation(text)) return reword_relation(text, tables, qie, seed);

    Rng rng(splitmix64(seed ^ 0x72777264ull));
    if (auto comp = qie.find_comparator(text)) {
        auto it = tables.comparatives.find(to_string(comp->comp));
        if (it != tables.comparatives.end() && !it->second.empty())
            return reword_span(text, comp->pos, comp->len, pick(rng, it->second));
    }

    std::string low = tu::lower(tu::normalize_quotes(text));
    for (const auto& [key, alts] : tables.attributes) {
        for (std::size_t pos = 0; pos + key.size() <= low.size(); ++pos) {
            if (tu::phrase_at(low, pos, key))
                return reword_span(text, pos, key.size(), pick(rng, alts));
        }
    }
    return text;
}

namespace {

struct SceneView {
    std::vector<PlacedObject> objects;
    std::size_t answer = 0;
};

// Identifies the ground-truth answer object: the unique object whose center
// falls inside the truth region.
SceneView scene_view(const Challenge& challenge) {
    SceneView view;
    DetectionSet merged = merge_colocated(challenge.detections);
    view.objects = objects_from_detections(merged);
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < view.objects.size(); ++i) {
        Point c = center_of(view.objects[i].bbox);
        double xn = c.x / challenge.image_width;
        double yn = c.y / challenge.image_height;
        if (challenge.truth.left <= xn && xn <= challenge.truth.right &&
            challenge.truth.top <= yn && yn <= challenge.truth.bottom)
            inside.push_back(i);
    }
    if (inside.size() != 1)
        fail(ErrorKind::NoValidAnchor,
             "truth region selects " + std::to_string(inside.size()) + " objects");
    view.answer = inside.front();
    return view;
}

bool shape_unique(const std::vector<PlacedObject>& objects, const std::string& shape) {
    std::size_t n = 0;
    for (const auto& o : objects)
        if (o.label.shape == shape) ++n;
    return n == 1;
}

bool rel_holds_plain(Relation rel, const BBox& target, const BBox& reference) {
    switch (rel) {
    case Relation::LeftOf: return target.x2 < reference.x1;
    case Relation::RightOf: return target.x1 > reference.x2;
    case Relation::Above: return target.y2 < reference.y1;
    case Relation::Below: return target.y1 > reference.y2;
    }
    return false;
}

// A unique textual description of the anchor: bare shape when the shape is
// unique, otherwise shape plus a relation to a unique-shape landmark.
std::optional<std::string> describe_anchor(const std::vector<PlacedObject>& objects,
                                           std::size_t anchor, Rng& rng) {
    const PlacedObject& a = objects[anchor];
    if (shape_unique(objects, a.label.shape)) return "the " + shape_phrase(a.label.shape);

    std::vector<Relation> rels = {Relation::LeftOf, Relation::RightOf, Relation::Above,
                                  Relation::Below};
    std::shuffle(rels.begin(), rels.end(), rng);
    for (Relation rel : rels) {
        for (std::size_t o = 0; o < objects.size(); ++o) {
            if (o == anchor) continue;
            if (!shape_unique(objects, objects[o].label.shape)) continue;
            if (!rel_holds_plain(rel, a.bbox, objects[o].bbox)) continue;
            // The description must pick out the anchor alone among same-shape
            // objects.
            std::size_t hits = 0;
            for (std::size_t x = 0; x < objects.size(); ++x) {
                if (objects[x].label.shape != a.label.shape) continue;
                if (x != o && rel_holds_plain(rel, objects[x].bbox, objects[o].bbox)) ++hits;
            }
            if (hits == 1)
                return "the " + shape_phrase(a.label.shape) + " " + plain_relation_phrase(rel) +
                       " the " + shape_phrase(objects[o].label.shape);
        }
    }
    return std::nullopt;
}

} // namespace

std::string add_indirection(const Challenge& challenge, const Qie& qie, std::uint64_t seed) {
    Rng rng(splitmix64(seed ^ 0x696e64ull));
    SceneView view = scene_view(challenge);
    const std::vector<PlacedObject>& objects = view.objects;
    const PlacedObject& answer = objects[view.answer];

    std::vector<std::size_t> order(objects.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    for (std::size_t anchor : order) {
        if (anchor == view.answer) continue;
        const PlacedObject& a = objects[anchor];
        for (SharedAttribute attr : {SharedAttribute::Color, SharedAttribute::Toward}) {
            const auto& anchor_value =
                attr == SharedAttribute::Color ? a.label.color : a.label.toward;
            const auto& answer_value =
                attr == SharedAttribute::Color ? answer.label.color : answer.label.toward;
            if (!anchor_value || anchor_value != answer_value) continue;

            // The shared attribute must reselect the answer alone.
            std::size_t sharers = 0;
            for (std::size_t j = 0; j < objects.size(); ++j) {
                if (j == anchor) continue;
                const auto& v =
                    attr == SharedAttribute::Color ? objects[j].label.color : objects[j].label.toward;
                if (v == anchor_value) ++sharers;
            }
            if (sharers != 1) continue;

            auto desc = describe_anchor(objects, anchor, rng);
            if (!desc) continue;

            std::string text = "Please click on the item that shares " +
                               std::string(attr == SharedAttribute::Color ? "color" : "direction") +
                               " with " + *desc + ".";

            // Oracle gate: the rewritten question must solve to the answer.
            ParsedQuery parsed = qie.parse_question(text);
            auto sols = brute_force_solve(objects, parsed, qie.ontology());
            if (sols.size() == 1 && sols.front() == view.answer) return text;
        }
    }
    fail(ErrorKind::NoValidAnchor, "no attribute-sharing anchor preserves uniqueness");
}

TsrGenResult generate_variants(const Challenge& challenge, const Qie& qie,
                               const TsrTables& tables, std::uint64_t seed) {
    static const TsrAxes kCombos[6] = {
        {true, false, false}, {false, true, false}, {false, false, true},
        {true, true, false},  {true, false, true},  {true, true, true},
    };

    TsrGenResult result;
    const std::uint64_t seed_s = splitmix64(seed ^ 0x53ull);
    const std::uint64_t seed_r = splitmix64(seed ^ 0x52ull);
    const std::uint64_t seed_i = splitmix64(seed ^ 0x49ull);

    std::optional<SceneView> view;
    std::string view_error;
    try {
        view = scene_view(challenge);
    } catch (const Error& e) {
        view_error = e.what();
    }

    for (const TsrAxes& axes : kCombos) {
        auto skip = [&](const std::string& reason) {
            result.skips.push_back(TsrSkip{challenge.id, axes, reason});
        };
        try {
            std::string text;
            if (axes.i) {
                text = add_indirection(challenge, qie, seed_i);
                if (axes.s) text = substitute_synonyms(text, tables, seed_s);
                if (axes.r) text = apply_rewording_axis(text, tables, qie, seed_r);
            } else {
                text = challenge.question;
                if (axes.s) text = substitute_synonyms(text, tables, seed_s);
                if (axes.r) text = apply_rewording_axis(text, tables, qie, seed_r);
            }
            if (tu::normalize_quotes(text) == tu::normalize_quotes(challenge.question)) {
                skip("no surface change");
                continue;
            }
            if (!view) {
                skip(view_error);
                continue;
            }
            ParsedQuery parsed = qie.parse_question(text);
            auto sols = brute_force_solve(view->objects, parsed, qie.ontology());
            if (sols.size() != 1 || sols.front() != view->answer) {
                skip("variant does not solve to the source answer (" +
                     std::to_string(sols.size()) + " solutions)");
                continue;
            }
            result.variants.push_back(TsrVariant{challenge.id, axes, text, seed});
        } catch (const Error& e) {
            skip(e.what());
        }
    }
    return result;
}

Challenge variant_challenge(const Challenge& source, const TsrVariant& variant) {
    Challenge out = source;
    out.id = source.id + "-" + variant.axes.str();
    out.question = variant.text;
    out.axes = variant.axes.str();
    out.source_id = source.id;
    return out;
}

} // namespace vrc
