#include "vrc/qie.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "vrc/builtin_data.hpp"
#include "text_util.hpp"

namespace vrc {

namespace tu = textutil;

namespace {

const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = {
        "the",  "an",     "please", "click",  "select", "choose", "tap",  "press",
        "on",   "at",     "to",     "of",     "that",   "which",  "is",   "are",
        "was",  "be",     "facing", "with",   "and",    "it",     "its",  "in",
        "this", "then",   "there",  "located", "positioned", "find", "identify",
    };
    return words;
}

const std::set<std::string>& size_modifiers() {
    static const std::set<std::string> words = {"small", "little", "tiny", "big",
                                                "large", "huge",   "mini", "giant"};
    return words;
}

const std::set<std::string>& generic_nouns() {
    static const std::set<std::string> words = {
        "object",  "objects",  "item",  "items",  "thing",    "things",
        "one",     "ones",     "shape", "shapes", "element",  "elements",
        "entity",  "entities",
    };
    return words;
}

Comparator comparator_from_name(const std::string& name, const std::string& context) {
    if (name == "largest") return Comparator::Largest;
    if (name == "smallest") return Comparator::Smallest;
    if (name == "leftmost") return Comparator::Leftmost;
    if (name == "rightmost") return Comparator::Rightmost;
    if (name == "topmost") return Comparator::Topmost;
    if (name == "bottommost") return Comparator::Bottommost;
    fail(ErrorKind::ConfigError, context + ": unknown comparator '" + name + "'");
}

struct Token {
    std::string text;  // case preserved, punctuation stripped
    bool quoted = false;
};

std::vector<Token> tokenize(std::string_view segment) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < segment.size()) {
        while (i < segment.size() && std::isspace(static_cast<unsigned char>(segment[i]))) ++i;
        if (i >= segment.size()) break;
        std::size_t j = i;
        while (j < segment.size() && !std::isspace(static_cast<unsigned char>(segment[j]))) ++j;
        std::string raw(segment.substr(i, j - i));
        i = j;

        auto is_edge_punct = [](char c) {
            return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' ||
                   c == '(' || c == ')';
        };
        while (!raw.empty() && is_edge_punct(raw.back())) raw.pop_back();
        while (!raw.empty() && is_edge_punct(raw.front())) raw.erase(raw.begin());

        bool quoted = false;
        if (raw.size() >= 2 &&
            ((raw.front() == '\'' && raw.back() == '\'') ||
             (raw.front() == '"' && raw.back() == '"'))) {
            quoted = true;
            raw = raw.substr(1, raw.size() - 2);
        }
        if (raw.empty()) continue;
        tokens.push_back(Token{std::move(raw), quoted});
    }
    return tokens;
}

// Parsed form of one object description segment.
struct Desc {
    std::optional<ShapeSpec> shape;
    std::optional<std::string> color;
    std::optional<std::string> toward;
    bool generic = false;

    bool has_attributes() const { return shape || color || toward; }
    bool mentions_object() const { return has_attributes() || generic; }
};

class DescParser {
public:
    DescParser(const Ontology& onto, const Lexicon& lex) : onto_(onto), lex_(lex) {
        for (const auto& [surface, canonical] : lex_.categories) {
            auto words = tu::split(surface, ' ');
            if (words.size() > 1) multiword_.push_back({words, {"category", canonical}});
        }
        for (const auto& [surface, canonical] : lex_.synonyms) {
            auto words = tu::split(surface, ' ');
            if (words.size() > 1) multiword_.push_back({words, {"synonym", canonical}});
        }
        for (const auto& shape : onto_.shapes()) {
            auto words = tu::split(shape, ' ');
            if (words.size() > 1) multiword_.push_back({words, {"shape", shape}});
        }
        std::stable_sort(multiword_.begin(), multiword_.end(),
                         [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    }

    Desc parse(std::string_view segment, const std::string& question) const {
        Desc desc;
        auto tokens = tokenize(segment);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const Token& tok = tokens[i];

            if (std::size_t advance = match_multiword(tokens, i, desc, question)) {
                i += advance - 1;
                continue;
            }

            if (tok.quoted) {
                classify_token(canonicalize(tok.text), desc, question);
                continue;
            }

            std::string low = tu::lower(tok.text);
            if (tok.text.size() == 1) {
                // Bare single characters are letter/digit shapes; a lone
                // lowercase "a" is the article unless a letter keyword
                // introduced it ("the letter a").
                if (tok.text == "a" && !prev_is_letter_keyword(tokens, i)) continue;
                set_shape_token(tok.text, desc, question);
                continue;
            }
            if (stopwords().count(low) || size_modifiers().count(low)) continue;
            if (generic_nouns().count(low)) {
                desc.generic = true;
                continue;
            }
            if (auto cat = lookup_category(low)) {
                if (next_is_literal(tokens, i)) continue; // descriptor: "the letter 'T'"
                set_category(*cat, desc, question);
                continue;
            }
            if (try_ontology_word(low, desc, question)) continue;
            // Plural fallback: "cones" -> "cone".
            if (low.size() > 1 && low.back() == 's') {
                std::string singular = low.substr(0, low.size() - 1);
                if (generic_nouns().count(singular)) {
                    desc.generic = true;
                    continue;
                }
                if (auto cat = lookup_category(singular)) {
                    set_category(*cat, desc, question);
                    continue;
                }
                if (try_ontology_word(singular, desc, question)) continue;
            }
            fail(ErrorKind::UnparseableQuestion,
                 "unrecognized word '" + tok.text + "' in \"" + question + "\"");
        }
        return desc;
    }

private:
    const Ontology& onto_;
    const Lexicon& lex_;
    // (words, (kind, canonical)) where kind is category/synonym/shape.
    std::vector<std::pair<std::vector<std::string>, std::pair<std::string, std::string>>> multiword_;

    std::optional<std::string> lookup_category(const std::string& low) const {
        auto it = lex_.categories.find(low);
        if (it != lex_.categories.end()) return it->second;
        return std::nullopt;
    }

    std::string canonicalize(const std::string& word) const {
        if (word.size() == 1) return word;
        std::string low = tu::lower(word);
        auto it = lex_.synonyms.find(low);
        return it != lex_.synonyms.end() ? it->second : low;
    }

    bool prev_is_letter_keyword(const std::vector<Token>& tokens, std::size_t i) const {
        if (i == 0) return false;
        std::string low = tu::lower(tokens[i - 1].text);
        auto it = lex_.categories.find(low);
        return it != lex_.categories.end();
    }

    bool next_is_literal(const std::vector<Token>& tokens, std::size_t i) const {
        if (i + 1 < tokens.size() && (tokens[i + 1].quoted || tokens[i + 1].text.size() == 1))
            return true;
        // Allow one article between keyword and literal.
        if (i + 2 < tokens.size() && tu::lower(tokens[i + 1].text) == "the" &&
            (tokens[i + 2].quoted || tokens[i + 2].text.size() == 1))
            return true;
        return false;
    }

    std::size_t match_multiword(const std::vector<Token>& tokens, std::size_t i, Desc& desc,
                                const std::string& question) const {
        for (const auto& [words, kind_value] : multiword_) {
            if (i + words.size() > tokens.size()) continue;
            bool all = true;
            for (std::size_t k = 0; k < words.size(); ++k) {
                if (tu::lower(tokens[i + k].text) != words[k]) {
                    all = false;
                    break;
                }
            }
            if (!all) continue;
            const auto& [kind, value] = kind_value;
            if (kind == "category") {
                set_category(value, desc, question);
            } else if (kind == "shape") {
                set_shape_token(value, desc, question);
            } else {
                classify_token(value, desc, question);
            }
            return words.size();
        }
        return 0;
    }

    bool try_ontology_word(const std::string& word, Desc& desc, const std::string& question) const {
        std::string canonical = canonicalize(word);
        auto tag = onto_.try_parse_attribute_token(canonical);
        if (!tag) return false;
        apply_tag(*tag, desc, question);
        return true;
    }

    void classify_token(const std::string& word, Desc& desc, const std::string& question) const {
        auto tag = onto_.try_parse_attribute_token(word);
        if (!tag)
            fail(ErrorKind::UnparseableQuestion,
                 "'" + word + "' is not an ontology value in \"" + question + "\"");
        apply_tag(*tag, desc, question);
    }

    void set_shape_token(const std::string& token, Desc& desc, const std::string& question) const {
        auto tag = onto_.try_parse_attribute_token(token);
        if (!tag || tag->cls != AttributeClass::Shape)
            fail(ErrorKind::UnparseableQuestion,
                 "'" + token + "' is not a shape in \"" + question + "\"");
        apply_tag(*tag, desc, question);
    }

    void set_category(const std::string& canonical, Desc& desc, const std::string& question) const {
        if (desc.shape)
            fail(ErrorKind::UnparseableQuestion, "two shape mentions in \"" + question + "\"");
        desc.shape = ShapeSpec{true, canonical};
    }

    void apply_tag(const AttributeTag& tag, Desc& desc, const std::string& question) const {
        switch (tag.cls) {
        case AttributeClass::Shape:
            if (desc.shape)
                fail(ErrorKind::UnparseableQuestion, "two shape mentions in \"" + question + "\"");
            desc.shape = ShapeSpec{false, tag.name};
            break;
        case AttributeClass::Color:
            if (desc.color && *desc.color != tag.name)
                fail(ErrorKind::UnparseableQuestion, "two colors in \"" + question + "\"");
            desc.color = tag.name;
            break;
        case AttributeClass::Toward:
            if (desc.toward && *desc.toward != tag.name)
                fail(ErrorKind::UnparseableQuestion, "two orientations in \"" + question + "\"");
            desc.toward = tag.name;
            break;
        }
    }
};

QueryRecord record_from(const Desc& desc, Role role) {
    QueryRecord rec;
    rec.shape = desc.shape;
    rec.color = desc.color;
    rec.toward = desc.toward;
    rec.role = role;
    return rec;
}

} // namespace

const Lexicon& Lexicon::standard() {
    static const Lexicon instance =
        Lexicon::from_strings(builtin::qie_synonyms(), builtin::qie_categories(),
                              builtin::qie_relations(), builtin::qie_comparators(),
                              builtin::qie_constraints());
    return instance;
}

Lexicon Lexicon::load_dir(const std::string& dir) {
    return Lexicon::from_strings(
        tu::read_file(dir + "/synonyms.txt"), tu::read_file(dir + "/categories.txt"),
        tu::read_file(dir + "/relations.txt"), tu::read_file(dir + "/comparators.txt"),
        tu::read_file(dir + "/constraints.txt"));
}

Lexicon Lexicon::from_strings(std::string_view synonyms, std::string_view categories,
                              std::string_view relations, std::string_view comparators,
                              std::string_view constraints) {
    Lexicon lex;
    for (auto& [k, v] : tu::parse_kv(synonyms, "synonyms")) lex.synonyms[tu::lower(k)] = v;
    for (auto& [k, v] : tu::parse_kv(categories, "categories")) lex.categories[tu::lower(k)] = v;

    for (auto& [k, v] : tu::parse_kv(relations, "relations")) {
        auto parts = tu::split(v, ',');
        auto rel = relation_from_string(parts[0]);
        if (!rel) fail(ErrorKind::ConfigError, "relations: unknown token '" + v + "'");
        bool strict = parts.size() > 1 && tu::trim(parts[1]) == "strict";
        lex.relations.push_back(RelationPhrase{tu::lower(k), *rel, strict});
    }
    std::stable_sort(lex.relations.begin(), lex.relations.end(),
                     [](const auto& a, const auto& b) { return a.phrase.size() > b.phrase.size(); });

    for (auto& [k, v] : tu::parse_kv(comparators, "comparators"))
        lex.comparators.push_back(ComparatorPhrase{tu::lower(k), comparator_from_name(v, "comparators")});
    std::stable_sort(lex.comparators.begin(), lex.comparators.end(),
                     [](const auto& a, const auto& b) { return a.phrase.size() > b.phrase.size(); });

    for (auto& [k, v] : tu::parse_kv(constraints, "constraints")) {
        SharedAttribute attr;
        if (v == "color") attr = SharedAttribute::Color;
        else if (v == "direction") attr = SharedAttribute::Toward;
        else fail(ErrorKind::ConfigError, "constraints: unknown attribute '" + v + "'");
        lex.constraints.push_back(ConstraintPhrase{tu::lower(k), attr});
    }
    std::stable_sort(lex.constraints.begin(), lex.constraints.end(),
                     [](const auto& a, const auto& b) { return a.phrase.size() > b.phrase.size(); });
    return lex;
}

namespace {

// Earliest-position match; at equal positions the longest phrase wins
// (the phrase lists are pre-sorted longest-first).
template <typename Phrases, typename MakeMatch>
auto scan_phrases(std::string_view low, const Phrases& phrases, MakeMatch make)
    -> std::optional<decltype(make(std::declval<typename Phrases::value_type>(), 0))> {
    for (std::size_t pos = 0; pos < low.size(); ++pos) {
        for (const auto& p : phrases) {
            if (tu::phrase_at(low, pos, p.phrase)) return make(p, pos);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<RelationMatch> Qie::find_relation(std::string_view text) const {
    std::string low = tu::lower(tu::normalize_quotes(text));
    return scan_phrases(low, lexicon_->relations, [](const RelationPhrase& p, std::size_t pos) {
        RelationMatch m;
        m.pos = pos;
        m.len = p.phrase.size();
        m.rel = p.rel;
        m.strict = p.strict;
        return m;
    });
}

std::optional<ComparatorMatch> Qie::find_comparator(std::string_view text) const {
    std::string low = tu::lower(tu::normalize_quotes(text));
    return scan_phrases(low, lexicon_->comparators, [](const ComparatorPhrase& p, std::size_t pos) {
        ComparatorMatch m;
        m.pos = pos;
        m.len = p.phrase.size();
        m.comp = p.comp;
        return m;
    });
}

std::optional<ConstraintMatch> Qie::find_constraint(std::string_view text) const {
    std::string low = tu::lower(tu::normalize_quotes(text));
    return scan_phrases(low, lexicon_->constraints, [](const ConstraintPhrase& p, std::size_t pos) {
        ConstraintMatch m;
        m.pos = pos;
        m.len = p.phrase.size();
        m.attr = p.attr;
        return m;
    });
}

std::optional<Relation> Qie::extract_spatial_relation(std::string_view text) const {
    auto m = find_relation(text);
    if (!m) return std::nullopt;
    return m->rel;
}

ParsedQuery Qie::parse_question(std::string_view raw) const {
    if (tu::trim(raw).empty()) fail(ErrorKind::UnparseableQuestion, "empty question");
    std::string text = tu::normalize_quotes(raw);
    const std::string question(raw);
    DescParser descs(*ontology_, *lexicon_);

    ParsedQuery query;
    query.raw_text = question;

    auto constraint = find_constraint(text);
    std::optional<RelationMatch> relation;
    if (constraint) {
        // A relation after the constraint phrase locates the anchor, not the
        // answer: "... shares color with the cone to the left of 'T'".
        relation = find_relation(text.substr(constraint->pos + constraint->len));
        if (relation) relation->pos += constraint->pos + constraint->len;
    } else {
        relation = find_relation(text);
    }

    auto comparator = find_comparator(text);
    if (comparator && (constraint || relation))
        fail(ErrorKind::UnparseableQuestion,
             "mixed comparative and relational phrasing in \"" + question + "\"");

    if (constraint) {
        std::string target_part = text.substr(0, constraint->pos);
        std::string ref_part;
        std::string other_part;
        if (relation) {
            ref_part = text.substr(constraint->pos + constraint->len,
                                   relation->pos - (constraint->pos + constraint->len));
            other_part = text.substr(relation->pos + relation->len);
        } else {
            ref_part = text.substr(constraint->pos + constraint->len);
        }

        Desc ref_desc = descs.parse(ref_part, question);
        if (!ref_desc.has_attributes())
            fail(ErrorKind::UnparseableQuestion, "constraint without a reference in \"" + question + "\"");
        QueryRecord ref = record_from(ref_desc, Role::Reference);
        query.records.push_back(ref);

        if (relation) {
            Desc other_desc = descs.parse(other_part, question);
            if (!other_desc.has_attributes())
                fail(ErrorKind::UnparseableQuestion,
                     "anchor relation without an object in \"" + question + "\"");
            query.records.push_back(record_from(other_desc, Role::Reference));
            query.records[0].locator = Locator{relation->rel, relation->strict, 1};
        }

        Desc target_desc = descs.parse(target_part, question);
        QueryRecord target = record_from(target_desc, Role::Target);
        target.share_with_reference = constraint->attr;
        query.records.push_back(target);
        query.reasoning_type = ReasoningType::Direct;
    } else if (relation) {
        std::string target_part = text.substr(0, relation->pos);
        std::string ref_part = text.substr(relation->pos + relation->len);

        Desc ref_desc = descs.parse(ref_part, question);
        if (!ref_desc.has_attributes())
            fail(ErrorKind::UnparseableQuestion, "spatial phrase without a reference in \"" + question + "\"");
        query.records.push_back(record_from(ref_desc, Role::Reference));

        Desc target_desc = descs.parse(target_part, question);
        if (target_desc.has_attributes())
            query.records.push_back(record_from(target_desc, Role::Target));
        // A purely generic target ("the object") stays implicit; the
        // relative-position step recovers it geometrically.

        query.relation = relation->rel;
        query.relation_strict = relation->strict;
        query.reasoning_type = ReasoningType::Spatial;
    } else if (comparator) {
        std::string remaining = text;
        remaining.replace(comparator->pos, comparator->len, std::string(comparator->len, ' '));
        Desc target_desc = descs.parse(remaining, question);
        if (!target_desc.has_attributes())
            fail(ErrorKind::UnparseableQuestion,
                 "comparative without an object class in \"" + question + "\"");
        query.records.push_back(record_from(target_desc, Role::Target));
        query.comparator = comparator->comp;
        query.reasoning_type = ReasoningType::Comparative;
    } else {
        Desc target_desc = descs.parse(text, question);
        if (!target_desc.has_attributes())
            fail(ErrorKind::UnparseableQuestion, "no object description in \"" + question + "\"");
        query.records.push_back(record_from(target_desc, Role::Target));
        query.reasoning_type = ReasoningType::Direct;
    }

    validate(query);
    return query;
}

} // namespace vrc
