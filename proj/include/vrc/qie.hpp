#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrc/ontology.hpp"
#include "vrc/query.hpp"

namespace vrc {

struct RelationPhrase {
    std::string phrase;
    Relation rel = Relation::Below;
    bool strict = false;

    bool operator==(const RelationPhrase&) const = default;
};

struct ComparatorPhrase {
    std::string phrase;
    Comparator comp = Comparator::Largest;

    bool operator==(const ComparatorPhrase&) const = default;
};

struct ConstraintPhrase {
    std::string phrase;
    SharedAttribute attr = SharedAttribute::Color;

    bool operator==(const ConstraintPhrase&) const = default;
};

// Editable grammar tables: synonym normalization, category words, relation /
// comparator / constraint phrases. Shipped as data files under data/lexicon/;
// the built-in copy is pinned to the files by a test.
class Lexicon {
public:
    static const Lexicon& standard();
    static Lexicon load_dir(const std::string& dir);
    static Lexicon from_strings(std::string_view synonyms, std::string_view categories,
                                std::string_view relations, std::string_view comparators,
                                std::string_view constraints);

    std::map<std::string, std::string> synonyms;    // surface -> canonical token
    std::map<std::string, std::string> categories;  // surface -> canonical category
    std::vector<RelationPhrase> relations;          // longest phrase first
    std::vector<ComparatorPhrase> comparators;      // longest phrase first
    std::vector<ConstraintPhrase> constraints;      // longest phrase first

    bool operator==(const Lexicon&) const = default;
};

struct PhraseMatch {
    std::size_t pos = 0;
    std::size_t len = 0;
};

struct RelationMatch : PhraseMatch {
    Relation rel = Relation::Below;
    bool strict = false;
};

struct ComparatorMatch : PhraseMatch {
    Comparator comp = Comparator::Largest;
};

struct ConstraintMatch : PhraseMatch {
    SharedAttribute attr = SharedAttribute::Color;
};

// Question Information Extractor: deterministic rule-based parser from an
// instruction to attribute records with wildcard slots, a relation cue and a
// reasoning-type classification. Stateless; safe for concurrent use.
class Qie {
public:
    Qie(const Ontology& ontology, const Lexicon& lexicon)
        : ontology_(&ontology), lexicon_(&lexicon) {}

    // Throws UnparseableQuestion when no record can be extracted or a
    // contentful word is not covered by the grammar; never guesses.
    ParsedQuery parse_question(std::string_view text) const;

    // First recognized spatial predicate (earliest position, longest phrase),
    // with negated forms normalized by polarity; nullopt when absent.
    std::optional<Relation> extract_spatial_relation(std::string_view text) const;

    // Span-level lookups, reused by the template randomizer.
    std::optional<RelationMatch> find_relation(std::string_view text) const;
    std::optional<ComparatorMatch> find_comparator(std::string_view text) const;
    std::optional<ConstraintMatch> find_constraint(std::string_view text) const;

    const Ontology& ontology() const { return *ontology_; }
    const Lexicon& lexicon() const { return *lexicon_; }

private:
    const Ontology* ontology_;
    const Lexicon* lexicon_;
};

} // namespace vrc
