#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vrc/challenge.hpp"
#include "vrc/qie.hpp"

namespace vrc {

// Transform axes: synonym substitution (S), relation rewording / polarity
// flips (R), indirection (I). The evaluated combinations are the six
// non-empty subsets {S, R, I, S+R, S+I, S+R+I}.
struct TsrAxes {
    bool s = false;
    bool r = false;
    bool i = false;

    std::string str() const; // "s", "s,r", ...
    bool operator==(const TsrAxes&) const = default;
};

struct TsrVariant {
    std::string source_id;
    TsrAxes axes;
    std::string text;
    std::uint64_t seed = 0;
};

struct TsrSkip {
    std::string source_id;
    TsrAxes axes;
    std::string reason;
};

// Synonym lexicon and rewording tables (data/tsr/); entries quoted from the
// template examples plus artifact-authored additions. Every alternative stays
// parseable through the question grammar, so variants remain solvable.
class TsrTables {
public:
    static const TsrTables& standard();
    static TsrTables load_dir(const std::string& dir);
    static TsrTables from_strings(std::string_view synonyms, std::string_view rewordings);

    std::map<std::string, std::vector<std::string>> synonyms; // canonical -> alternatives
    std::map<std::string, std::vector<std::string>> relations; // "below" / "below,strict" -> phrases
    std::map<std::string, std::vector<std::string>> comparatives;
    std::vector<std::pair<std::string, std::vector<std::string>>> attributes; // ordered

    bool operator==(const TsrTables&) const = default;
};

// S axis: every attribute token with a lexicon entry is replaced by a
// seeded-random synonym; everything else passes through.
std::string substitute_synonyms(const std::string& text, const TsrTables& tables,
                                std::uint64_t seed);

// R axis core: rewords the recognized spatial phrase (equivalent phrasing or
// polarity-flipped negation); identity when no spatial phrase is present.
// The extracted relation is preserved by construction.
std::string reword_relation(const std::string& text, const TsrTables& tables, const Qie& qie,
                            std::uint64_t seed);

// Full R axis: relation rewording when a spatial phrase exists, otherwise the
// comparative table, otherwise the attribute-phrasing table. Returns the text
// unchanged when nothing applies.
std::string apply_rewording_axis(const std::string& text, const TsrTables& tables, const Qie& qie,
                                 std::uint64_t seed);

// I axis: rewrites the question to reference the answer through an
// attribute-sharing anchor ("the item that shares color with the cone to the
// left of 'T'"). The anchor must resolve uniquely and reselect exactly the
// original answer; throws NoValidAnchor otherwise.
std::string add_indirection(const Challenge& challenge, const Qie& qie, std::uint64_t seed);

struct TsrGenResult {
    std::vector<TsrVariant> variants;
    std::vector<TsrSkip> skips;
};

// One variant per axis combination, composed S then R then I (combos with I
// re-apply the earlier axes' seeded text passes to the indirection template).
// Every emitted variant is verified semantics-preserving by the brute-force
// scene oracle before emission; failures are reported as skips.
TsrGenResult generate_variants(const Challenge& challenge, const Qie& qie,
                               const TsrTables& tables, std::uint64_t seed);

// Variant corpus record: harness challenge format plus the axes annotation.
Challenge variant_challenge(const Challenge& source, const TsrVariant& variant);

} // namespace vrc
