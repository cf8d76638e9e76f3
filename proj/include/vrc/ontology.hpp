#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrc/errors.hpp"

namespace vrc {

enum class AttributeClass { Shape, Color, Toward };

const char* to_string(AttributeClass cls);

// A validated ontology token. The three value sets are disjoint, so the class
// is implied by the name; it is kept explicit to avoid re-lookups.
struct AttributeTag {
    AttributeClass cls = AttributeClass::Shape;
    std::string name;

    bool operator==(const AttributeTag& other) const = default;
};

// shape x color x orientation; color/toward may be absent (shape-only
// detections exist on the wire).
struct CompoundLabel {
    std::string shape;
    std::optional<std::string> color;
    std::optional<std::string> toward;
};

enum class CoarseCategory { Letter, Number, Solid3d, Planar2d };

// Closed attribute vocabulary: digits, letters (case-sensitive), 3-D solids
// and 2-D figures for shapes; five colors; two orientations. Immutable after
// construction and safe for unrestricted concurrent reads.
class Ontology {
public:
    // Built-in vocabulary; identical content ships under data/ontology/ so the
    // lexicon can be audited without rebuilding (a test pins the equality).
    static const Ontology& standard();

    // Loads shape.txt / color.txt / toward.txt (one token per line, '#' for
    // comments) from a directory.
    static Ontology load_dir(const std::string& dir);

    Ontology(std::vector<std::string> shapes, std::vector<std::string> colors,
             std::vector<std::string> towards);

    // Classifies a token into shape/color/toward. Single-character tokens are
    // matched case-sensitively ("t" != "T"); everything else lowercases first.
    // Throws UnknownToken for anything outside the closed sets.
    AttributeTag parse_attribute_token(std::string_view text) const;
    std::optional<AttributeTag> try_parse_attribute_token(std::string_view text) const;

    // Expands a coarse category name ("letter" | "number" | "3D object" |
    // "2D shape", case-insensitive) into concrete shape tokens.
    // Throws UnknownCategory otherwise.
    const std::vector<std::string>& expand_category(std::string_view category) const;

    static std::optional<CoarseCategory> category_from_name(std::string_view name);
    static const char* category_name(CoarseCategory cat);
    const std::vector<std::string>& category_members(CoarseCategory cat) const;

    bool is_shape(std::string_view name) const;
    bool is_color(std::string_view name) const;
    bool is_toward(std::string_view name) const;

    const std::vector<std::string>& shapes() const { return shapes_; }
    const std::vector<std::string>& colors() const { return colors_; }
    const std::vector<std::string>& towards() const { return towards_; }

    // Derived statistic: number of distinct compound labels expressible as
    // shape x (color | none) x (toward | none). Reported, never hard-coded
    // against; the enumerated value sets are the only authority.
    std::size_t compound_label_bound() const;

private:
    std::vector<std::string> shapes_;
    std::vector<std::string> colors_;
    std::vector<std::string> towards_;
    std::vector<std::string> letters_;
    std::vector<std::string> numbers_;
    std::vector<std::string> solids_;
    std::vector<std::string> planars_;

    void build_categories();
    void assert_disjoint() const;
};

} // namespace vrc
