#include "vrc/ontology.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>

namespace vrc {

namespace {

constexpr std::array<const char*, 12> kSolids = {
    "sphere",        "cube",
    "cone",          "cylinder",
    "hexagonal prism", "polyhedron",
    "rectangular prism", "slant",
    "square pyramid",  "torus",
    "triangular prism", "triangular pyramid",
};

constexpr std::array<const char*, 10> kPlanars = {
    "square",   "parallelogram", "round",    "rectangle", "hexagon",
    "trapezoidal", "lozenge",    "triangle", "pentagram", "pentagon",
};

constexpr std::array<const char*, 5> kColors = {"yellow", "green", "gray", "blue", "red"};
constexpr std::array<const char*, 2> kTowards = {"front", "side"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> builtin_shapes() {
    std::vector<std::string> shapes;
    shapes.reserve(84);
    for (char d = '0'; d <= '9'; ++d) shapes.emplace_back(1, d);
    for (char c = 'a'; c <= 'z'; ++c) shapes.emplace_back(1, c);
    for (char c = 'A'; c <= 'Z'; ++c) shapes.emplace_back(1, c);
    for (const char* s : kSolids) shapes.emplace_back(s);
    for (const char* s : kPlanars) shapes.emplace_back(s);
    return shapes;
}

std::vector<std::string> read_token_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ConfigError, "cannot open ontology file " + path);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        tokens.push_back(line);
    }
    return tokens;
}

} // namespace

const char* to_string(AttributeClass cls) {
    switch (cls) {
    case AttributeClass::Shape: return "shape";
    case AttributeClass::Color: return "color";
    case AttributeClass::Toward: return "toward";
    }
    return "?";
}

Ontology::Ontology(std::vector<std::string> shapes, std::vector<std::string> colors,
                   std::vector<std::string> towards)
    : shapes_(std::move(shapes)), colors_(std::move(colors)), towards_(std::move(towards)) {
    build_categories();
    assert_disjoint();
}

const Ontology& Ontology::standard() {
    static const Ontology instance(builtin_shapes(),
                                   std::vector<std::string>(kColors.begin(), kColors.end()),
                                   std::vector<std::string>(kTowards.begin(), kTowards.end()));
    return instance;
}

Ontology Ontology::load_dir(const std::string& dir) {
    return Ontology(read_token_file(dir + "/shape.txt"), read_token_file(dir + "/color.txt"),
                    read_token_file(dir + "/toward.txt"));
}

void Ontology::build_categories() {
    const std::set<std::string> solid_set(kSolids.begin(), kSolids.end());
    for (const auto& s : shapes_) {
        if (s.size() == 1 && std::isdigit(static_cast<unsigned char>(s[0]))) {
            numbers_.push_back(s);
        } else if (s.size() == 1 && std::isalpha(static_cast<unsigned char>(s[0]))) {
            letters_.push_back(s);
        } else if (solid_set.count(s)) {
            solids_.push_back(s);
        } else {
            planars_.push_back(s);
        }
    }
}

void Ontology::assert_disjoint() const {
    std::set<std::string> seen;
    auto check = [&](const std::vector<std::string>& values, const char* what) {
        for (const auto& v : values) {
            if (v.empty()) fail(ErrorKind::ConfigError, std::string("empty ") + what + " token");
            if (!seen.insert(v).second)
                fail(ErrorKind::ConfigError, "ontology token not unique across classes: " + v);
        }
    };
    check(shapes_, "shape");
    check(colors_, "color");
    check(towards_, "toward");
}

std::optional<AttributeTag> Ontology::try_parse_attribute_token(std::string_view text) const {
    if (text.empty()) return std::nullopt;
    if (text.size() == 1) {
        // Letters are case-sensitive; digits pass through the same path.
        std::string s(text);
        if (std::find(shapes_.begin(), shapes_.end(), s) != shapes_.end())
            return AttributeTag{AttributeClass::Shape, s};
        return std::nullopt;
    }
    std::string s = lower(text);
    if (std::find(colors_.begin(), colors_.end(), s) != colors_.end())
        return AttributeTag{AttributeClass::Color, s};
    if (std::find(towards_.begin(), towards_.end(), s) != towards_.end())
        return AttributeTag{AttributeClass::Toward, s};
    if (std::find(shapes_.begin(), shapes_.end(), s) != shapes_.end())
        return AttributeTag{AttributeClass::Shape, s};
    return std::nullopt;
}

AttributeTag Ontology::parse_attribute_token(std::string_view text) const {
    auto tag = try_parse_attribute_token(text);
    if (!tag) fail(ErrorKind::UnknownToken, "not an ontology value: '" + std::string(text) + "'");
    return *tag;
}

std::optional<CoarseCategory> Ontology::category_from_name(std::string_view name) {
    std::string n = lower(name);
    if (n == "letter") return CoarseCategory::Letter;
    if (n == "number") return CoarseCategory::Number;
    if (n == "3d object") return CoarseCategory::Solid3d;
    if (n == "2d shape") return CoarseCategory::Planar2d;
    return std::nullopt;
}

const char* Ontology::category_name(CoarseCategory cat) {
    switch (cat) {
    case CoarseCategory::Letter: return "letter";
    case CoarseCategory::Number: return "number";
    case CoarseCategory::Solid3d: return "3D object";
    case CoarseCategory::Planar2d: return "2D shape";
    }
    return "?";
}

const std::vector<std::string>& Ontology::category_members(CoarseCategory cat) const {
    switch (cat) {
    case CoarseCategory::Letter: return letters_;
    case CoarseCategory::Number: return numbers_;
    case CoarseCategory::Solid3d: return solids_;
    case CoarseCategory::Planar2d: return planars_;
    }
    fail(ErrorKind::InternalError, "bad category");
}

const std::vector<std::string>& Ontology::expand_category(std::string_view category) const {
    auto cat = category_from_name(category);
    if (!cat) fail(ErrorKind::UnknownCategory, "not a coarse category: '" + std::string(category) + "'");
    const auto& members = category_members(*cat);
    if (members.empty())
        fail(ErrorKind::UnknownCategory, "category expands to nothing: '" + std::string(category) + "'");
    return members;
}

bool Ontology::is_shape(std::string_view name) const {
    auto t = try_parse_attribute_token(name);
    return t && t->cls == AttributeClass::Shape;
}

bool Ontology::is_color(std::string_view name) const {
    auto t = try_parse_attribute_token(name);
    return t && t->cls == AttributeClass::Color;
}

bool Ontology::is_toward(std::string_view name) const {
    auto t = try_parse_attribute_token(name);
    return t && t->cls == AttributeClass::Toward;
}

std::size_t Ontology::compound_label_bound() const {
    return shapes_.size() * (colors_.size() + 1) * (towards_.size() + 1);
}

} // namespace vrc
