#include "vrc/scenegen.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace vrc {

namespace {

constexpr int kMaxSceneAttempts = 400;
constexpr double kEdgeMargin = 4.0;
constexpr double kPlacementGap = 2.0; // disjoint means a visible gap, not a shared edge

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

double rand_real(Rng& rng, double lo, double hi) {
    double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

int rand_int(Rng& rng, int lo, int hi) { // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[rng() % v.size()];
}

// ---- independent ground-truth semantics (no pipeline code) ----

bool holds(Relation rel, bool strict, const BBox& target, const BBox& reference) {
    double rcx = (reference.x1 + reference.x2) / 2.0;
    double rcy = (reference.y1 + reference.y2) / 2.0;
    switch (rel) {
    case Relation::LeftOf:
        return target.x2 < reference.x1 && (!strict || (target.y1 <= rcy && rcy <= target.y2));
    case Relation::RightOf:
        return target.x1 > reference.x2 && (!strict || (target.y1 <= rcy && rcy <= target.y2));
    case Relation::Above:
        return target.y2 < reference.y1 && (!strict || (target.x1 <= rcx && rcx <= target.x2));
    case Relation::Below:
        return target.y1 > reference.y2 && (!strict || (target.x1 <= rcx && rcx <= target.x2));
    }
    return false;
}

bool object_matches(const QueryRecord& record, const PlacedObject& obj, const Ontology& ontology) {
    if (record.shape) {
        if (record.shape->is_category) {
            const auto& members = ontology.expand_category(record.shape->value);
            if (std::find(members.begin(), members.end(), obj.label.shape) == members.end())
                return false;
        } else if (obj.label.shape != record.shape->value) {
            return false;
        }
    }
    if (record.color && obj.label.color != record.color) return false;
    if (record.toward && obj.label.toward != record.toward) return false;
    return true;
}

std::vector<std::size_t> filter_objects(const QueryRecord& record,
                                        const std::vector<PlacedObject>& objects,
                                        const Ontology& ontology) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (object_matches(record, objects[i], ontology)) out.push_back(i);
    return out;
}

} // namespace

const char* to_string(QuestionType t) {
    switch (t) {
    case QuestionType::Direct: return "direct";
    case QuestionType::Spatial: return "spatial";
    case QuestionType::Comparative: return "comparative";
    }
    return "?";
}

std::vector<std::size_t> brute_force_solve(const std::vector<PlacedObject>& objects,
                                           const ParsedQuery& query, const Ontology& ontology) {
    switch (query.reasoning_type) {
    case ReasoningType::Spatial: {
        auto ref_idx = query.reference_index();
        if (!ref_idx) return {};
        auto refs = filter_objects(query.records[*ref_idx], objects, ontology);
        auto target_rec = query.target_index();
        std::vector<std::size_t> sols;
        for (std::size_t i = 0; i < objects.size(); ++i) {
            if (target_rec && !object_matches(query.records[*target_rec], objects[i], ontology))
                continue;
            bool ok = false;
            for (std::size_t r : refs) {
                if (r == i) continue;
                if (holds(*query.relation, query.relation_strict, objects[i].bbox, objects[r].bbox)) {
                    ok = true;
                    break;
                }
            }
            if (ok) sols.push_back(i);
        }
        return sols;
    }
    case ReasoningType::Comparative: {
        auto target_rec = query.target_index();
        if (!target_rec) return {};
        auto pool = filter_objects(query.records[*target_rec], objects, ontology);
        if (pool.empty()) return {};
        auto metric = [&](std::size_t i) {
            const BBox& b = objects[i].bbox;
            switch (*query.comparator) {
            case Comparator::Largest:
            case Comparator::Smallest: return (b.x2 - b.x1) * (b.y2 - b.y1);
            case Comparator::Leftmost:
            case Comparator::Rightmost: return (b.x1 + b.x2) / 2.0;
            case Comparator::Topmost:
            case Comparator::Bottommost: return (b.y1 + b.y2) / 2.0;
            }
            return 0.0;
        };
        bool take_max = *query.comparator == Comparator::Largest ||
                        *query.comparator == Comparator::Rightmost ||
                        *query.comparator == Comparator::Bottommost;
        double best = metric(pool.front());
        for (std::size_t i : pool) {
            double v = metric(i);
            if (take_max ? v > best : v < best) best = v;
        }
        std::vector<std::size_t> sols;
        for (std::size_t i : pool)
            if (metric(i) == best) sols.push_back(i); // exact ties stay, flagged non-unique
        return sols;
    }
    case ReasoningType::Direct: {
        auto target_rec = query.target_index();
        if (!target_rec) return {};
        const QueryRecord& target = query.records[*target_rec];
        if (!target.share_with_reference) return filter_objects(target, objects, ontology);

        auto ref_idx = query.reference_index();
        if (!ref_idx) return {};
        auto anchors = filter_objects(query.records[*ref_idx], objects, ontology);
        const auto& loc = query.records[*ref_idx].locator;
        if (loc) {
            auto others = filter_objects(query.records[loc->other_record], objects, ontology);
            std::vector<std::size_t> kept;
            for (std::size_t a : anchors)
                for (std::size_t o : others)
                    if (o != a && holds(loc->rel, loc->strict, objects[a].bbox, objects[o].bbox)) {
                        kept.push_back(a);
                        break;
                    }
            anchors = std::move(kept);
        }
        if (anchors.size() != 1) return {}; // the cited reference must resolve uniquely
        std::size_t anchor = anchors.front();

        std::optional<std::string> wanted =
            *target.share_with_reference == SharedAttribute::Color ? objects[anchor].label.color
                                                                   : objects[anchor].label.toward;
        if (!wanted) return {};
        std::vector<std::size_t> sols;
        for (std::size_t i = 0; i < objects.size(); ++i) {
            if (i == anchor) continue;
            if (!object_matches(target, objects[i], ontology)) continue;
            const auto& attr = *target.share_with_reference == SharedAttribute::Color
                                   ? objects[i].label.color
                                   : objects[i].label.toward;
            if (attr == wanted) sols.push_back(i);
        }
        return sols;
    }
    }
    return {};
}

DetectionSet detections_from_objects(const std::vector<PlacedObject>& objects, double width,
                                     double height) {
    DetectionSet set;
    set.image_width = width;
    set.image_height = height;
    for (const auto& obj : objects) {
        Detection det;
        det.labels.push_back(AttributeTag{AttributeClass::Shape, obj.label.shape});
        if (obj.label.color) det.labels.push_back(AttributeTag{AttributeClass::Color, *obj.label.color});
        if (obj.label.toward)
            det.labels.push_back(AttributeTag{AttributeClass::Toward, *obj.label.toward});
        det.bbox = obj.bbox;
        det.center = center_of(obj.bbox);
        set.detections.push_back(std::move(det));
    }
    return set;
}

std::vector<PlacedObject> objects_from_detections(const DetectionSet& merged) {
    std::vector<PlacedObject> objects;
    for (const auto& det : merged.detections) {
        auto shape = det.shape();
        if (!shape) continue; // attribute fragment without an object identity
        PlacedObject obj;
        obj.label.shape = *shape;
        obj.label.color = det.color();
        obj.label.toward = det.toward();
        obj.bbox = det.bbox;
        objects.push_back(std::move(obj));
    }
    return objects;
}

DetectionSet apply_noise(const DetectionSet& detections, const NoiseSpec& noise,
                         const Ontology& ontology) {
    Rng rng(splitmix64(noise.seed ^ 0x6e6f697365ull));
    DetectionSet out;
    out.image_width = detections.image_width;
    out.image_height = detections.image_height;
    for (const auto& det : detections.detections) {
        if (noise.drop_rate > 0.0 && rand_real(rng, 0.0, 1.0) < noise.drop_rate) continue;
        Detection kept = det;
        if (noise.corrupt_rate > 0.0 && rand_real(rng, 0.0, 1.0) < noise.corrupt_rate) {
            for (auto& label : kept.labels) {
                if (label.cls == AttributeClass::Color) {
                    std::string other;
                    do {
                        other = pick(rng, ontology.colors());
                    } while (other == label.name && ontology.colors().size() > 1);
                    label.name = other;
                    break;
                }
                if (label.cls == AttributeClass::Toward) {
                    label.name = label.name == "front" ? "side" : "front";
                    break;
                }
            }
        }
        out.detections.push_back(std::move(kept));
    }
    return out;
}

// ---- generation ----

namespace {

struct Placer {
    const SceneSpec& spec;
    Rng& rng;
    std::vector<BBox> placed;

    bool fits(const BBox& b) const {
        if (b.x1 < kEdgeMargin || b.y1 < kEdgeMargin || b.x2 > spec.width - kEdgeMargin ||
            b.y2 > spec.height - kEdgeMargin)
            return false;
        for (const auto& other : placed) {
            BBox inflated{other.x1 - kPlacementGap, other.y1 - kPlacementGap,
                          other.x2 + kPlacementGap, other.y2 + kPlacementGap};
            double overlap = iou(b, inflated);
            if (spec.overlap == OverlapPolicy::Disjoint) {
                if (overlap > 0.0) return false;
            } else if (overlap > spec.stack_max_iou) {
                return false;
            }
        }
        return true;
    }

    std::optional<BBox> random_box(double min_size, double max_size, int attempts = 60) {
        for (int i = 0; i < attempts; ++i) {
            double w = rand_real(rng, min_size, max_size);
            double h = rand_real(rng, min_size, max_size);
            double x = rand_real(rng, kEdgeMargin, spec.width - kEdgeMargin - w);
            double y = rand_real(rng, kEdgeMargin, spec.height - kEdgeMargin - h);
            BBox b{x, y, x + w, y + h};
            if (fits(b)) {
                placed.push_back(b);
                return b;
            }
        }
        return std::nullopt;
    }

    bool add_fixed(const BBox& b) {
        if (!fits(b)) return false;
        placed.push_back(b);
        return true;
    }
};

struct Pools {
    std::vector<std::string> shapes;
    std::vector<std::string> colors;
    std::vector<std::string> towards;
};

Pools pools_for(const SceneSpec& spec, const Ontology& ontology) {
    Pools p;
    p.shapes = spec.shapes.empty() ? ontology.shapes() : spec.shapes;
    p.colors = spec.colors.empty() ? ontology.colors() : spec.colors;
    p.towards = spec.towards.empty() ? ontology.towards() : spec.towards;
    return p;
}

std::vector<std::string> sample_distinct_shapes(Rng& rng, const Pools& pools, std::size_t n) {
    std::vector<std::string> bag = pools.shapes;
    for (std::size_t i = 0; i + 1 < bag.size(); ++i) {
        std::size_t j = i + rng() % (bag.size() - i);
        std::swap(bag[i], bag[j]);
    }
    if (n > bag.size()) n = bag.size();
    bag.resize(n);
    return bag;
}

CompoundLabel random_label(Rng& rng, const Pools& pools, const std::string& shape) {
    CompoundLabel label;
    label.shape = shape;
    label.color = pick(rng, pools.colors);
    label.toward = pick(rng, pools.towards);
    return label;
}

// Question phrasing helpers. The templates stay inside the parser grammar so
// generation round-trips through it exactly.
std::string shape_phrase(const std::string& shape) {
    if (shape.size() == 1) {
        bool digit = std::isdigit(static_cast<unsigned char>(shape[0])) != 0;
        return std::string(digit ? "number" : "letter") + " '" + shape + "'";
    }
    return shape;
}

std::string describe_object(const CompoundLabel& label, bool with_color, bool with_toward) {
    std::string out;
    if (with_toward && label.toward) out += *label.toward + "-facing ";
    if (with_color && label.color) out += *label.color + " ";
    out += shape_phrase(label.shape);
    return out;
}

const char* relation_question_phrase(Relation rel) {
    switch (rel) {
    case Relation::Below: return "directly below";
    case Relation::Above: return "directly above";
    case Relation::LeftOf: return "directly to the left of";
    case Relation::RightOf: return "directly to the right of";
    }
    return "?";
}

GroundTruthRegion truth_from_box(const BBox& b, double width, double height) {
    return GroundTruthRegion{b.x1 / width, b.x2 / width, b.y1 / height, b.y2 / height};
}

struct Built {
    std::vector<PlacedObject> objects;
    std::string question;
    ParsedQuery intended;
    std::size_t answer = 0;
};

std::optional<Built> try_spatial(const SceneSpec& spec, Rng& rng, const Pools& pools,
                                 const Ontology& ontology) {
    (void)ontology;
    Built built;
    int count = rand_int(rng, std::max(2, spec.min_objects), std::max(2, spec.max_objects));
    auto shapes = sample_distinct_shapes(rng, pools, static_cast<std::size_t>(count));
    if (shapes.size() < 2) return std::nullopt;

    Relation rel = static_cast<Relation>(rand_int(rng, 0, 3));
    DirectionVector u = direction(rel);

    // Reference placement leaves room for a target that spans every probe
    // offset in [40,120] px along the relation direction.
    double rw = rand_real(rng, 28, 58);
    double rh = rand_real(rng, 28, 58);
    double reach = 145.0;
    double cx_lo = u.ux > 0 ? kEdgeMargin + rw / 2 + 2 : (u.ux < 0 ? kEdgeMargin + reach : 50.0);
    double cx_hi = u.ux > 0 ? spec.width - kEdgeMargin - reach
                            : (u.ux < 0 ? spec.width - kEdgeMargin - rw / 2 - 2 : spec.width - 50.0);
    double cy_lo = u.uy > 0 ? kEdgeMargin + rh / 2 + 2 : (u.uy < 0 ? kEdgeMargin + reach : 50.0);
    double cy_hi = u.uy > 0 ? spec.height - kEdgeMargin - reach
                            : (u.uy < 0 ? spec.height - kEdgeMargin - rh / 2 - 2 : spec.height - 50.0);
    if (cx_lo >= cx_hi || cy_lo >= cy_hi) return std::nullopt;
    double cx = rand_real(rng, cx_lo, cx_hi);
    double cy = rand_real(rng, cy_lo, cy_hi);
    BBox ref_box{cx - rw / 2, cy - rh / 2, cx + rw / 2, cy + rh / 2};

    double gap = rand_real(rng, 3, 6);
    double far_end = 124.0 + rand_real(rng, 0, 14);
    double m1 = rand_real(rng, 10, 38);
    double m2 = rand_real(rng, 10, 38);
    BBox target_box;
    if (u.uy > 0) target_box = BBox{cx - m1, ref_box.y2 + gap, cx + m2, cy + far_end};
    else if (u.uy < 0) target_box = BBox{cx - m1, cy - far_end, cx + m2, ref_box.y1 - gap};
    else if (u.ux > 0) target_box = BBox{ref_box.x2 + gap, cy - m1, cx + far_end, cy + m2};
    else target_box = BBox{cx - far_end, cy - m1, ref_box.x1 - gap, cy + m2};

    Placer placer{spec, rng, {}};
    if (!placer.add_fixed(ref_box) || !placer.add_fixed(target_box)) return std::nullopt;

    built.objects.push_back(PlacedObject{random_label(rng, pools, shapes[0]), ref_box});
    built.objects.push_back(PlacedObject{random_label(rng, pools, shapes[1]), target_box});
    built.answer = 1;

    for (int i = 2; i < count; ++i) {
        std::optional<BBox> box;
        for (int attempt = 0; attempt < 20 && !box; ++attempt) {
            box = placer.random_box(26, 62);
            if (box && holds(rel, /*strict=*/true, *box, ref_box)) {
                placer.placed.pop_back(); // would be a second aligned answer
                box.reset();
            }
        }
        if (!box) break; // a sparse scene is still a valid scene
        built.objects.push_back(PlacedObject{random_label(rng, pools, shapes[i]), *box});
    }

    const PlacedObject& ref = built.objects[0];
    built.question = "Please click on the object " +
                     std::string(relation_question_phrase(rel)) + " the " +
                     shape_phrase(ref.label.shape) + ".";

    QueryRecord ref_rec;
    ref_rec.shape = ShapeSpec{false, ref.label.shape};
    ref_rec.role = Role::Reference;
    built.intended.records.push_back(ref_rec);
    built.intended.relation = rel;
    built.intended.relation_strict = true;
    built.intended.reasoning_type = ReasoningType::Spatial;
    built.intended.raw_text = built.question;
    return built;
}

std::optional<Built> try_direct(const SceneSpec& spec, Rng& rng, const Pools& pools,
                                const Ontology& ontology) {
    Built built;
    int count = rand_int(rng, std::max(2, spec.min_objects), std::max(2, spec.max_objects));
    bool constraint_form = pools.towards.size() > 1 && rand_real(rng, 0, 1) < 0.25;

    Placer placer{spec, rng, {}};
    if (constraint_form) {
        // "the <category> that matches the <color|direction> of the <ref>".
        auto shapes = sample_distinct_shapes(rng, pools, 1);
        if (shapes.empty()) return std::nullopt;
        bool use_color = rand_real(rng, 0, 1) < 0.5 && pools.colors.size() > 1;

        auto ref_box = placer.random_box(28, 60);
        if (!ref_box) return std::nullopt;
        PlacedObject ref{random_label(rng, pools, shapes[0]), *ref_box};
        built.objects.push_back(ref);

        CoarseCategory cat = rand_real(rng, 0, 1) < 0.5 ? CoarseCategory::Number
                                                        : CoarseCategory::Letter;
        const auto& members = ontology.category_members(cat);
        int member_count = rand_int(rng, 2, 4);
        std::vector<std::string> member_shapes;
        for (int i = 0; i < member_count; ++i) {
            std::string s;
            int guard = 0;
            do {
                s = members[rng() % members.size()];
                ++guard;
            } while (guard < 50 &&
                     (s == ref.label.shape ||
                      std::find(member_shapes.begin(), member_shapes.end(), s) !=
                          member_shapes.end()));
            if (guard >= 50) return std::nullopt;
            member_shapes.push_back(s);
        }

        for (int i = 0; i < member_count; ++i) {
            auto box = placer.random_box(26, 58);
            if (!box) return std::nullopt;
            CompoundLabel label = random_label(rng, pools, member_shapes[i]);
            if (use_color) {
                if (i == 0) label.color = ref.label.color;
                else {
                    std::string c;
                    do { c = pick(rng, pools.colors); } while (c == ref.label.color);
                    label.color = c;
                }
            } else {
                if (i == 0) label.toward = ref.label.toward;
                else label.toward = *ref.label.toward == "front" ? "side" : "front";
            }
            built.objects.push_back(PlacedObject{label, *box});
            if (i == 0) built.answer = built.objects.size() - 1;
        }

        built.question = "Please click on the " + std::string(Ontology::category_name(cat)) +
                         " that matches the " + (use_color ? "color" : "direction") + " of the " +
                         describe_object(ref.label, true, false) + ".";

        QueryRecord ref_rec;
        ref_rec.shape = ShapeSpec{false, ref.label.shape};
        ref_rec.color = ref.label.color;
        ref_rec.role = Role::Reference;
        QueryRecord target_rec;
        target_rec.shape = ShapeSpec{true, Ontology::category_name(cat)};
        target_rec.role = Role::Target;
        target_rec.share_with_reference =
            use_color ? SharedAttribute::Color : SharedAttribute::Toward;
        built.intended.records.push_back(ref_rec);
        built.intended.records.push_back(target_rec);
        built.intended.reasoning_type = ReasoningType::Direct;
        built.intended.raw_text = built.question;

        // Remaining filler objects must stay outside the category pool and
        // away from the reference description.
        for (int i = static_cast<int>(built.objects.size()); i < count; ++i) {
            auto box = placer.random_box(26, 62);
            if (!box) break;
            std::string shape;
            int guard = 0;
            do {
                shape = pick(rng, pools.shapes);
                ++guard;
            } while (guard < 50 &&
                     (shape == ref.label.shape ||
                      std::find(members.begin(), members.end(), shape) != members.end()));
            if (guard >= 50) { placer.placed.pop_back(); break; }
            built.objects.push_back(PlacedObject{random_label(rng, pools, shape), *box});
        }
        return built;
    }

    // Plain attribute conjunction.
    auto shapes = sample_distinct_shapes(rng, pools, static_cast<std::size_t>(count));
    if (shapes.empty()) return std::nullopt;
    int specificity = rand_int(rng, 0, 2); // 0 shape, 1 +color, 2 +toward
    auto target_box = placer.random_box(28, 60);
    if (!target_box) return std::nullopt;
    PlacedObject target{random_label(rng, pools, shapes[0]), *target_box};
    built.objects.push_back(target);
    built.answer = 0;

    QueryRecord rec;
    rec.shape = ShapeSpec{false, target.label.shape};
    if (specificity >= 1 && pools.colors.size() > 1) rec.color = target.label.color;
    if (specificity >= 2) rec.toward = target.label.toward;
    rec.role = Role::Target;

    for (std::size_t i = 1; i < shapes.size(); ++i) {
        auto box = placer.random_box(26, 62);
        if (!box) break;
        built.objects.push_back(PlacedObject{random_label(rng, pools, shapes[i]), *box});
    }

    built.question = "Please click on the " +
                     describe_object(target.label, rec.color.has_value(), rec.toward.has_value()) +
                     ".";
    built.intended.records.push_back(rec);
    built.intended.reasoning_type = ReasoningType::Direct;
    built.intended.raw_text = built.question;
    return built;
}

std::optional<Built> try_comparative(const SceneSpec& spec, Rng& rng, const Pools& pools,
                                     const Ontology& ontology) {
    (void)ontology;
    Built built;
    int count = rand_int(rng, std::max(3, spec.min_objects), std::max(3, spec.max_objects));
    Comparator comp = static_cast<Comparator>(rand_int(rng, 0, 5));
    bool with_color = pools.colors.size() > 1 && rand_real(rng, 0, 1) < 0.4;

    auto shapes = sample_distinct_shapes(rng, pools, static_cast<std::size_t>(count));
    if (shapes.size() < 2) return std::nullopt;
    const std::string& comp_shape = shapes[0];
    std::optional<std::string> comp_color =
        with_color ? std::optional<std::string>(pick(rng, pools.colors)) : std::nullopt;

    int pool_count = rand_int(rng, 2, std::min(4, count - 1));
    Placer placer{spec, rng, {}};

    bool area_comp = comp == Comparator::Largest || comp == Comparator::Smallest;
    std::vector<std::size_t> pool_indices;
    double size = rand_real(rng, 22, 28);
    for (int i = 0; i < pool_count; ++i) {
        std::optional<BBox> box;
        if (area_comp) {
            // Distinct areas, 1.3x apart.
            for (int a = 0; a < 60 && !box; ++a) {
                double w = size * rand_real(rng, 0.95, 1.05);
                double h = (size * size) / w;
                double x = rand_real(rng, kEdgeMargin, spec.width - kEdgeMargin - w);
                double y = rand_real(rng, kEdgeMargin, spec.height - kEdgeMargin - h);
                BBox b{x, y, x + w, y + h};
                if (placer.add_fixed(b)) box = b;
            }
            size *= 1.35;
        } else {
            box = placer.random_box(24, 56);
        }
        if (!box) return std::nullopt;
        CompoundLabel label = random_label(rng, pools, comp_shape);
        if (comp_color) label.color = comp_color;
        built.objects.push_back(PlacedObject{label, *box});
        pool_indices.push_back(built.objects.size() - 1);
    }

    if (!area_comp) {
        // Enforce a clear margin on the compared axis.
        auto axis_value = [&](std::size_t i) {
            const BBox& b = built.objects[i].bbox;
            return (comp == Comparator::Leftmost || comp == Comparator::Rightmost)
                       ? (b.x1 + b.x2) / 2.0
                       : (b.y1 + b.y2) / 2.0;
        };
        for (std::size_t i = 0; i < pool_indices.size(); ++i)
            for (std::size_t j = i + 1; j < pool_indices.size(); ++j)
                if (std::fabs(axis_value(pool_indices[i]) - axis_value(pool_indices[j])) < 12.0)
                    return std::nullopt;
    }

    for (std::size_t i = 1; i < shapes.size() && built.objects.size() < std::size_t(count); ++i) {
        auto box = placer.random_box(26, 62);
        if (!box) break;
        built.objects.push_back(PlacedObject{random_label(rng, pools, shapes[i]), *box});
    }

    QueryRecord rec;
    rec.shape = ShapeSpec{false, comp_shape};
    rec.color = comp_color;
    rec.role = Role::Target;

    // Winner under the oracle metric.
    auto metric = [&](std::size_t i) {
        const BBox& b = built.objects[i].bbox;
        if (area_comp) return (b.x2 - b.x1) * (b.y2 - b.y1);
        if (comp == Comparator::Leftmost || comp == Comparator::Rightmost)
            return (b.x1 + b.x2) / 2.0;
        return (b.y1 + b.y2) / 2.0;
    };
    bool take_max = comp == Comparator::Largest || comp == Comparator::Rightmost ||
                    comp == Comparator::Bottommost;
    built.answer = pool_indices.front();
    for (std::size_t i : pool_indices)
        if (take_max ? metric(i) > metric(built.answer) : metric(i) < metric(built.answer))
            built.answer = i;

    std::string desc = comp_color ? *comp_color + " " + shape_phrase(comp_shape)
                                  : shape_phrase(comp_shape);
    built.question = "Please click on the " + std::string(to_string(comp)) + " " + desc + ".";

    built.intended.records.push_back(rec);
    built.intended.comparator = comp;
    built.intended.reasoning_type = ReasoningType::Comparative;
    built.intended.raw_text = built.question;
    return built;
}

} // namespace

GeneratedChallenge generate_challenge(const SceneSpec& spec, std::optional<QuestionType> qtype,
                                      std::uint64_t seed, const Ontology& ontology,
                                      const std::string& id) {
    Rng rng(splitmix64(seed));
    Pools pools = pools_for(spec, ontology);
    if (pools.shapes.empty() || pools.colors.empty() || pools.towards.empty())
        fail(ErrorKind::ConfigError, "empty attribute pool");

    double total = spec.w_direct + spec.w_spatial + spec.w_comparative;
    if (!(total > 0.0)) fail(ErrorKind::ConfigError, "question type weights sum to zero");

    for (int attempt = 0; attempt < kMaxSceneAttempts; ++attempt) {
        QuestionType t;
        if (qtype) {
            t = *qtype;
        } else {
            double roll = rand_real(rng, 0.0, total);
            t = roll < spec.w_direct ? QuestionType::Direct
                : roll < spec.w_direct + spec.w_spatial ? QuestionType::Spatial
                                                        : QuestionType::Comparative;
        }
        std::optional<Built> built;
        switch (t) {
        case QuestionType::Direct: built = try_direct(spec, rng, pools, ontology); break;
        case QuestionType::Spatial: built = try_spatial(spec, rng, pools, ontology); break;
        case QuestionType::Comparative: built = try_comparative(spec, rng, pools, ontology); break;
        }
        if (!built) continue;

        validate(built->intended);
        auto sols = brute_force_solve(built->objects, built->intended, ontology);
        if (sols.size() != 1 || sols.front() != built->answer) continue;

        GeneratedChallenge gen;
        gen.objects = built->objects;
        gen.intended = built->intended;
        gen.answer_index = built->answer;
        gen.challenge.id = id;
        gen.challenge.question = built->question;
        gen.challenge.image_width = spec.width;
        gen.challenge.image_height = spec.height;
        gen.challenge.truth =
            truth_from_box(built->objects[built->answer].bbox, spec.width, spec.height);
        gen.challenge.detections = detections_from_objects(gen.objects, spec.width, spec.height);
        return gen;
    }
    fail(ErrorKind::NoUniqueQuestion,
         "no unique question after " + std::to_string(kMaxSceneAttempts) + " attempts");
}

std::vector<GeneratedChallenge> generate_corpus(const SceneSpec& spec, int count,
                                                std::uint64_t seed, const Ontology& ontology,
                                                std::optional<QuestionType> qtype,
                                                const NoiseSpec* noise,
                                                const std::string& id_prefix) {
    if (count <= 0) fail(ErrorKind::ConfigError, "corpus count must be positive");
    std::vector<GeneratedChallenge> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        char id[64];
        std::snprintf(id, sizeof id, "%s-%06d", id_prefix.c_str(), i);
        auto gen = generate_challenge(spec, qtype, splitmix64(seed) ^ splitmix64(i + 1), ontology, id);
        if (noise) {
            NoiseSpec per = *noise;
            per.seed = splitmix64(noise->seed ^ splitmix64(i + 101));
            gen.challenge.detections = apply_noise(gen.challenge.detections, per, ontology);
        }
        out.push_back(std::move(gen));
    }
    return out;
}

const std::vector<std::string>& profile_names() {
    static const std::vector<std::string> names = {"vtt",       "geetest", "netease",
                                                   "dingxiang", "shumei",  "xiaodun"};
    return names;
}

SceneSpec profile_spec(const std::string& name) {
    const Ontology& onto = Ontology::standard();
    auto solids = onto.category_members(CoarseCategory::Solid3d);
    auto letters = onto.category_members(CoarseCategory::Letter);
    auto numbers = onto.category_members(CoarseCategory::Number);

    auto merge = [](std::initializer_list<const std::vector<std::string>*> lists) {
        std::vector<std::string> out;
        for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
        return out;
    };

    SceneSpec spec;
    if (name == "vtt") {
        spec.min_objects = 10;
        spec.max_objects = 20;
        spec.shapes = merge({&solids, &letters, &numbers});
        spec.w_direct = 1;
        spec.w_spatial = 1;
        spec.w_comparative = 1;
    } else if (name == "xiaodun") {
        spec.min_objects = 12;
        spec.max_objects = 14;
        spec.shapes = merge({&solids, &letters, &numbers});
        spec.overlap = OverlapPolicy::Stacked;
        spec.stack_max_iou = 0.3;
        spec.w_direct = 1;
        spec.w_spatial = 1;
        spec.w_comparative = 0.5;
    } else if (name == "geetest") {
        spec.min_objects = 7;
        spec.max_objects = 10;
        spec.shapes = solids;
        spec.w_direct = 1;
        spec.w_spatial = 1;
        spec.w_comparative = 1;
    } else if (name == "netease") {
        spec.min_objects = 5;
        spec.max_objects = 7;
        spec.shapes = merge({&solids, &letters, &numbers});
        spec.w_direct = 2;
        spec.w_spatial = 0.5;
        spec.w_comparative = 0.5;
    } else if (name == "dingxiang") {
        spec.min_objects = 5;
        spec.max_objects = 5;
        spec.shapes = merge({&solids, &letters});
        spec.w_direct = 0.5;
        spec.w_spatial = 1;
        spec.w_comparative = 1;
    } else if (name == "shumei") {
        spec.min_objects = 6;
        spec.max_objects = 6;
        spec.shapes = solids;
        spec.w_direct = 0;
        spec.w_spatial = 0;
        spec.w_comparative = 1;
    } else {
        fail(ErrorKind::ConfigError, "unknown profile '" + name + "'");
    }
    return spec;
}

} // namespace vrc
