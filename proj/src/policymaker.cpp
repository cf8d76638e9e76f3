#include "vrc/policymaker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>

namespace vrc {

Answer parse_backend_answer(std::string_view text) {
    static const std::regex pair_re(
        R"(\(\s*[-+]?[0-9]+(?:\.[0-9]+)?\s*,\s*[-+]?[0-9]+(?:\.[0-9]+)?\s*\))");
    std::string s(text);
    auto begin = std::sregex_iterator(s.begin(), s.end(), pair_re);
    auto end = std::sregex_iterator();
    std::size_t count = std::distance(begin, end);
    if (count == 0) fail(ErrorKind::MalformedAnswer, "no coordinate pair in: " + s);
    if (count > 1) fail(ErrorKind::MalformedAnswer, "multiple coordinate pairs in: " + s);

    std::string m = begin->str();
    double x = 0.0, y = 0.0;
    if (std::sscanf(m.c_str(), " ( %lf , %lf )", &x, &y) != 2)
        fail(ErrorKind::MalformedAnswer, "unreadable coordinate pair: " + m);
    if (!std::isfinite(x) || !std::isfinite(y))
        fail(ErrorKind::MalformedAnswer, "non-finite coordinate: " + m);
    return Answer{Point{x, y}};
}

std::string format_answer(const Point& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.1f, %.1f)", p.x, p.y);
    return buf;
}

bool relation_satisfied(Relation rel, bool strict, const BBox& target, const BBox& reference) {
    Point rc = center_of(reference);
    switch (rel) {
    case Relation::LeftOf:
        if (!(target.x2 < reference.x1)) return false;
        return !strict || (target.y1 <= rc.y && rc.y <= target.y2);
    case Relation::RightOf:
        if (!(target.x1 > reference.x2)) return false;
        return !strict || (target.y1 <= rc.y && rc.y <= target.y2);
    case Relation::Above:
        if (!(target.y2 < reference.y1)) return false;
        return !strict || (target.x1 <= rc.x && rc.x <= target.x2);
    case Relation::Below:
        if (!(target.y1 > reference.y2)) return false;
        return !strict || (target.x1 <= rc.x && rc.x <= target.x2);
    }
    return false;
}

namespace {

bool labels_match_record(const QueryRecord& record, const Candidate& cand,
                         const Ontology& ontology) {
    Detection det;
    det.labels = cand.labels;
    return record_matches(record, det, ontology);
}

std::optional<std::string> label_of_class(const Candidate& cand, AttributeClass cls) {
    for (const auto& l : cand.labels)
        if (l.cls == cls) return l.name;
    return std::nullopt;
}

// Resolves the query's reference to exactly one candidate, applying the
// locator qualifier when present.
const Candidate* resolve_unique_reference(const ParsedQuery& query,
                                          const CandidateSet& candidates) {
    auto ref_idx = query.reference_index();
    if (!ref_idx) fail(ErrorKind::NoMatch, "constraint without a reference record");
    const QueryRecord& ref_record = query.records[*ref_idx];

    std::vector<const Candidate*> anchors;
    for (const auto& cand : candidates.candidates)
        if (cand.matched_record == *ref_idx && !cand.tagged_maybe_result())
            anchors.push_back(&cand);

    if (ref_record.locator) {
        const Locator& loc = *ref_record.locator;
        std::vector<const Candidate*> others;
        for (const auto& cand : candidates.candidates)
            if (cand.matched_record == loc.other_record) others.push_back(&cand);
        std::vector<const Candidate*> kept;
        for (const Candidate* a : anchors) {
            if (!a->bbox) continue;
            for (const Candidate* o : others) {
                if (o == a || !o->bbox) continue;
                if (relation_satisfied(loc.rel, loc.strict, *a->bbox, *o->bbox)) {
                    kept.push_back(a);
                    break;
                }
            }
        }
        anchors = std::move(kept);
    }

    if (anchors.empty()) fail(ErrorKind::NoMatch, "reference resolves to nothing");
    if (anchors.size() > 1) fail(ErrorKind::Ambiguous, "reference resolves to several objects");
    return anchors.front();
}

} // namespace

Answer resolve_direct(const ParsedQuery& query, const CandidateSet& candidates,
                      const Ontology& ontology) {
    auto target_idx = query.target_index();
    if (!target_idx) fail(ErrorKind::NoMatch, "direct query without a target record");
    const QueryRecord& target = query.records[*target_idx];

    std::vector<const Candidate*> matches;
    if (target.share_with_reference) {
        const Candidate* anchor = resolve_unique_reference(query, candidates);
        AttributeClass cls = *target.share_with_reference == SharedAttribute::Color
                                 ? AttributeClass::Color
                                 : AttributeClass::Toward;
        auto wanted = label_of_class(*anchor, cls);
        if (!wanted)
            fail(ErrorKind::NoMatch,
                 std::string("reference carries no ") + (cls == AttributeClass::Color ? "color" : "orientation"));
        for (const auto& cand : candidates.candidates) {
            if (&cand == anchor || cand.tagged_maybe_result()) continue;
            if (cand.source_detection != kNoIndex &&
                cand.source_detection == anchor->source_detection)
                continue;
            if (!labels_match_record(target, cand, ontology)) continue;
            if (label_of_class(cand, cls) == wanted) matches.push_back(&cand);
        }
    } else {
        for (const auto& cand : candidates.candidates) {
            if (cand.tagged_maybe_result()) continue;
            if (labels_match_record(target, cand, ontology)) matches.push_back(&cand);
        }
    }

    if (matches.empty()) fail(ErrorKind::NoMatch, "no candidate matches the description");
    if (matches.size() > 1)
        fail(ErrorKind::Ambiguous,
             std::to_string(matches.size()) + " candidates match the description");
    return Answer{matches.front()->center};
}

Answer resolve_spatial(const ParsedQuery& query, const CandidateSet& candidates,
                       const Ontology& ontology) {
    (void)ontology;
    std::vector<const Candidate*> tagged;
    for (const auto& cand : candidates.candidates)
        if (cand.tagged_maybe_result()) tagged.push_back(&cand);

    if (!tagged.empty()) {
        // Most-specific reference first, then traversal order.
        auto specificity = [&](const Candidate* t) {
            if (!t->link) return 0;
            const Candidate& ref = candidates.candidates[*t->link];
            if (ref.matched_record == kNoIndex) return 0;
            const QueryRecord& rec = query.records[ref.matched_record];
            return int(rec.shape.has_value()) + int(rec.color.has_value()) +
                   int(rec.toward.has_value());
        };
        const Candidate* best = tagged.front();
        for (const Candidate* t : tagged)
            if (specificity(t) > specificity(best)) best = t;
        return Answer{best->center};
    }

    // No link: enforce the stated relation geometrically over candidate boxes.
    if (!query.relation) fail(ErrorKind::NoMatch, "spatial resolution without a relation");
    auto ref_idx = query.reference_index();
    if (!ref_idx) fail(ErrorKind::NoMatch, "spatial query without a reference record");

    const Candidate* best = nullptr;
    double best_distance = 0.0;
    DirectionVector u = direction(*query.relation);
    for (const auto& ref : candidates.candidates) {
        if (ref.matched_record != *ref_idx || ref.tagged_maybe_result() || !ref.bbox) continue;
        for (const auto& cand : candidates.candidates) {
            if (&cand == &ref || cand.tagged_maybe_result() || !cand.bbox) continue;
            if (cand.matched_record == *ref_idx) continue;
            if (!relation_satisfied(*query.relation, query.relation_strict, *cand.bbox, *ref.bbox))
                continue;
            double d = u.ux != 0 ? std::fabs(cand.center.x - ref.center.x)
                                 : std::fabs(cand.center.y - ref.center.y);
            if (!best || d < best_distance) {
                best = &cand;
                best_distance = d;
            }
        }
    }
    if (!best) fail(ErrorKind::NoMatch, "no candidate satisfies the relation");
    return Answer{best->center};
}

Answer resolve_comparative(const ParsedQuery& query, const CandidateSet& candidates,
                           const Ontology& ontology) {
    (void)ontology;
    if (!query.comparator) fail(ErrorKind::NoMatch, "comparative query without a comparator");
    std::vector<const Candidate*> pool;
    for (const auto& cand : candidates.candidates)
        if (!cand.tagged_maybe_result()) pool.push_back(&cand);
    if (pool.empty()) fail(ErrorKind::NoMatch, "empty candidate set");

    auto metric = [&](const Candidate* c) -> double {
        switch (*query.comparator) {
        case Comparator::Largest:
        case Comparator::Smallest:
            if (!c->bbox) fail(ErrorKind::NoMatch, "area comparison without a bounding box");
            return c->bbox->area();
        case Comparator::Leftmost:
        case Comparator::Rightmost: return c->center.x;
        case Comparator::Topmost:
        case Comparator::Bottommost: return c->center.y;
        }
        return 0.0;
    };
    bool take_max = *query.comparator == Comparator::Largest ||
                    *query.comparator == Comparator::Rightmost ||
                    *query.comparator == Comparator::Bottommost;

    const Candidate* best = pool.front();
    double best_value = metric(best);
    for (const Candidate* c : pool) {
        double v = metric(c);
        if (take_max ? v > best_value : v < best_value) {
            best = c;
            best_value = v;
        }
    }
    return Answer{best->center};
}

} // namespace vrc
