#include "apmoea/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace apmoea::metrics {

namespace {

/// 2-D staircase sweep over points already clipped against the reference.
double hypervolume_2d(std::vector<ObjectiveVector> pts, double ref0, double ref1) {
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] < b[1];
    });
    double volume = 0.0;
    double prev_f0 = 0.0;
    double best_f1 = ref1;  // lowest second objective seen so far
    bool open = false;
    for (const auto& p : pts) {
        if (p[1] >= best_f1) continue;  // dominated by an earlier staircase step
        if (open) volume += (p[0] - prev_f0) * (ref1 - best_f1);
        prev_f0 = p[0];
        best_f1 = p[1];
        open = true;
    }
    if (open) volume += (ref0 - prev_f0) * (ref1 - best_f1);
    return volume;
}

}  // namespace

double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
    const std::size_t m = ref.size();
    if (m != 2 && m != 3)
        throw std::invalid_argument("hypervolume: supported for 2 or 3 objectives only");
    std::vector<ObjectiveVector> clipped;
    clipped.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != m)
            throw std::invalid_argument("hypervolume: point width differs from reference");
        bool inside = true;
        for (std::size_t i = 0; i < m && inside; ++i)
            if (p[i] >= ref[i]) inside = false;
        if (inside) clipped.push_back(p);
    }
    if (clipped.empty()) return 0.0;

    if (m == 2) return hypervolume_2d(std::move(clipped), ref[0], ref[1]);

    // Slice along the third objective: between consecutive cut values the
    // dominated area in the first two objectives is constant.
    std::vector<double> cuts;
    cuts.reserve(clipped.size());
    for (const auto& p : clipped) cuts.push_back(p[2]);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double volume = 0.0;
    for (std::size_t t = 0; t < cuts.size(); ++t) {
        const double z = cuts[t];
        const double depth = (t + 1 < cuts.size() ? cuts[t + 1] : ref[2]) - z;
        std::vector<ObjectiveVector> active;
        for (const auto& p : clipped)
            if (p[2] <= z) active.push_back({p[0], p[1]});
        volume += depth * hypervolume_2d(std::move(active), ref[0], ref[1]);
    }
    return volume;
}

std::vector<ObjectiveVector> restrict_to_region(const std::vector<ObjectiveVector>& points,
                                                const pref::PreferenceRegion& region) {
    std::vector<ObjectiveVector> inside;
    for (const auto& p : points)
        if (region.contains(p)) inside.push_back(p);
    return inside;
}

std::string to_string(KneeRelation r) {
    switch (r) {
        case KneeRelation::Incomparable: return "incomparable";
        case KneeRelation::Dominated: return "dominated";
        case KneeRelation::Dominating: return "dominating";
    }
    return "incomparable";
}

RegionComparison classify_knee_relation(const ObjectiveVector& knee,
                                        const std::vector<ObjectiveVector>& solutions,
                                        const pref::PreferenceRegion& region) {
    for (std::size_t i = 0; i < solutions.size(); ++i)
        for (std::size_t j = i + 1; j < solutions.size(); ++j)
            if (dominates(solutions[i], solutions[j]) || dominates(solutions[j], solutions[i]))
                throw std::invalid_argument(
                    "classify_knee_relation: solution set is not mutually non-dominated");

    RegionComparison cmp;
    cmp.knee_in_region = region.contains(knee);
    bool dominated = false, dominating = false;
    for (const auto& s : solutions) {
        if (dominates(s, knee)) dominated = true;
        if (dominates(knee, s)) dominating = true;
    }
    if (dominated && dominating)
        throw std::logic_error("classify_knee_relation: contradictory dominance directions");
    cmp.relation = dominated ? KneeRelation::Dominated
                             : dominating ? KneeRelation::Dominating : KneeRelation::Incomparable;
    return cmp;
}

}  // namespace apmoea::metrics
