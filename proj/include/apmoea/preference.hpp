#pragma once

#include <cstddef>
#include <vector>

#include "apmoea/config.hpp"
#include "apmoea/objective.hpp"

namespace apmoea::pref {

/// Per-objective cutoffs derived from a front before outliers are dropped:
/// `quartile[i]` is the value at the 75% position of objective i (ceiling
/// index over the sorted column) and `worst[i]` is the column maximum.
struct QuartileBounds {
    ObjectiveVector quartile;
    ObjectiveVector worst;
};

struct FilteredFront {
    std::vector<ObjectiveVector> survivors;
    std::vector<std::size_t> survivor_indices;  // into the original front
    QuartileBounds bounds;
};

/// Drops every point that exceeds the 75% cutoff in any objective.  Fronts
/// with fewer than four points are passed through unfiltered (their bounds
/// degenerate to the column maxima), and a filter that would empty the set
/// keeps it unfiltered instead.
FilteredFront filter_upper_quartile(const std::vector<ObjectiveVector>& front);

/// Hyperplane through one extreme point per objective.
struct Hyperplane {
    std::vector<ObjectiveVector> extreme_points;  // one per objective
    ObjectiveVector normal;                       // unit length unless degenerate
    double offset = 0.0;                          // plane: normal . x == offset
    bool degenerate = false;                      // extremes affinely dependent

    /// Signed distance; negative on the side of the ideal point.
    double signed_distance(const ObjectiveVector& x) const;
};

/// Extreme point per objective (argmax of that objective, ties resolved by
/// lexicographically smallest vector, then input order) and the hyperplane
/// through them, oriented so the ideal point (component-wise minimum of the
/// input) sits on the negative side.  Affinely dependent extremes are
/// reported with `degenerate` set and an unusable normal.
Hyperplane extreme_points(const std::vector<ObjectiveVector>& survivors);

enum class FrontShape { Convex, Concave, Linear };

std::string to_string(FrontShape s);

struct ConvexityVerdict {
    FrontShape shape = FrontShape::Linear;
    std::size_t num_convex = 0;   // strictly on the ideal-point side
    std::size_t num_concave = 0;  // strictly on the far side
};

/// Majority vote over the side of the hyperplane each survivor falls on.
/// Convex when the ideal-side excess exceeds epsilon, concave for the
/// opposite excess, linear otherwise (and always for a degenerate plane,
/// with both counts zero).
ConvexityVerdict classify_convexity(const std::vector<ObjectiveVector>& survivors,
                                    const Hyperplane& plane, double epsilon);

/// Knee of a mutually non-dominated front.  The front is quartile-filtered,
/// a hyperplane is fitted through the per-objective extremes of the
/// survivors, and the shape vote picks the rule:
///   convex / concave -> survivor farthest from the plane on that side,
///   linear           -> survivor maximizing prod_i (worst[i] - f[i]),
/// where `worst` comes from the unfiltered front.  A singleton front is its
/// own knee.
ObjectiveVector find_knee(const std::vector<ObjectiveVector>& front, double epsilon);

/// Axis-aligned preference box around a knee.  Lower bound is the origin.
struct PreferenceRegion {
    ObjectiveVector knee;
    ObjectiveVector upper_bound;

    bool contains(const ObjectiveVector& x) const {
        if (x.size() != upper_bound.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > upper_bound[i]) return false;
        return true;
    }
};

/// upper_bound[i] = knee[i] + (worst[i] - knee[i]) * 0.85.
/// Requires knee[i] <= worst[i] in every objective.
PreferenceRegion compute_preference_region(const ObjectiveVector& knee,
                                           const ObjectiveVector& worst);

/// Euclidean distance from a point to the region's knee, in raw objective
/// space (no normalization).
double knee_distance(const ObjectiveVector& objectives, const PreferenceRegion& region);

/// Everything one region build produces, for event logs and reports.
struct RegionBuildInfo {
    PreferenceRegion region;
    ConvexityVerdict verdict;
    QuartileBounds bounds;
    double epsilon = 0.0;  // resolved vote margin (count units)
};

/// Full build pipeline on a mutually non-dominated front.  The vote margin
/// is ceil(epsilon_fraction * survivor count).
RegionBuildInfo build_preference_region(const std::vector<ObjectiveVector>& front,
                                        double epsilon_fraction);

/// Evaluation count that triggers the first region build.
long long first_region_threshold(const EvolutionConfig& config);

/// Advances the region-build threshold by floor(budget * (1 - learning
/// fraction) / region_updates).  The step that would cross
/// total_budget - population_size is clamped onto it, so the final build
/// still leaves one population's worth of evaluations to exploit the
/// region; afterwards the threshold escapes past the budget and disables
/// further builds.
long long update_region_threshold(long long current, const EvolutionConfig& config);

}  // namespace apmoea::pref
