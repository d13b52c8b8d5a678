#pragma once

#include <string>
#include <vector>

#include "apmoea/objective.hpp"
#include "apmoea/preference.hpp"

namespace apmoea::metrics {

/// Exact hypervolume dominated by `points` against reference `ref`
/// (minimization; only coordinates strictly below the reference count).
/// Points not strictly better than the reference in every coordinate are
/// clipped out; dominated and duplicate points are harmless.  Supports 2
/// and 3 objectives: 2-D by a sorted staircase sweep, 3-D by slicing the
/// third objective and sweeping each slab in 2-D.
double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref);

/// Members of `points` lying inside the region box (component-wise not
/// above its upper bound).  Order is preserved.
std::vector<ObjectiveVector> restrict_to_region(const std::vector<ObjectiveVector>& points,
                                                const pref::PreferenceRegion& region);

enum class KneeRelation { Incomparable, Dominated, Dominating };

std::string to_string(KneeRelation r);

struct RegionComparison {
    bool knee_in_region = false;
    KneeRelation relation = KneeRelation::Incomparable;
};

/// How one algorithm's knee point relates to another's solution set:
/// Dominated when some member of `solutions` strictly dominates the knee,
/// Dominating when the knee strictly dominates some member, Incomparable
/// otherwise (vector equality counts as incomparable).  `solutions` must be
/// mutually non-dominated, which also rules out both directions holding at
/// once.
RegionComparison classify_knee_relation(const ObjectiveVector& knee,
                                        const std::vector<ObjectiveVector>& solutions,
                                        const pref::PreferenceRegion& region);

}  // namespace apmoea::metrics
