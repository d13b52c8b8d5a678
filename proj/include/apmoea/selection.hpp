#pragma once

#include <cstddef>
#include <vector>

#include "apmoea/config.hpp"
#include "apmoea/objective.hpp"
#include "apmoea/preference.hpp"
#include "apmoea/sorting.hpp"

namespace apmoea {

enum class SecondCriterion { Crowding, Diversity };

/// One survivor of a truncation, with the bookkeeping used to pick it.
struct SelectedMember {
    std::size_t index;        // into the merged input
    int rank;                 // dominance rank in the merged input
    double secondary;         // second-criterion key (set on the split front only)
    double knee;              // distance to the region knee, +inf without a region
};

/// Best-to-worst ordering of one mutually non-dominated front (given as
/// indices into `points`).  Keys, in order:
///   1. second criterion, descending.  With a region present, members
///      outside it are pushed below every member inside (their key is
///      treated as -infinity), which is what steers the population into
///      the region while never hard-rejecting anyone.
///   2. distance to the region knee, ascending (all equal when no region).
///   3. position in `front`, ascending.
std::vector<std::size_t> order_front(const std::vector<ObjectiveVector>& points,
                                     const std::vector<std::size_t>& front,
                                     SecondCriterion criterion,
                                     const pref::PreferenceRegion* region);

/// Generational truncation of a merged parent+offspring pool down to `mu`
/// members: whole fronts are admitted in rank order and the first front
/// that overflows is cut with order_front.  Survivors are reported in
/// stable (input) order.
std::vector<SelectedMember> select_survivors(const std::vector<ObjectiveVector>& merged,
                                             std::size_t mu, SecondCriterion criterion,
                                             const pref::PreferenceRegion* region);

struct RemovalResult {
    std::size_t removed;        // index into the merged input
    RankedFronts merged_fronts;  // dominance partition of the merged input
};

/// Steady-state removal: drops the worst member of the worst front, judged
/// by the diversity contribution (both variants) with the same key chain
/// as order_front.  A singleton worst front is dropped outright.
RemovalResult select_removal(const std::vector<ObjectiveVector>& merged,
                             const pref::PreferenceRegion* region);

}  // namespace apmoea
