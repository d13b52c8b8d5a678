#pragma once

#include <vector>

#include "apmoea/objective.hpp"

namespace apmoea {

/// Smallest nearest-neighbour gap considered distinct from zero when the
/// diversity indicator aggregates gaps through logarithms.  Duplicate points
/// are floored here instead of collapsing the geometric mean to zero.
inline constexpr double kMinDiversityGap = 1e-12;

/// NSGA-II crowding distance of every member of a mutually non-dominated
/// front.  Boundary members per objective get +infinity; interior members
/// accumulate normalized neighbour gaps.  Objectives with zero range
/// contribute nothing.  Ties in objective values are broken by input order,
/// making the result deterministic.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

/// Euclidean-gap diversity of a whole set: the geometric mean over all
/// members of the distance to their nearest neighbour, aggregated as
/// exp(mean(log(gap))) with gaps floored at kMinDiversityGap.
/// A singleton has no gaps; its indicator is defined as 0.
double diversity_indicator(const std::vector<ObjectiveVector>& set);

/// Leave-one-out diversity contribution of every member:
///   contribution[p] = diversity_indicator(S) - diversity_indicator(S \ {p})
/// Larger is more valuable; a member of a duplicate pair scores lowest
/// because removing it lets the floored zero gap recover.  Sets with fewer
/// than two members get +infinity for every entry.
std::vector<double> diversity_contribution(const std::vector<ObjectiveVector>& set);

}  // namespace apmoea
