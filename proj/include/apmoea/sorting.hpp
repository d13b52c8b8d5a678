#pragma once

#include <cstddef>
#include <vector>

#include "apmoea/objective.hpp"

namespace apmoea {

/// Partition of a population into dominance ranks.  fronts[0] holds the
/// indices of the mutually non-dominated members, fronts[1] the members
/// only dominated by fronts[0], and so on.  Indices inside each front are
/// ascending, so the partition is a deterministic function of the input
/// order.
struct RankedFronts {
    std::vector<std::vector<std::size_t>> fronts;

    /// rank per input index (0 = best).
    std::vector<int> ranks(std::size_t n) const {
        std::vector<int> r(n, -1);
        for (std::size_t f = 0; f < fronts.size(); ++f)
            for (std::size_t idx : fronts[f]) r[idx] = static_cast<int>(f);
        return r;
    }
};

/// Fast non-dominated sorting (dominance-count bookkeeping, O(n^2 m)).
/// Every input index appears in exactly one front.
RankedFronts fast_nondominated_sort(const std::vector<ObjectiveVector>& points);

}  // namespace apmoea
