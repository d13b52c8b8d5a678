#include "apmoea/sorting.hpp"

#include <algorithm>

namespace apmoea {

RankedFronts fast_nondominated_sort(const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    RankedFronts result;
    if (n == 0) return result;

    // dominated_by[i]: how many points dominate i.
    // dominating[i]: the points i dominates.
    std::vector<int> dominated_by(n, 0);
    std::vector<std::vector<std::size_t>> dominating(n);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominating[i].push_back(j);
                ++dominated_by[j];
            } else if (dominates(points[j], points[i])) {
                dominating[j].push_back(i);
                ++dominated_by[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominated_by[i] == 0) current.push_back(i);

    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominating[i]) {
                if (--dominated_by[j] == 0) next.push_back(j);
            }
        }
        // Peeling order depends on discovery order; fronts are reported in
        // ascending index order so results are stable.
        std::sort(next.begin(), next.end());
        result.fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return result;
}

}  // namespace apmoea
