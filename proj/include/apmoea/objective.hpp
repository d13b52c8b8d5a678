#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace apmoea {

/// A point in objective space.  All objectives are minimized.
using ObjectiveVector = std::vector<double>;

/// Strict Pareto dominance: a is no worse in every objective and strictly
/// better in at least one.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dominates: objective vectors differ in length");
    if (a.empty())
        throw std::invalid_argument("dominates: empty objective vectors");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

/// a is no worse than b in every objective (equality allowed everywhere).
inline bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("weakly_dominates: objective vectors differ in length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline double squared_distance(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("squared_distance: objective vectors differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double euclidean_distance(const ObjectiveVector& a, const ObjectiveVector& b) {
    return std::sqrt(squared_distance(a, b));
}

}  // namespace apmoea
