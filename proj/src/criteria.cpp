#include "apmoea/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace apmoea {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    if (n == 0) return {};
    if (n <= 2) return std::vector<double>(n, kInf);

    const std::size_t m = front[0].size();
    for (const auto& p : front)
        if (p.size() != m)
            throw std::invalid_argument("crowding_distance: inconsistent objective counts");

    std::vector<double> dist(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (front[a][obj] != front[b][obj]) return front[a][obj] < front[b][obj];
            return a < b;  // value ties resolved by input order
        });
        dist[order.front()] = kInf;
        dist[order.back()] = kInf;
        const double range = front[order.back()][obj] - front[order.front()][obj];
        if (range <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (dist[order[k]] == kInf) continue;
            dist[order[k]] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / range;
        }
    }
    return dist;
}

namespace {

// Two smallest pairwise distances per member plus whether the smallest is
// achieved more than once.  Works on squared distances and converts only
// the winners, since sqrt preserves order.
struct NeighbourGaps {
    std::vector<double> nearest;        // distance to nearest neighbour
    std::vector<double> second;         // nearest when the single closest point is removed
    std::vector<std::size_t> nearest_at;  // index achieving `nearest`
    std::vector<bool> nearest_tied;     // smallest distance achieved by >= 2 points
};

NeighbourGaps neighbour_gaps(const std::vector<ObjectiveVector>& set) {
    const std::size_t n = set.size();
    NeighbourGaps g;
    g.nearest.assign(n, kInf);
    g.second.assign(n, kInf);
    g.nearest_at.assign(n, 0);
    g.nearest_tied.assign(n, false);

    std::vector<double> sq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = squared_distance(set[i], set[j]);
            sq[i * n + j] = d;
            sq[j * n + i] = d;
        }

    for (std::size_t i = 0; i < n; ++i) {
        double m1 = kInf, m2 = kInf;
        std::size_t at = 0;
        bool tied = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = sq[i * n + j];
            if (d < m1) {
                m2 = m1;
                m1 = d;
                at = j;
                tied = false;
            } else if (d == m1) {
                tied = true;
                if (d < m2) m2 = d;
            } else if (d < m2) {
                m2 = d;
            }
        }
        g.nearest[i] = std::sqrt(m1);
        g.second[i] = std::sqrt(m2);
        g.nearest_at[i] = at;
        g.nearest_tied[i] = tied;
    }
    return g;
}

inline double floored_log(double gap) {
    return std::log(std::max(gap, kMinDiversityGap));
}

}  // namespace

double diversity_indicator(const std::vector<ObjectiveVector>& set) {
    const std::size_t n = set.size();
    if (n == 0) throw std::invalid_argument("diversity_indicator: empty set");
    if (n == 1) return 0.0;
    const NeighbourGaps g = neighbour_gaps(set);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += floored_log(g.nearest[i]);
    return std::exp(sum / static_cast<double>(n));
}

std::vector<double> diversity_contribution(const std::vector<ObjectiveVector>& set) {
    const std::size_t n = set.size();
    if (n < 2) return std::vector<double>(n, kInf);

    const NeighbourGaps g = neighbour_gaps(set);

    double whole_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) whole_sum += floored_log(g.nearest[i]);
    const double whole = std::exp(whole_sum / static_cast<double>(n));

    std::vector<double> contribution(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        if (n == 2) {
            // Removing either member leaves a singleton (indicator 0).
            contribution[p] = whole;
            continue;
        }
        // Gaps of the remaining members: only points whose unique nearest
        // neighbour was p fall back to their second-smallest distance.
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == p) continue;
            const bool lost_neighbour = g.nearest_at[i] == p && !g.nearest_tied[i];
            sum += floored_log(lost_neighbour ? g.second[i] : g.nearest[i]);
        }
        contribution[p] = whole - std::exp(sum / static_cast<double>(n - 1));
    }
    return contribution;
}

}  // namespace apmoea
