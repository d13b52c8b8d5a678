#include "apmoea/preference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace apmoea::pref {

namespace {

void require_uniform_width(const std::vector<ObjectiveVector>& points, const char* who) {
    if (points.empty()) throw std::invalid_argument(std::string(who) + ": empty front");
    const std::size_t m = points[0].size();
    if (m < 2) throw std::invalid_argument(std::string(who) + ": need at least two objectives");
    for (const auto& p : points)
        if (p.size() != m)
            throw std::invalid_argument(std::string(who) + ": inconsistent objective counts");
}

/// Tolerance deciding when a point counts as lying on the hyperplane,
/// scaled with the coordinate magnitudes so large-valued objective spaces
/// behave like normalized ones.
double side_tolerance(const std::vector<ObjectiveVector>& points) {
    double scale = 0.0;
    for (const auto& p : points)
        for (double v : p) scale = std::max(scale, std::abs(v));
    return 1e-9 * (1.0 + scale);
}

ObjectiveVector ideal_point(const std::vector<ObjectiveVector>& points) {
    ObjectiveVector ideal = points[0];
    for (const auto& p : points)
        for (std::size_t i = 0; i < ideal.size(); ++i) ideal[i] = std::min(ideal[i], p[i]);
    return ideal;
}

}  // namespace

FilteredFront filter_upper_quartile(const std::vector<ObjectiveVector>& front) {
    require_uniform_width(front, "filter_upper_quartile");
    const std::size_t n = front.size();
    const std::size_t m = front[0].size();

    FilteredFront out;
    out.bounds.quartile.resize(m);
    out.bounds.worst.resize(m);

    std::vector<double> column(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        for (std::size_t i = 0; i < n; ++i) column[i] = front[i][obj];
        std::sort(column.begin(), column.end());
        out.bounds.worst[obj] = column.back();
        if (n < 4) {
            out.bounds.quartile[obj] = column.back();
        } else {
            // 1-based ceiling index of the 75% position.
            const std::size_t pos = static_cast<std::size_t>(
                std::ceil(0.75 * static_cast<double>(n)));
            out.bounds.quartile[obj] = column[pos - 1];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        bool keep = true;
        for (std::size_t obj = 0; obj < m && keep; ++obj)
            if (front[i][obj] > out.bounds.quartile[obj]) keep = false;
        if (keep) {
            out.survivors.push_back(front[i]);
            out.survivor_indices.push_back(i);
        }
    }
    if (out.survivors.empty()) {
        // Pathological spread: rather than losing the front, keep it whole.
        out.survivors = front;
        out.survivor_indices.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.survivor_indices[i] = i;
    }
    return out;
}

double Hyperplane::signed_distance(const ObjectiveVector& x) const {
    if (x.size() != normal.size())
        throw std::invalid_argument("Hyperplane::signed_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += normal[i] * x[i];
    return s - offset;
}

Hyperplane extreme_points(const std::vector<ObjectiveVector>& survivors) {
    require_uniform_width(survivors, "extreme_points");
    const std::size_t m = survivors[0].size();

    Hyperplane plane;
    plane.extreme_points.resize(m);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < survivors.size(); ++i) {
            if (survivors[i][obj] > survivors[best][obj]) {
                best = i;
            } else if (survivors[i][obj] == survivors[best][obj] &&
                       survivors[i] < survivors[best]) {
                best = i;  // tie: lexicographically smallest vector wins
            }
        }
        plane.extreme_points[obj] = survivors[best];
    }

    // Normal = null space of the (m-1) x m difference matrix between the
    // extremes.  Gaussian elimination with partial pivoting; a rank drop
    // means the extremes are affinely dependent and no unique plane exists.
    const std::size_t rows = m - 1;
    std::vector<std::vector<double>> a(rows, std::vector<double>(m));
    double scale = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            a[r][c] = plane.extreme_points[r + 1][c] - plane.extreme_points[0][c];
            scale = std::max(scale, std::abs(a[r][c]));
        }
    const double pivot_tol = 1e-12 * std::max(scale, 1.0);

    std::vector<std::size_t> pivot_col(rows, m);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < rows; ++col) {
        std::size_t best = rank;
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
        if (std::abs(a[best][col]) <= pivot_tol) continue;
        std::swap(a[rank], a[best]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const double f = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[rank][c];
        }
        pivot_col[rank] = col;
        ++rank;
    }

    if (rank < rows) {
        plane.degenerate = true;
        plane.normal.assign(m, 0.0);
        return plane;
    }

    // Exactly one free column: set it to 1, back-substitute the rest.
    std::vector<bool> is_pivot(m, false);
    for (std::size_t r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    std::size_t free_col = m;
    for (std::size_t c = 0; c < m; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }

    plane.normal.assign(m, 0.0);
    plane.normal[free_col] = 1.0;
    for (std::size_t r = rank; r-- > 0;) {
        const std::size_t pc = pivot_col[r];
        double s = a[r][free_col];
        for (std::size_t c = pc + 1; c < m; ++c)
            if (is_pivot[c]) s += a[r][c] * plane.normal[c];
        plane.normal[pc] = -s / a[r][pc];
    }

    double norm = 0.0;
    for (double v : plane.normal) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        plane.degenerate = true;
        plane.normal.assign(m, 0.0);
        return plane;
    }
    for (double& v : plane.normal) v /= norm;

    plane.offset = 0.0;
    for (std::size_t i = 0; i < m; ++i) plane.offset += plane.normal[i] * plane.extreme_points[0][i];

    // Orient the plane so the ideal point of the survivors falls on the
    // negative side; that side is treated as the convex one.
    const ObjectiveVector ideal = ideal_point(survivors);
    if (plane.signed_distance(ideal) > 0.0) {
        for (double& v : plane.normal) v = -v;
        plane.offset = -plane.offset;
    }
    return plane;
}

std::string to_string(FrontShape s) {
    switch (s) {
        case FrontShape::Convex: return "convex";
        case FrontShape::Concave: return "concave";
        case FrontShape::Linear: return "linear";
    }
    return "linear";
}

ConvexityVerdict classify_convexity(const std::vector<ObjectiveVector>& survivors,
                                    const Hyperplane& plane, double epsilon) {
    if (epsilon < 0.0)
        throw std::invalid_argument("classify_convexity: negative epsilon");
    ConvexityVerdict verdict;
    if (plane.degenerate) return verdict;  // linear, counts (0, 0)

    const double tol = side_tolerance(survivors);
    for (const auto& p : survivors) {
        const double d = plane.signed_distance(p);
        if (d < -tol)
            ++verdict.num_convex;
        else if (d > tol)
            ++verdict.num_concave;
        // on-plane points vote for neither side
    }
    const double diff = static_cast<double>(verdict.num_convex) -
                        static_cast<double>(verdict.num_concave);
    if (diff > epsilon)
        verdict.shape = FrontShape::Convex;
    else if (-diff > epsilon)
        verdict.shape = FrontShape::Concave;
    else
        verdict.shape = FrontShape::Linear;
    return verdict;
}

ObjectiveVector find_knee(const std::vector<ObjectiveVector>& front, double epsilon) {
    require_uniform_width(front, "find_knee");
    if (front.size() == 1) return front[0];

    const FilteredFront filtered = filter_upper_quartile(front);
    const auto& survivors = filtered.survivors;
    const Hyperplane plane = extreme_points(survivors);
    const ConvexityVerdict verdict = classify_convexity(survivors, plane, epsilon);

    if (verdict.shape == FrontShape::Linear) {
        // Largest single-point dominated volume against the unfiltered
        // per-objective worst values.
        std::size_t best = 0;
        double best_volume = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            double vol = 1.0;
            for (std::size_t obj = 0; obj < survivors[i].size(); ++obj)
                vol *= filtered.bounds.worst[obj] - survivors[i][obj];
            if (vol > best_volume) {
                best_volume = vol;
                best = i;
            }
        }
        return survivors[best];
    }

    const double tol = side_tolerance(survivors);
    const bool convex = verdict.shape == FrontShape::Convex;
    std::size_t best = survivors.size();
    double best_dist = -1.0;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        const double d = plane.signed_distance(survivors[i]);
        const bool on_side = convex ? d < -tol : d > tol;
        if (!on_side) continue;
        const double dist = std::abs(d);
        if (dist > best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    // The shape vote guarantees at least one strict point on the winning side.
    if (best == survivors.size())
        throw std::logic_error("find_knee: shape vote inconsistent with side counts");
    return survivors[best];
}

PreferenceRegion compute_preference_region(const ObjectiveVector& knee,
                                           const ObjectiveVector& worst) {
    if (knee.size() != worst.size() || knee.empty())
        throw std::invalid_argument("compute_preference_region: dimension mismatch");
    PreferenceRegion region;
    region.knee = knee;
    region.upper_bound.resize(knee.size());
    for (std::size_t i = 0; i < knee.size(); ++i) {
        if (knee[i] > worst[i])
            throw std::invalid_argument(
                "compute_preference_region: knee exceeds the worst objective value");
        region.upper_bound[i] = knee[i] + (worst[i] - knee[i]) * 0.85;
    }
    return region;
}

double knee_distance(const ObjectiveVector& objectives, const PreferenceRegion& region) {
    return euclidean_distance(objectives, region.knee);
}

RegionBuildInfo build_preference_region(const std::vector<ObjectiveVector>& front,
                                        double epsilon_fraction) {
    if (epsilon_fraction < 0.0)
        throw std::invalid_argument("build_preference_region: negative epsilon_fraction");
    RegionBuildInfo info;
    const FilteredFront filtered = filter_upper_quartile(front);
    info.bounds = filtered.bounds;
    info.epsilon = std::ceil(epsilon_fraction * static_cast<double>(filtered.survivors.size()));

    const Hyperplane plane = extreme_points(filtered.survivors);
    info.verdict = classify_convexity(filtered.survivors, plane, info.epsilon);

    const ObjectiveVector knee = find_knee(front, info.epsilon);
    info.region = compute_preference_region(knee, filtered.bounds.worst);
    return info;
}

long long first_region_threshold(const EvolutionConfig& config) {
    return static_cast<long long>(std::floor(
        config.learning_fraction * static_cast<double>(config.total_budget)));
}

long long update_region_threshold(long long current, const EvolutionConfig& config) {
    long long step = static_cast<long long>(std::floor(
        static_cast<double>(config.total_budget) * (1.0 - config.learning_fraction) /
        static_cast<double>(config.region_updates)));
    if (step < 1) step = 1;
    const long long last_allowed =
        config.total_budget - static_cast<long long>(config.population_size);
    long long next = current + step;
    if (current < last_allowed && next > last_allowed) next = last_allowed;
    return next;
}

}  // namespace apmoea::pref
