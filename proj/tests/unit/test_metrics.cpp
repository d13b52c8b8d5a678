#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "apmoea/metrics.hpp"
#include "apmoea/preference.hpp"
#include "apmoea/rng.hpp"
#include "apmoea/sorting.hpp"

using apmoea::ObjectiveVector;
namespace metrics = apmoea::metrics;

namespace {

// Independent 2-D reference: vertical slabs between consecutive distinct
// first-objective values, each weighted by the best second objective among
// all points at or left of the slab.
double hv2_reference(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
    std::vector<ObjectiveVector> inside;
    for (const auto& p : points)
        if (p[0] < ref[0] && p[1] < ref[1]) inside.push_back(p);
    if (inside.empty()) return 0.0;

    std::vector<double> xs;
    for (const auto& p : inside) xs.push_back(p[0]);
    xs.push_back(ref[0]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    double volume = 0.0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double best = ref[1];
        for (const auto& p : inside)
            if (p[0] <= xs[k]) best = std::min(best, p[1]);
        volume += (xs[k + 1] - xs[k]) * (ref[1] - best);
    }
    return volume;
}

std::vector<ObjectiveVector> random_points(std::size_t n, std::size_t m, apmoea::Rng& rng) {
    std::vector<ObjectiveVector> pts(n, ObjectiveVector(m));
    for (auto& p : pts)
        for (double& v : p) v = rng.uniform();
    return pts;
}

}  // namespace

TEST_CASE("hypervolume 2-D: unit square anchors") {
    CHECK(metrics::hypervolume({{0.0, 0.0}}, {1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(metrics::hypervolume({{0.0, 0.5}, {0.5, 0.0}}, {1.0, 1.0}) ==
          doctest::Approx(0.75));
    CHECK(metrics::hypervolume({}, {1.0, 1.0}) == 0.0);
    // On or beyond the reference contributes nothing.
    CHECK(metrics::hypervolume({{1.0, 0.0}}, {1.0, 1.0}) == 0.0);
    CHECK(metrics::hypervolume({{2.0, -1.0}}, {1.0, 1.0}) == 0.0);
}

TEST_CASE("hypervolume 2-D: matches the slab reference on random sets") {
    apmoea::Rng rng(13579ULL);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = random_points(1 + rng.uniform_index(30), 2, rng);
        const ObjectiveVector ref{1.0, 1.0};
        const double got = metrics::hypervolume(pts, ref);
        const double want = hv2_reference(pts, ref);
        CHECK(std::fabs(got - want) <= 1e-12 * (1.0 + want));
    }
}

TEST_CASE("hypervolume: permutation and dominated points change nothing") {
    apmoea::Rng rng(24680ULL);
    for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
        auto pts = random_points(12, m, rng);
        const ObjectiveVector ref(m, 1.0);
        const double base = metrics::hypervolume(pts, ref);

        auto shuffled = pts;
        rng.shuffle(shuffled);
        CHECK(metrics::hypervolume(shuffled, ref) == base);

        auto padded = pts;
        for (const auto& p : pts) {
            ObjectiveVector worse = p;
            for (double& v : worse) v = std::min(v + 0.05, 1.0);
            padded.push_back(worse);  // dominated or equal, never helpful
        }
        // Dominated points may add 3-D slice boundaries, so allow rounding.
        CHECK(std::fabs(metrics::hypervolume(padded, ref) - base) <=
              1e-12 * (1.0 + base));

        auto duplicated = pts;
        duplicated.insert(duplicated.end(), pts.begin(), pts.end());
        CHECK(metrics::hypervolume(duplicated, ref) == base);
    }
}

TEST_CASE("hypervolume: adding a point never shrinks the volume") {
    apmoea::Rng rng(1122ULL);
    for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
        std::vector<ObjectiveVector> pts;
        const ObjectiveVector ref(m, 1.0);
        double last = 0.0;
        for (int k = 0; k < 25; ++k) {
            pts.push_back(random_points(1, m, rng)[0]);
            const double hv = metrics::hypervolume(pts, ref);
            CHECK(hv >= last - 1e-15);
            last = hv;
        }
    }
}

TEST_CASE("hypervolume 3-D: hand-checked union of two boxes") {
    const std::vector<ObjectiveVector> pts{{0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}};
    const ObjectiveVector ref{2.0, 2.0, 2.0};
    // Box volumes 4 and 2 overlapping in a unit cube.
    CHECK(metrics::hypervolume(pts, ref) == doctest::Approx(5.0));
    CHECK(metrics::hypervolume({{0.0, 0.0, 0.0}}, {1.0, 2.0, 3.0}) == doctest::Approx(6.0));
}

TEST_CASE("hypervolume 3-D: agrees with Monte Carlo estimates") {
    apmoea::Rng rng(31337ULL);
    apmoea::Rng mc(404ULL);
    const ObjectiveVector ref{1.0, 1.0, 1.0};
    const int samples = 200000;

    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(2 + rng.uniform_index(9), 3, rng);
        const double exact = metrics::hypervolume(pts, ref);

        long long hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double x = mc.uniform();
            const double y = mc.uniform();
            const double z = mc.uniform();
            for (const auto& p : pts) {
                if (p[0] <= x && p[1] <= y && p[2] <= z) {
                    ++hits;
                    break;
                }
            }
        }
        const double estimate = static_cast<double>(hits) / samples;
        const double se = std::sqrt(std::max(estimate * (1.0 - estimate), 1e-12) /
                                    static_cast<double>(samples));
        CHECK(std::fabs(exact - estimate) <= 4.0 * se + 1e-9);
    }
}

TEST_CASE("hypervolume: rejects unsupported dimensions and ragged input") {
    CHECK_THROWS_AS(metrics::hypervolume({{0.5}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(metrics::hypervolume({{0.5, 0.5, 0.5, 0.5}}, {1.0, 1.0, 1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(metrics::hypervolume({{0.5, 0.5, 0.5}}, {1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("restrict_to_region: keeps members inside the box in order") {
    apmoea::pref::PreferenceRegion region;
    region.knee = {0.0, 0.0};
    region.upper_bound = {0.5, 0.5};
    const std::vector<ObjectiveVector> pts{
        {0.1, 0.2}, {0.6, 0.1}, {0.5, 0.5}, {0.2, 0.9}, {0.3, 0.3}};
    const auto inside = metrics::restrict_to_region(pts, region);
    REQUIRE(inside.size() == 3);
    CHECK(inside[0] == ObjectiveVector{0.1, 0.2});
    CHECK(inside[1] == ObjectiveVector{0.5, 0.5});  // boundary is inside
    CHECK(inside[2] == ObjectiveVector{0.3, 0.3});
}

TEST_CASE("classify_knee_relation: directions and region membership") {
    apmoea::pref::PreferenceRegion region;
    region.knee = {0.0, 0.0};
    region.upper_bound = {1.0, 1.0};

    const std::vector<ObjectiveVector> solutions{{0.2, 0.8}, {0.5, 0.5}, {0.8, 0.2}};

    SUBCASE("equal vectors are incomparable") {
        const auto cmp = metrics::classify_knee_relation({0.5, 0.5}, solutions, region);
        CHECK(cmp.relation == metrics::KneeRelation::Incomparable);
        CHECK(cmp.knee_in_region);
    }
    SUBCASE("a strictly better knee dominates") {
        const auto cmp = metrics::classify_knee_relation({0.4, 0.4}, solutions, region);
        CHECK(cmp.relation == metrics::KneeRelation::Dominating);
    }
    SUBCASE("a strictly worse knee is dominated") {
        const auto cmp = metrics::classify_knee_relation({0.6, 0.6}, solutions, region);
        CHECK(cmp.relation == metrics::KneeRelation::Dominated);
    }
    SUBCASE("trade-offs are incomparable and can leave the region") {
        const auto cmp = metrics::classify_knee_relation({0.1, 1.2}, solutions, region);
        CHECK(cmp.relation == metrics::KneeRelation::Incomparable);
        CHECK_FALSE(cmp.knee_in_region);
    }
}

TEST_CASE("classify_knee_relation: agrees with a direct pairwise sweep") {
    apmoea::Rng rng(55555ULL);
    apmoea::pref::PreferenceRegion region;
    region.knee = {0.0, 0.0};
    region.upper_bound = {0.7, 0.7};

    for (int trial = 0; trial < 40; ++trial) {
        // Build a mutually non-dominated set by keeping the first front.
        const auto raw = random_points(12, 2, rng);
        const auto fronts = apmoea::fast_nondominated_sort(raw);
        std::vector<ObjectiveVector> solutions;
        for (std::size_t idx : fronts.fronts[0]) solutions.push_back(raw[idx]);

        const ObjectiveVector knee{rng.uniform(), rng.uniform()};
        const auto cmp = metrics::classify_knee_relation(knee, solutions, region);

        bool dominated = false, dominating = false;
        for (const auto& s : solutions) {
            if (apmoea::dominates(s, knee)) dominated = true;
            if (apmoea::dominates(knee, s)) dominating = true;
        }
        REQUIRE_FALSE((dominated && dominating));
        if (dominated) CHECK(cmp.relation == metrics::KneeRelation::Dominated);
        else if (dominating) CHECK(cmp.relation == metrics::KneeRelation::Dominating);
        else CHECK(cmp.relation == metrics::KneeRelation::Incomparable);
        CHECK(cmp.knee_in_region == region.contains(knee));
    }
}

TEST_CASE("classify_knee_relation: rejects sets with internal dominance") {
    apmoea::pref::PreferenceRegion region;
    region.knee = {0.0, 0.0};
    region.upper_bound = {1.0, 1.0};
    CHECK_THROWS_AS(
        metrics::classify_knee_relation({0.5, 0.5}, {{0.1, 0.1}, {0.2, 0.2}}, region),
        std::invalid_argument);
}

TEST_CASE("relation names") {
    CHECK(metrics::to_string(metrics::KneeRelation::Incomparable) == "incomparable");
    CHECK(metrics::to_string(metrics::KneeRelation::Dominated) == "dominated");
    CHECK(metrics::to_string(metrics::KneeRelation::Dominating) == "dominating");
}
