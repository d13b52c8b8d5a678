#include "doctest.h"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "apmoea/criteria.hpp"
#include "apmoea/preference.hpp"
#include "apmoea/rng.hpp"
#include "apmoea/selection.hpp"
#include "apmoea/sorting.hpp"

using apmoea::ObjectiveVector;
using apmoea::SecondCriterion;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> survivor_indices(const std::vector<apmoea::SelectedMember>& kept) {
    std::vector<std::size_t> idx;
    for (const auto& m : kept) idx.push_back(m.index);
    return idx;
}

// Reference survivor selection: fill whole fronts, then order the cut front
// by (secondary desc, knee-distance asc, front position asc) with the
// secondary key of out-of-region members forced to -infinity.
std::vector<std::size_t> survivors_reference(const std::vector<ObjectiveVector>& merged,
                                             std::size_t mu, SecondCriterion criterion,
                                             const apmoea::pref::PreferenceRegion* region) {
    const apmoea::RankedFronts fronts = apmoea::fast_nondominated_sort(merged);
    std::vector<std::size_t> kept;
    for (const auto& front : fronts.fronts) {
        if (kept.size() + front.size() <= mu) {
            kept.insert(kept.end(), front.begin(), front.end());
            if (kept.size() == mu) break;
            continue;
        }
        std::vector<ObjectiveVector> members;
        for (std::size_t idx : front) members.push_back(merged[idx]);
        std::vector<double> sec = criterion == SecondCriterion::Crowding
                                      ? apmoea::crowding_distance(members)
                                      : apmoea::diversity_contribution(members);
        std::vector<double> knee(front.size(), kInf);
        if (region != nullptr) {
            for (std::size_t i = 0; i < front.size(); ++i) {
                knee[i] = apmoea::pref::knee_distance(members[i], *region);
                if (!region->contains(members[i])) sec[i] = -kInf;
            }
        }
        std::vector<std::size_t> pos(front.size());
        for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
        std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
            if (sec[a] != sec[b]) return sec[a] > sec[b];
            if (knee[a] != knee[b]) return knee[a] < knee[b];
            return a < b;
        });
        for (std::size_t k = 0; kept.size() < mu; ++k) kept.push_back(front[pos[k]]);
        break;
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

TEST_CASE("select_survivors: whole fronts are taken before any splitting") {
    // Fronts: {0,1,2} then {3,4} then {5}.
    const std::vector<ObjectiveVector> merged{
        {0.0, 2.0}, {1.0, 1.0}, {2.0, 0.0},
        {2.0, 3.0}, {3.0, 2.0},
        {5.0, 5.0}};
    const auto kept = apmoea::select_survivors(merged, 5, SecondCriterion::Crowding, nullptr);
    CHECK(survivor_indices(kept) == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(kept[0].rank == 0);
    CHECK(kept[3].rank == 1);
}

TEST_CASE("select_survivors: crowding split keeps boundaries and the widest interior") {
    const std::vector<ObjectiveVector> merged{
        {0.0, 4.0}, {1.0, 2.0}, {2.0, 1.5}, {3.0, 1.0}, {4.0, 0.0}};
    const auto kept = apmoea::select_survivors(merged, 3, SecondCriterion::Crowding, nullptr);
    // Interior crowding: 1.125, 0.75, 0.875 -> the first interior point wins.
    CHECK(survivor_indices(kept) == std::vector<std::size_t>{0, 1, 4});
}

TEST_CASE("select_survivors: out-of-region members lose a split even with infinite crowding") {
    const apmoea::pref::PreferenceRegion region =
        apmoea::pref::compute_preference_region({0.0, 0.0}, {1.0, 1.0});
    // Boundary point B exceeds the region's upper bound; everyone else is inside.
    const std::vector<ObjectiveVector> merged{
        {0.1, 0.8}, {0.9, 0.1}, {0.3, 0.5}, {0.5, 0.3}};
    REQUIRE_FALSE(region.contains(merged[1]));
    const auto kept = apmoea::select_survivors(merged, 3, SecondCriterion::Crowding, &region);
    CHECK(survivor_indices(kept) == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("select_survivors: knee distance breaks ties among excluded members") {
    apmoea::pref::PreferenceRegion region;
    region.knee = {0.0, 0.0};
    region.upper_bound = {0.1, 0.1};
    // Everything is outside the region, so ordering falls to knee distance.
    const std::vector<ObjectiveVector> merged{
        {1.0, 2.0}, {2.0, 1.0}, {1.5, 1.4}, {3.0, 0.5}};
    const auto kept = apmoea::select_survivors(merged, 2, SecondCriterion::Crowding, &region);
    // Distances: sqrt(5), sqrt(5), sqrt(4.21), sqrt(9.25); the sqrt(5) tie
    // resolves to the earlier front position.
    CHECK(survivor_indices(kept) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("select_survivors: matches the reference on random instances") {
    apmoea::Rng rng(515151ULL);
    const apmoea::pref::PreferenceRegion region =
        apmoea::pref::compute_preference_region({0.0, 0.0}, {0.8, 0.8});

    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 16;
        const std::size_t mu = 8;
        std::vector<ObjectiveVector> merged(n, ObjectiveVector(2));
        for (auto& p : merged)
            for (double& v : p) v = rng.uniform();

        const SecondCriterion crit =
            trial % 2 == 0 ? SecondCriterion::Crowding : SecondCriterion::Diversity;
        const apmoea::pref::PreferenceRegion* reg = trial % 3 == 0 ? nullptr : &region;

        const auto kept = apmoea::select_survivors(merged, mu, crit, reg);
        CHECK(survivor_indices(kept) == survivors_reference(merged, mu, crit, reg));
    }
}

TEST_CASE("select_survivors: a worse rank never outlives a better one") {
    apmoea::Rng rng(616161ULL);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ObjectiveVector> merged(20, ObjectiveVector(3));
        for (auto& p : merged)
            for (double& v : p) v = static_cast<double>(rng.uniform_index(6));
        const std::size_t mu = 1 + rng.uniform_index(19);

        const auto kept = apmoea::select_survivors(merged, mu, SecondCriterion::Diversity,
                                                   nullptr);
        REQUIRE(kept.size() == mu);

        const std::vector<int> ranks = apmoea::fast_nondominated_sort(merged).ranks(20);
        std::vector<bool> survived(20, false);
        int worst_kept = 0;
        for (const auto& m : kept) {
            survived[m.index] = true;
            worst_kept = std::max(worst_kept, ranks[m.index]);
            CHECK(m.rank == ranks[m.index]);
        }
        for (std::size_t i = 0; i < merged.size(); ++i)
            if (!survived[i]) CHECK(ranks[i] >= worst_kept);
    }
}

TEST_CASE("select_survivors: rejects impossible requests") {
    const std::vector<ObjectiveVector> merged{{1.0, 2.0}, {2.0, 1.0}};
    CHECK_THROWS_AS(apmoea::select_survivors(merged, 0, SecondCriterion::Crowding, nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS(apmoea::select_survivors(merged, 3, SecondCriterion::Crowding, nullptr),
                    std::invalid_argument);
}

TEST_CASE("order_front: returns best-first positions within the front") {
    const std::vector<ObjectiveVector> points{
        {0.0, 4.0}, {1.0, 2.0}, {2.0, 1.5}, {3.0, 1.0}, {4.0, 0.0}};
    const std::vector<std::size_t> front{0, 1, 2, 3, 4};
    const auto order = apmoea::order_front(points, front, SecondCriterion::Crowding, nullptr);
    REQUIRE(order.size() == 5);
    // Boundaries (infinite crowding) first in position order, then interiors
    // by descending crowding: 1.125 > 0.875 > 0.75.
    CHECK(order[0] == 0);
    CHECK(order[1] == 4);
    CHECK(order[2] == 1);
    CHECK(order[3] == 3);
    CHECK(order[4] == 2);
}

TEST_CASE("select_removal: a singleton last front goes immediately") {
    const std::vector<ObjectiveVector> merged{{0.0, 0.0}, {1.0, 1.0}};
    const apmoea::RemovalResult r = apmoea::select_removal(merged, nullptr);
    CHECK(r.removed == 1);
    REQUIRE(r.merged_fronts.fronts.size() == 2);
}

TEST_CASE("select_removal: duplicates are the first to go") {
    const std::vector<ObjectiveVector> merged{
        {0.0, 4.0}, {1.0, 3.0}, {1.0, 3.0}, {4.0, 0.0}};
    const apmoea::RemovalResult r = apmoea::select_removal(merged, nullptr);
    // The two duplicates tie on the diversity key; the later front position
    // loses.
    CHECK(r.removed == 2);
}

TEST_CASE("select_removal: removal comes from the last front") {
    apmoea::Rng rng(717171ULL);
    const apmoea::pref::PreferenceRegion region =
        apmoea::pref::compute_preference_region({0.0, 0.0}, {0.9, 0.9});
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ObjectiveVector> merged(9, ObjectiveVector(2));
        for (auto& p : merged)
            for (double& v : p) v = rng.uniform();
        const apmoea::pref::PreferenceRegion* reg = trial % 2 == 0 ? &region : nullptr;

        const apmoea::RemovalResult r = apmoea::select_removal(merged, reg);
        const auto& last = r.merged_fronts.fronts.back();
        CHECK(std::count(last.begin(), last.end(), r.removed) == 1);

        if (last.size() > 1) {
            const auto order =
                apmoea::order_front(merged, last, SecondCriterion::Diversity, reg);
            CHECK(r.removed == last[order.back()]);
        }
    }
}

TEST_CASE("select_removal: needs at least two candidates") {
    CHECK_THROWS_AS(apmoea::select_removal({{1.0, 1.0}}, nullptr), std::invalid_argument);
}
