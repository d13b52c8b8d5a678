#include "apmoea/selection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "apmoea/criteria.hpp"

namespace apmoea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FrontOrder {
    std::vector<std::size_t> order;   // front positions, best first
    std::vector<double> secondary;    // effective second-criterion key per front position
    std::vector<double> knee;         // knee distance per front position
};

FrontOrder order_front_keys(const std::vector<ObjectiveVector>& points,
                            const std::vector<std::size_t>& front,
                            SecondCriterion criterion,
                            const pref::PreferenceRegion* region) {
    std::vector<ObjectiveVector> members;
    members.reserve(front.size());
    for (std::size_t idx : front) members.push_back(points[idx]);

    FrontOrder out;
    out.secondary = criterion == SecondCriterion::Crowding ? crowding_distance(members)
                                                           : diversity_contribution(members);
    out.knee.assign(front.size(), kInf);
    if (region != nullptr) {
        for (std::size_t i = 0; i < front.size(); ++i) {
            out.knee[i] = pref::knee_distance(members[i], *region);
            if (!region->contains(members[i])) out.secondary[i] = -kInf;
        }
    }

    out.order.resize(front.size());
    for (std::size_t i = 0; i < front.size(); ++i) out.order[i] = i;
    std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        if (out.secondary[a] != out.secondary[b]) return out.secondary[a] > out.secondary[b];
        if (out.knee[a] != out.knee[b]) return out.knee[a] < out.knee[b];
        return a < b;
    });
    return out;
}

}  // namespace

std::vector<std::size_t> order_front(const std::vector<ObjectiveVector>& points,
                                     const std::vector<std::size_t>& front,
                                     SecondCriterion criterion,
                                     const pref::PreferenceRegion* region) {
    return order_front_keys(points, front, criterion, region).order;
}

std::vector<SelectedMember> select_survivors(const std::vector<ObjectiveVector>& merged,
                                             std::size_t mu, SecondCriterion criterion,
                                             const pref::PreferenceRegion* region) {
    if (mu == 0) throw std::invalid_argument("select_survivors: mu must be positive");
    if (merged.size() < mu)
        throw std::invalid_argument("select_survivors: fewer candidates than survivors");

    const RankedFronts fronts = fast_nondominated_sort(merged);

    std::vector<SelectedMember> kept;
    kept.reserve(mu);
    std::size_t taken = 0;
    for (std::size_t f = 0; f < fronts.fronts.size() && taken < mu; ++f) {
        const auto& front = fronts.fronts[f];
        if (taken + front.size() <= mu) {
            for (std::size_t idx : front) {
                double knee = kInf;
                if (region != nullptr) knee = pref::knee_distance(merged[idx], *region);
                kept.push_back({idx, static_cast<int>(f), kInf, knee});
            }
            taken += front.size();
            continue;
        }

        // Split front: keep the best of it under the secondary ordering.
        const std::size_t need = mu - taken;
        const FrontOrder keys = order_front_keys(merged, front, criterion, region);
        std::vector<std::size_t> chosen(keys.order.begin(),
                                        keys.order.begin() + static_cast<long>(need));
        std::sort(chosen.begin(), chosen.end());  // back to stable input order
        for (std::size_t pos : chosen)
            kept.push_back({front[pos], static_cast<int>(f), keys.secondary[pos], keys.knee[pos]});
        taken += need;
    }

    std::sort(kept.begin(), kept.end(),
              [](const SelectedMember& a, const SelectedMember& b) { return a.index < b.index; });
    return kept;
}

RemovalResult select_removal(const std::vector<ObjectiveVector>& merged,
                             const pref::PreferenceRegion* region) {
    if (merged.size() < 2)
        throw std::invalid_argument("select_removal: need at least two candidates");

    RemovalResult result;
    result.merged_fronts = fast_nondominated_sort(merged);
    const auto& last = result.merged_fronts.fronts.back();
    if (last.size() == 1) {
        result.removed = last[0];
        return result;
    }
    const std::vector<std::size_t> order =
        order_front(merged, last, SecondCriterion::Diversity, region);
    result.removed = last[order.back()];
    return result;
}

}  // namespace apmoea
