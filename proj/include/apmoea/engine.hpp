#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apmoea/config.hpp"
#include "apmoea/objective.hpp"
#include "apmoea/preference.hpp"
#include "apmoea/rng.hpp"
#include "apmoea/selection.hpp"
#include "apmoea/sorting.hpp"

namespace apmoea {

/// Anything the engine can evolve.  The problem owns its genome encoding,
/// evaluation and variation; the engine owns selection and budgeting.
template <typename P>
concept EvolvableProblem = requires(P& p, const typename P::Genome& g, Rng& rng) {
    typename P::Genome;
    { p.num_objectives() } -> std::convertible_to<std::size_t>;
    { p.random_genome(rng) } -> std::same_as<typename P::Genome>;
    { p.evaluate(g) } -> std::same_as<ObjectiveVector>;
    { p.crossover(g, g, rng) } -> std::same_as<std::pair<typename P::Genome, typename P::Genome>>;
    { p.mutate(g, rng) } -> std::same_as<typename P::Genome>;
};

template <typename G>
struct Individual {
    G genome;
    ObjectiveVector objectives;
    int rank = 0;
    double secondary_score = std::numeric_limits<double>::infinity();
    double knee_distance = std::numeric_limits<double>::infinity();
};

/// One region (re)build, as recorded in the run's event log.
struct RegionEvent {
    long long evaluations = 0;
    pref::RegionBuildInfo info;
};

/// Population snapshot handed to the step observer.
struct StepSnapshot {
    long long evaluations = 0;
    std::vector<ObjectiveVector> objectives;
};

struct RunObserver {
    std::function<void(const RegionEvent&)> on_region_build;
    std::function<void(const StepSnapshot&)> on_step;
};

template <typename G>
struct RunResult {
    std::vector<Individual<G>> population;
    std::vector<RegionEvent> events;
    long long evaluations = 0;
    std::optional<pref::PreferenceRegion> region;
};

/// Diversity-indicator EA with an optional automatic preference region.
///
/// Every iteration first checks whether the region-build threshold was
/// crossed, then branches on the current dominance structure: a population
/// with more than one rank takes a generational step (mu offspring, merge,
/// truncate), a mutually non-dominated one takes a steady-state step (one
/// offspring, one removal).  Evaluation accounting is exact: the run stops
/// at precisely the configured budget.
template <EvolvableProblem P>
class Engine {
public:
    using Genome = typename P::Genome;
    using Member = Individual<Genome>;

    Engine(P& problem, EvolutionConfig config)
        : problem_(problem), config_(std::move(config)), rng_(config_.rng_seed) {
        config_.validate();
    }

    RunResult<Genome> run(const RunObserver* observer = nullptr) {
        RunResult<Genome> result;
        initialize();

        long long next_threshold = config_.preference_enabled
                                       ? pref::first_region_threshold(config_)
                                       : std::numeric_limits<long long>::max();

        while (evaluations_ < config_.total_budget) {
            if (config_.preference_enabled && evaluations_ >= next_threshold) {
                RegionEvent event;
                event.evaluations = evaluations_;
                event.info = build_region();
                region_ = event.info.region;
                result.events.push_back(event);
                if (observer && observer->on_region_build) observer->on_region_build(event);
                // The threshold sequence is fixed by the config; skip every
                // value this iteration already satisfies.
                while (evaluations_ >= next_threshold)
                    next_threshold = pref::update_region_threshold(next_threshold, config_);
            }

            if (fronts_.fronts.size() > 1)
                generational_step();
            else
                steady_state_step();

            if (observer && observer->on_step) {
                StepSnapshot snap;
                snap.evaluations = evaluations_;
                snap.objectives = objective_list();
                observer->on_step(snap);
            }
        }

        refresh_ranks();
        result.population = population_;
        result.evaluations = evaluations_;
        result.region = region_;
        return result;
    }

private:
    void initialize() {
        population_.clear();
        population_.reserve(config_.population_size);
        for (std::size_t i = 0; i < config_.population_size; ++i) {
            Member m;
            m.genome = problem_.random_genome(rng_);
            m.objectives = problem_.evaluate(m.genome);
            population_.push_back(std::move(m));
        }
        evaluations_ = static_cast<long long>(config_.population_size);
        fronts_ = fast_nondominated_sort(objective_list());
    }

    std::vector<ObjectiveVector> objective_list() const {
        std::vector<ObjectiveVector> points;
        points.reserve(population_.size());
        for (const auto& m : population_) points.push_back(m.objectives);
        return points;
    }

    pref::RegionBuildInfo build_region() const {
        std::vector<ObjectiveVector> front;
        front.reserve(fronts_.fronts[0].size());
        for (std::size_t idx : fronts_.fronts[0]) front.push_back(population_[idx].objectives);
        return pref::build_preference_region(front, config_.epsilon_fraction);
    }

    const pref::PreferenceRegion* region_ptr() const {
        return region_ ? &*region_ : nullptr;
    }

    /// Mating selection.  Without a region parents are drawn uniformly.
    /// Once a region exists each parent is the better of two uniform draws,
    /// preferring region members and, within the region, smaller distance
    /// to the knee — reproduction then concentrates where the region does.
    std::size_t pick_parent() {
        const std::size_t n = population_.size();
        const std::size_t a = static_cast<std::size_t>(rng_.uniform_index(n));
        if (!region_) return a;
        const std::size_t b = static_cast<std::size_t>(rng_.uniform_index(n));
        const bool a_in = region_->contains(population_[a].objectives);
        const bool b_in = region_->contains(population_[b].objectives);
        if (a_in != b_in) return a_in ? a : b;
        const double da = pref::knee_distance(population_[a].objectives, *region_);
        const double db = pref::knee_distance(population_[b].objectives, *region_);
        return da <= db ? a : b;
    }

    std::pair<Genome, Genome> breed_pair() {
        const std::size_t i = pick_parent();
        std::size_t j = i;
        while (j == i) j = pick_parent();
        auto children = problem_.crossover(population_[i].genome, population_[j].genome, rng_);
        children.first = problem_.mutate(children.first, rng_);
        children.second = problem_.mutate(children.second, rng_);
        return children;
    }

    /// (mu + mu) step.  The offspring batch shrinks to the remaining budget
    /// so the evaluation count never overshoots.
    void generational_step() {
        const std::size_t batch = static_cast<std::size_t>(
            std::min<long long>(static_cast<long long>(config_.population_size),
                                config_.total_budget - evaluations_));

        std::vector<Member> offspring;
        offspring.reserve(batch);
        while (offspring.size() < batch) {
            auto children = breed_pair();
            Member a;
            a.genome = std::move(children.first);
            offspring.push_back(std::move(a));
            if (offspring.size() < batch) {
                Member b;
                b.genome = std::move(children.second);
                offspring.push_back(std::move(b));
            }
        }
        for (auto& child : offspring) {
            child.objectives = problem_.evaluate(child.genome);
            ++evaluations_;
        }

        std::vector<ObjectiveVector> merged;
        merged.reserve(population_.size() + offspring.size());
        for (const auto& m : population_) merged.push_back(m.objectives);
        for (const auto& m : offspring) merged.push_back(m.objectives);

        const SecondCriterion criterion = config_.variant == Variant::Di1
                                              ? SecondCriterion::Crowding
                                              : SecondCriterion::Diversity;
        const std::vector<SelectedMember> kept =
            select_survivors(merged, config_.population_size, criterion, region_ptr());

        std::vector<Member> next;
        next.reserve(kept.size());
        RankedFronts next_fronts;
        for (const SelectedMember& s : kept) {
            Member m = s.index < population_.size()
                           ? std::move(population_[s.index])
                           : std::move(offspring[s.index - population_.size()]);
            m.rank = s.rank;
            m.secondary_score = s.secondary;
            m.knee_distance = s.knee;
            if (next_fronts.fronts.size() <= static_cast<std::size_t>(s.rank))
                next_fronts.fronts.resize(static_cast<std::size_t>(s.rank) + 1);
            next_fronts.fronts[static_cast<std::size_t>(s.rank)].push_back(next.size());
            next.push_back(std::move(m));
        }
        population_ = std::move(next);
        fronts_ = std::move(next_fronts);
    }

    /// (mu + 1) step on a mutually non-dominated population.  The merged
    /// dominance structure is derived from the offspring's relation to the
    /// parents instead of a full re-sort.
    void steady_state_step() {
        auto children = breed_pair();
        Member child;
        child.genome = std::move(children.first);
        child.objectives = problem_.evaluate(child.genome);
        ++evaluations_;

        const std::size_t n = population_.size();
        std::vector<std::size_t> beaten;  // parents dominated by the child
        bool child_dominated = false;
        for (std::size_t i = 0; i < n && !child_dominated; ++i) {
            if (dominates(population_[i].objectives, child.objectives))
                child_dominated = true;
            else if (dominates(child.objectives, population_[i].objectives))
                beaten.push_back(i);
        }

        if (child_dominated) {
            // Worst front is the child alone; it is discarded and the
            // population is untouched.
            return;
        }

        std::vector<ObjectiveVector> merged;
        merged.reserve(n + 1);
        for (const auto& m : population_) merged.push_back(m.objectives);
        merged.push_back(child.objectives);

        std::size_t removed;
        if (beaten.empty()) {
            // Everything mutually non-dominated: drop the worst of all n+1.
            std::vector<std::size_t> front(n + 1);
            for (std::size_t i = 0; i <= n; ++i) front[i] = i;
            const auto order = order_front(merged, front, SecondCriterion::Diversity, region_ptr());
            removed = front[order.back()];
        } else if (beaten.size() == 1) {
            removed = beaten[0];
        } else {
            const auto order = order_front(merged, beaten, SecondCriterion::Diversity, region_ptr());
            removed = beaten[order.back()];
        }

        if (removed == n) return;  // the child itself lost the diversity vote

        // Replace the removed parent; ranks may now split into two fronts
        // when the child dominated a surviving parent? No: every parent the
        // child dominates is in `beaten`, and only one member was removed,
        // so with |beaten| > 1 some beaten parents survive on rank 1.
        population_[removed] = std::move(child);
        rebuild_fronts_after_steady(beaten, removed);
    }

    void rebuild_fronts_after_steady(const std::vector<std::size_t>& beaten,
                                     std::size_t removed) {
        fronts_.fronts.clear();
        if (beaten.empty() || (beaten.size() == 1 && beaten[0] == removed)) {
            // Population is mutually non-dominated again.
            std::vector<std::size_t> front(population_.size());
            for (std::size_t i = 0; i < front.size(); ++i) front[i] = i;
            fronts_.fronts.push_back(std::move(front));
            return;
        }
        // Surviving beaten parents sit behind everything else.
        std::vector<bool> is_beaten(population_.size(), false);
        for (std::size_t idx : beaten)
            if (idx != removed) is_beaten[idx] = true;
        std::vector<std::size_t> first, second;
        for (std::size_t i = 0; i < population_.size(); ++i)
            (is_beaten[i] ? second : first).push_back(i);
        fronts_.fronts.push_back(std::move(first));
        if (!second.empty()) fronts_.fronts.push_back(std::move(second));
    }

    void refresh_ranks() {
        const auto ranks = fronts_.ranks(population_.size());
        for (std::size_t i = 0; i < population_.size(); ++i) population_[i].rank = ranks[i];
    }

    P& problem_;
    EvolutionConfig config_;
    Rng rng_;
    std::vector<Member> population_;
    RankedFronts fronts_;
    std::optional<pref::PreferenceRegion> region_;
    long long evaluations_ = 0;
};

/// Convenience wrapper building the engine and running it once.
template <EvolvableProblem P>
RunResult<typename P::Genome> evolve(P& problem, const EvolutionConfig& config,
                                     const RunObserver* observer = nullptr) {
    Engine<P> engine(problem, config);
    return engine.run(observer);
}

}  // namespace apmoea
