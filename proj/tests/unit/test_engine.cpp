#include "doctest.h"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "apmoea/engine.hpp"
#include "apmoea/problems.hpp"

using apmoea::EvolutionConfig;
using apmoea::ObjectiveVector;
using apmoea::Variant;
using apmoea::bench::ContinuousProblem;

namespace {

EvolutionConfig small_config(long long budget, bool preference) {
    EvolutionConfig c;
    c.population_size = 10;
    c.total_budget = budget;
    c.variant = Variant::Di1;
    c.preference_enabled = preference;
    c.rng_seed = 4242;
    return c;
}

}  // namespace

TEST_CASE("engine: spends exactly the configured budget") {
    ContinuousProblem problem = ContinuousProblem::by_name("zdt1");
    for (long long budget : {200LL, 517LL, 2200LL}) {
        auto result = apmoea::evolve(problem, small_config(budget, false));
        CHECK(result.evaluations == budget);
        CHECK(result.population.size() == 10);
        CHECK(result.events.empty());
        CHECK_FALSE(result.region.has_value());
    }
}

TEST_CASE("engine: rejects configurations that cannot run") {
    ContinuousProblem problem = ContinuousProblem::by_name("zdt1");
    EvolutionConfig bad = small_config(5, false);  // budget below one population
    CHECK_THROWS_AS(apmoea::Engine<ContinuousProblem>(problem, bad), std::invalid_argument);

    EvolutionConfig tiny = small_config(100, false);
    tiny.population_size = 1;
    CHECK_THROWS_AS(apmoea::Engine<ContinuousProblem>(problem, tiny), std::invalid_argument);

    EvolutionConfig fraction = small_config(100, true);
    fraction.learning_fraction = 1.5;
    CHECK_THROWS_AS(apmoea::Engine<ContinuousProblem>(problem, fraction),
                    std::invalid_argument);
}

TEST_CASE("engine: scaled preference schedule records thirteen builds") {
    ContinuousProblem problem = ContinuousProblem::by_name("zdt1");
    // Budget 2200, population 10: first build at 1100, step 91, final
    // build clamped onto 2190.
    auto result = apmoea::evolve(problem, small_config(2200, true));

    REQUIRE(result.events.size() == 13);
    CHECK(result.region.has_value());

    // Thresholds are crossed mid-iteration at worst by one generational
    // batch, never skipped entirely.
    CHECK(result.events.front().evaluations >= 1100);
    CHECK(result.events.front().evaluations < 1100 + 10);
    CHECK(result.events.back().evaluations >= 2190);
    for (std::size_t k = 1; k < result.events.size(); ++k)
        CHECK(result.events[k - 1].evaluations < result.events[k].evaluations);

    // The run's final region is the one from the last build.
    CHECK(result.region->knee == result.events.back().info.region.knee);
    CHECK(result.region->upper_bound == result.events.back().info.region.upper_bound);

    for (const auto& event : result.events) {
        const auto& region = event.info.region;
        REQUIRE(region.knee.size() == 2);
        for (std::size_t d = 0; d < 2; ++d) CHECK(region.upper_bound[d] >= region.knee[d]);
    }
}

TEST_CASE("engine: identical seeds reproduce the run bit for bit") {
    ContinuousProblem problem = ContinuousProblem::by_name("zdt2");
    EvolutionConfig config = small_config(800, true);
    config.variant = Variant::Di2;

    auto first = apmoea::evolve(problem, config);
    apmoea::Engine<ContinuousProblem> engine(problem, config);
    auto second = engine.run();

    REQUIRE(first.population.size() == second.population.size());
    for (std::size_t i = 0; i < first.population.size(); ++i) {
        CHECK(first.population[i].objectives == second.population[i].objectives);
        CHECK(first.population[i].genome == second.population[i].genome);
        CHECK(first.population[i].rank == second.population[i].rank);
    }
    REQUIRE(first.events.size() == second.events.size());
    for (std::size_t k = 0; k < first.events.size(); ++k) {
        CHECK(first.events[k].evaluations == second.events[k].evaluations);
        CHECK(first.events[k].info.region.knee == second.events[k].info.region.knee);
    }

    EvolutionConfig other = config;
    other.rng_seed = 4243;
    auto third = apmoea::evolve(problem, other);
    bool identical = true;
    for (std::size_t i = 0; i < first.population.size(); ++i)
        if (first.population[i].objectives != third.population[i].objectives) identical = false;
    CHECK_FALSE(identical);
}

TEST_CASE("engine: hybrid branching follows the dominance structure") {
    ContinuousProblem problem = ContinuousProblem::by_name("zdt1");

    std::vector<apmoea::StepSnapshot> snaps;
    apmoea::RunObserver observer;
    observer.on_step = [&](const apmoea::StepSnapshot& s) { snaps.push_back(s); };

    EvolutionConfig config = small_config(600, false);
    apmoea::Engine<ContinuousProblem> engine(problem, config);
    const auto result = engine.run(&observer);

    REQUIRE_FALSE(snaps.empty());
    CHECK(snaps.back().evaluations == 600);

    bool saw_generational = false;
    bool saw_steady = false;
    for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
        const auto ranks = apmoea::fast_nondominated_sort(snaps[k].objectives);
        const long long delta = snaps[k + 1].evaluations - snaps[k].evaluations;
        if (ranks.fronts.size() > 1) {
            const long long batch = std::min<long long>(10, 600 - snaps[k].evaluations);
            CHECK(delta == batch);
            saw_generational = true;
        } else {
            CHECK(delta == 1);
            saw_steady = true;
        }
    }
    CHECK(saw_generational);
    CHECK(saw_steady);
    CHECK(result.evaluations == 600);
}

TEST_CASE("engine: final ranks match a fresh dominance sort") {
    ContinuousProblem problem = ContinuousProblem::by_name("dtlz2");
    EvolutionConfig config = small_config(700, false);
    config.variant = Variant::Di2;
    const auto result = apmoea::evolve(problem, config);

    std::vector<ObjectiveVector> objectives;
    for (const auto& m : result.population) objectives.push_back(m.objectives);
    const auto ranks = apmoea::fast_nondominated_sort(objectives).ranks(objectives.size());
    for (std::size_t i = 0; i < result.population.size(); ++i)
        CHECK(result.population[i].rank == ranks[i]);
}

TEST_CASE("engine: disabling preference leaves the event log empty") {
    ContinuousProblem problem = ContinuousProblem::by_name("zdt1");
    const auto result = apmoea::evolve(problem, small_config(1500, false));
    CHECK(result.events.empty());
    CHECK_FALSE(result.region.has_value());
}
