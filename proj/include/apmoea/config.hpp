#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apmoea {

/// Which secondary ranking criterion the generational phase uses.
/// DI-1 ranks the last front by crowding distance, DI-2 by the diversity
/// contribution.  The steady-state phase always uses the diversity
/// contribution regardless of variant.
enum class Variant { Di1, Di2 };

inline std::string to_string(Variant v) { return v == Variant::Di1 ? "di-1" : "di-2"; }

/// Full description of one evolution run.
struct EvolutionConfig {
    std::size_t population_size = 100;
    long long total_budget = 0;          // evaluations allowed in total
    Variant variant = Variant::Di1;

    // Automatic preference handling.  When disabled the run is a plain
    // diversity-indicator EA and never builds a region.
    bool preference_enabled = false;
    double learning_fraction = 0.5;      // share of the budget spent before the first region
    int region_updates = 12;             // number of region refreshes after the first build
    double epsilon_fraction = 0.05;      // linearity vote margin, as a share of the filtered set

    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument when the configuration cannot drive a
    /// run.  Checked before any evaluation is spent.
    void validate() const {
        if (population_size < 2)
            throw std::invalid_argument("config: population_size must be at least 2");
        if (total_budget < static_cast<long long>(population_size))
            throw std::invalid_argument("config: total_budget smaller than one population");
        if (preference_enabled) {
            if (!(learning_fraction > 0.0 && learning_fraction < 1.0))
                throw std::invalid_argument("config: learning_fraction must lie in (0, 1)");
            if (learning_fraction * static_cast<double>(total_budget) <
                static_cast<double>(population_size))
                throw std::invalid_argument(
                    "config: learning phase shorter than the initial population");
            if (region_updates < 1)
                throw std::invalid_argument("config: region_updates must be positive");
            if (epsilon_fraction < 0.0)
                throw std::invalid_argument("config: epsilon_fraction must be non-negative");
        }
    }
};

}  // namespace apmoea
