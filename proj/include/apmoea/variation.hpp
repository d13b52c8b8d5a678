#pragma once

#include <utility>
#include <vector>

#include "apmoea/rng.hpp"

namespace apmoea {

/// Simulated binary crossover over box-bounded real vectors.
/// With probability `crossover_rate` the pair is crossed, otherwise both
/// parents are copied through.  Inside a crossed pair each variable is
/// blended with probability 0.5 (and the resulting pair of values swapped
/// with probability 0.5, as usual for SBX); children are clamped to
/// [lower, upper].  Identical parents always yield identical children.
std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& a, const std::vector<double>& b,
    double lower, double upper, Rng& rng,
    double eta = 15.0, double crossover_rate = 0.9);

/// Polynomial mutation.  Each variable is perturbed with probability
/// `mutation_rate` (defaulting to 1/len when a negative rate is passed);
/// perturbations respect the distribution index eta and never leave
/// [lower, upper].
std::vector<double> polynomial_mutation(
    std::vector<double> x, double lower, double upper, Rng& rng,
    double eta = 20.0, double mutation_rate = -1.0);

}  // namespace apmoea
