#include "apmoea/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apmoea {

namespace {
constexpr double kSameValueEps = 1e-14;

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }
}  // namespace

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& a, const std::vector<double>& b,
    double lower, double upper, Rng& rng, double eta, double crossover_rate) {
    if (a.size() != b.size())
        throw std::invalid_argument("sbx_crossover: parents differ in length");
    if (!(lower < upper))
        throw std::invalid_argument("sbx_crossover: invalid bounds");

    std::vector<double> c1 = a;
    std::vector<double> c2 = b;
    if (!rng.chance(crossover_rate)) return {std::move(c1), std::move(c2)};

    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!rng.chance(0.5)) continue;
        const double x1 = a[i];
        const double x2 = b[i];
        if (std::abs(x1 - x2) <= kSameValueEps) continue;

        const double u = rng.uniform();
        const double beta = u <= 0.5
                                ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        double y1 = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
        double y2 = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
        if (rng.chance(0.5)) std::swap(y1, y2);
        c1[i] = clamp(y1, lower, upper);
        c2[i] = clamp(y2, lower, upper);
    }
    return {std::move(c1), std::move(c2)};
}

std::vector<double> polynomial_mutation(
    std::vector<double> x, double lower, double upper, Rng& rng,
    double eta, double mutation_rate) {
    if (!(lower < upper))
        throw std::invalid_argument("polynomial_mutation: invalid bounds");
    if (x.empty()) return x;
    const double p = mutation_rate < 0.0 ? 1.0 / static_cast<double>(x.size()) : mutation_rate;
    const double range = upper - lower;

    for (double& v : x) {
        if (!rng.chance(p)) continue;
        const double u = rng.uniform();
        double delta;
        if (u < 0.5) {
            const double rel = (v - lower) / range;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - rel, eta + 1.0);
            delta = std::pow(val, 1.0 / (eta + 1.0)) - 1.0;
        } else {
            const double rel = (upper - v) / range;
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - rel, eta + 1.0);
            delta = 1.0 - std::pow(val, 1.0 / (eta + 1.0));
        }
        v = clamp(v + delta * range, lower, upper);
    }
    return x;
}

}  // namespace apmoea
