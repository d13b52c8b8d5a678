#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace apmoea {

/// Deterministic random source used everywhere in the library.
///
/// All draws are implemented on top of the raw 64-bit output of
/// std::mt19937_64 instead of the standard <random> distributions, whose
/// results are implementation defined.  Identical seeds therefore produce
/// identical streams on every platform, which the reproducibility contract
/// of the run artifacts depends on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).  53 random mantissa bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        if (!(lo <= hi)) throw std::invalid_argument("Rng::uniform: lo > hi");
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n).  Rejection keeps the draw unbiased.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_index: n == 0");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    /// Bernoulli draw.
    bool chance(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller.  Stateless: one value per two
    /// uniform draws, nothing cached between calls.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Fisher-Yates shuffle with our own index draws (std::shuffle leaves
    /// the draw sequence unspecified).
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace apmoea
