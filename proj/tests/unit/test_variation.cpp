#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "apmoea/rng.hpp"
#include "apmoea/variation.hpp"

namespace {

std::vector<double> random_genome(std::size_t n, apmoea::Rng& rng) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform();
    return x;
}

}  // namespace

TEST_CASE("sbx_crossover: identical parents give identical children") {
    apmoea::Rng rng(11ULL);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> p = random_genome(8, rng);
        const auto [c1, c2] = apmoea::sbx_crossover(p, p, 0.0, 1.0, rng);
        CHECK(c1 == p);
        CHECK(c2 == p);
    }
}

TEST_CASE("sbx_crossover: zero rate copies the parents") {
    apmoea::Rng rng(12ULL);
    const std::vector<double> a = random_genome(6, rng);
    const std::vector<double> b = random_genome(6, rng);
    const auto [c1, c2] = apmoea::sbx_crossover(a, b, 0.0, 1.0, rng, 15.0, 0.0);
    CHECK(c1 == a);
    CHECK(c2 == b);
}

TEST_CASE("sbx_crossover: huge eta contracts children onto the parents") {
    apmoea::Rng rng(13ULL);
    const std::vector<double> a = random_genome(10, rng);
    const std::vector<double> b = random_genome(10, rng);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [c1, c2] = apmoea::sbx_crossover(a, b, 0.0, 1.0, rng, 1e6, 1.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            // Children may be swapped per gene; compare as unordered pairs.
            const double lo_p = std::min(a[i], b[i]);
            const double hi_p = std::max(a[i], b[i]);
            const double lo_c = std::min(c1[i], c2[i]);
            const double hi_c = std::max(c1[i], c2[i]);
            CHECK(std::fabs(lo_c - lo_p) < 1e-3);
            CHECK(std::fabs(hi_c - hi_p) < 1e-3);
        }
    }
}

TEST_CASE("sbx_crossover: children respect the bounds") {
    apmoea::Rng rng(14ULL);
    int genes_checked = 0;
    while (genes_checked < 10000) {
        const std::vector<double> a = random_genome(10, rng);
        const std::vector<double> b = random_genome(10, rng);
        const auto [c1, c2] = apmoea::sbx_crossover(a, b, 0.0, 1.0, rng, 2.0, 1.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(c1[i] >= 0.0);
            CHECK(c1[i] <= 1.0);
            CHECK(c2[i] >= 0.0);
            CHECK(c2[i] <= 1.0);
            ++genes_checked;
        }
    }
}

TEST_CASE("sbx_crossover: malformed input throws") {
    apmoea::Rng rng(15ULL);
    CHECK_THROWS_AS(apmoea::sbx_crossover({1.0}, {1.0, 2.0}, 0.0, 1.0, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(apmoea::sbx_crossover({0.5}, {0.5}, 1.0, 0.0, rng),
                    std::invalid_argument);
}

TEST_CASE("polynomial_mutation: zero rate is the identity") {
    apmoea::Rng rng(16ULL);
    const std::vector<double> x = random_genome(12, rng);
    CHECK(apmoea::polynomial_mutation(x, 0.0, 1.0, rng, 20.0, 0.0) == x);
}

TEST_CASE("polynomial_mutation: keeps genes inside the bounds") {
    apmoea::Rng rng(17ULL);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::vector<double> x = random_genome(10, rng);
        const auto y = apmoea::polynomial_mutation(x, 0.0, 1.0, rng, 20.0, 1.0);
        for (double v : y) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("polynomial_mutation: at the lower bound only moves up") {
    apmoea::Rng rng(18ULL);
    bool moved = false;
    for (int trial = 0; trial < 200; ++trial) {
        const std::vector<double> x(5, 0.0);
        const auto y = apmoea::polynomial_mutation(x, 0.0, 1.0, rng, 20.0, 1.0);
        for (double v : y) {
            CHECK(v >= 0.0);
            if (v > 0.0) moved = true;
        }
    }
    CHECK(moved);
}

TEST_CASE("polynomial_mutation: default rate mutates one expected gene") {
    apmoea::Rng rng(19ULL);
    const std::size_t genes = 50;
    const int reps = 2000;
    long long changed = 0;
    for (int r = 0; r < reps; ++r) {
        const std::vector<double> x(genes, 0.37);
        const auto y = apmoea::polynomial_mutation(x, 0.0, 1.0, rng);  // rate 1/genes
        for (std::size_t i = 0; i < genes; ++i)
            if (y[i] != x[i]) ++changed;
    }
    // Binomial(reps * genes, 1/genes): mean = reps, sd = sqrt(reps * (1 - 1/genes)).
    const double mean = reps;
    const double sd = std::sqrt(reps * (1.0 - 1.0 / static_cast<double>(genes)));
    CHECK(std::fabs(static_cast<double>(changed) - mean) < 4.0 * sd);
}

TEST_CASE("polynomial_mutation: explicit rate hits its empirical frequency") {
    apmoea::Rng rng(20ULL);
    const std::size_t genes = 100;
    const int reps = 1000;
    const double p = 0.1;
    long long changed = 0;
    for (int r = 0; r < reps; ++r) {
        const std::vector<double> x(genes, 0.5);
        const auto y = apmoea::polynomial_mutation(x, 0.0, 1.0, rng, 20.0, p);
        for (std::size_t i = 0; i < genes; ++i)
            if (y[i] != x[i]) ++changed;
    }
    const double n = static_cast<double>(genes) * reps;
    const double mean = n * p;
    const double sd = std::sqrt(n * p * (1.0 - p));
    CHECK(std::fabs(static_cast<double>(changed) - mean) < 4.0 * sd);
}

TEST_CASE("polynomial_mutation: invalid bounds throw") {
    apmoea::Rng rng(21ULL);
    CHECK_THROWS_AS(apmoea::polynomial_mutation({0.5}, 1.0, 0.0, rng),
                    std::invalid_argument);
}
