#include "apmoea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apmoea/variation.hpp"

namespace apmoea::bench {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

ContinuousProblem::ContinuousProblem(Kind kind) : kind_(kind) {
    switch (kind) {
        case Kind::Zdt1:
            name_ = "zdt1";
            variables_ = 30;
            objectives_ = 2;
            break;
        case Kind::Zdt2:
            name_ = "zdt2";
            variables_ = 30;
            objectives_ = 2;
            break;
        case Kind::Dtlz1:
            name_ = "dtlz1";
            variables_ = 7;  // 2 position + 5 distance variables
            objectives_ = 3;
            break;
        case Kind::Dtlz2:
            name_ = "dtlz2";
            variables_ = 12;  // 2 position + 10 distance variables
            objectives_ = 3;
            break;
    }
}

ContinuousProblem ContinuousProblem::by_name(std::string_view name) {
    if (name == "zdt1") return ContinuousProblem(Kind::Zdt1);
    if (name == "zdt2") return ContinuousProblem(Kind::Zdt2);
    if (name == "dtlz1") return ContinuousProblem(Kind::Dtlz1);
    if (name == "dtlz2") return ContinuousProblem(Kind::Dtlz2);
    throw std::invalid_argument("unknown benchmark problem: " + std::string(name));
}

bool ContinuousProblem::is_known_name(std::string_view name) {
    return name == "zdt1" || name == "zdt2" || name == "dtlz1" || name == "dtlz2";
}

long long ContinuousProblem::default_budget() const {
    switch (kind_) {
        case Kind::Zdt1:
        case Kind::Zdt2:
            return 22000;
        case Kind::Dtlz1:
        case Kind::Dtlz2:
            return 120000;
    }
    return 0;
}

ObjectiveVector ContinuousProblem::evaluate(const Genome& x) const {
    if (x.size() != variables_)
        throw std::invalid_argument(name_ + ": wrong number of variables");
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument(name_ + ": variable out of [0, 1]");

    switch (kind_) {
        case Kind::Zdt1: {
            double tail = 0.0;
            for (std::size_t i = 1; i < variables_; ++i) tail += x[i];
            const double g = 1.0 + 9.0 * tail / static_cast<double>(variables_ - 1);
            const double f1 = x[0];
            return {f1, g * (1.0 - std::sqrt(f1 / g))};
        }
        case Kind::Zdt2: {
            double tail = 0.0;
            for (std::size_t i = 1; i < variables_; ++i) tail += x[i];
            const double g = 1.0 + 9.0 * tail / static_cast<double>(variables_ - 1);
            const double f1 = x[0];
            const double r = f1 / g;
            return {f1, g * (1.0 - r * r)};
        }
        case Kind::Dtlz1: {
            double g = 0.0;
            for (std::size_t i = 2; i < variables_; ++i) {
                const double d = x[i] - 0.5;
                g += d * d - std::cos(20.0 * kPi * d);
            }
            g = 100.0 * (static_cast<double>(variables_ - 2) + g);
            const double scale = 0.5 * (1.0 + g);
            return {scale * x[0] * x[1], scale * x[0] * (1.0 - x[1]), scale * (1.0 - x[0])};
        }
        case Kind::Dtlz2: {
            double g = 0.0;
            for (std::size_t i = 2; i < variables_; ++i) {
                const double d = x[i] - 0.5;
                g += d * d;
            }
            const double scale = 1.0 + g;
            const double a0 = x[0] * kHalfPi;
            const double a1 = x[1] * kHalfPi;
            return {scale * std::cos(a0) * std::cos(a1), scale * std::cos(a0) * std::sin(a1),
                    scale * std::sin(a0)};
        }
    }
    throw std::logic_error("unreachable");
}

ContinuousProblem::Genome ContinuousProblem::random_genome(Rng& rng) const {
    Genome x(variables_);
    for (double& v : x) v = rng.uniform();
    return x;
}

std::pair<ContinuousProblem::Genome, ContinuousProblem::Genome> ContinuousProblem::crossover(
    const Genome& a, const Genome& b, Rng& rng) const {
    return sbx_crossover(a, b, 0.0, 1.0, rng, 15.0, 0.9);
}

ContinuousProblem::Genome ContinuousProblem::mutate(Genome x, Rng& rng) const {
    return polynomial_mutation(std::move(x), 0.0, 1.0, rng, 20.0);
}

std::vector<ObjectiveVector> sample_true_front(ContinuousProblem::Kind kind, std::size_t count,
                                               Rng& rng) {
    if (count == 0) throw std::invalid_argument("sample_true_front: count must be positive");
    std::vector<ObjectiveVector> front;
    front.reserve(count);

    switch (kind) {
        case ContinuousProblem::Kind::Zdt1:
        case ContinuousProblem::Kind::Zdt2: {
            std::vector<double> ts;
            ts.reserve(count);
            if (count == 1) {
                ts.push_back(0.5);
            } else {
                ts.push_back(0.0);
                for (std::size_t i = 2; i < count; ++i) ts.push_back(rng.uniform());
                ts.push_back(1.0);
            }
            const bool convex = kind == ContinuousProblem::Kind::Zdt1;
            for (double t : ts)
                front.push_back({t, convex ? 1.0 - std::sqrt(t) : 1.0 - t * t});
            break;
        }
        case ContinuousProblem::Kind::Dtlz1: {
            // Uniform barycentric samples of the plane f1 + f2 + f3 = 0.5.
            for (std::size_t i = 0; i < count; ++i) {
                double u = rng.uniform();
                double v = rng.uniform();
                if (u + v > 1.0) {
                    u = 1.0 - u;
                    v = 1.0 - v;
                }
                front.push_back({0.5 * u, 0.5 * v, 0.5 * (1.0 - u - v)});
            }
            break;
        }
        case ContinuousProblem::Kind::Dtlz2: {
            // Random directions on the positive octant of the unit sphere.
            for (std::size_t i = 0; i < count; ++i) {
                const double a0 = rng.uniform() * kHalfPi;
                const double a1 = rng.uniform() * kHalfPi;
                front.push_back({std::cos(a0) * std::cos(a1), std::cos(a0) * std::sin(a1),
                                 std::sin(a0)});
            }
            break;
        }
    }
    return front;
}

}  // namespace apmoea::bench
