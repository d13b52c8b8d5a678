#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apmoea/objective.hpp"
#include "apmoea/rng.hpp"

namespace apmoea::bench {

/// Box-bounded continuous benchmark, minimized in every objective.
/// Variables live in [0, 1].  Variation is simulated binary crossover
/// (eta 15, rate 0.9) and polynomial mutation (eta 20, one expected gene
/// per genome).
class ContinuousProblem {
public:
    using Genome = std::vector<double>;

    enum class Kind { Zdt1, Zdt2, Dtlz1, Dtlz2 };

    explicit ContinuousProblem(Kind kind);

    /// Lookup by registry name ("zdt1", "zdt2", "dtlz1", "dtlz2").
    /// Throws std::invalid_argument for unknown names.
    static ContinuousProblem by_name(std::string_view name);
    static bool is_known_name(std::string_view name);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    std::size_t num_objectives() const { return objectives_; }
    std::size_t num_variables() const { return variables_; }

    /// Conventional evaluation budget for this problem family.
    long long default_budget() const;

    ObjectiveVector evaluate(const Genome& x) const;
    Genome random_genome(Rng& rng) const;
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) const;
    Genome mutate(Genome x, Rng& rng) const;

private:
    Kind kind_;
    std::string name_;
    std::size_t variables_;
    std::size_t objectives_;
};

/// Random sample of the analytic optimal front.  ZDT fronts always include
/// both endpoints when count >= 2; interior points are drawn uniformly.
/// DTLZ1 samples the plane with objective sum 0.5, DTLZ2 the unit-sphere
/// octant.  Every returned set is mutually non-dominated.
std::vector<ObjectiveVector> sample_true_front(ContinuousProblem::Kind kind,
                                               std::size_t count, Rng& rng);

}  // namespace apmoea::bench
