#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "apmoea/objective.hpp"
#include "apmoea/rng.hpp"
#include "apmoea/vfmso/chromosome.hpp"
#include "apmoea/vfmso/instance.hpp"

namespace apmoea::vfmso {

/// One group maintenance operation as it ends up on the shop floor.
struct ScheduledOp {
    std::size_t car = 0;
    int group = 0;
    int workshop = 0;
    int team = 0;          // team index inside the workshop
    int slot = 0;          // flattened team slot
    double requested = 0.0;
    double actual = 0.0;   // >= requested; first-come-first-served delays
    double duration = 0.0; // setup + member maintenance times
};

/// Result of turning a chromosome into a concrete timetable.
struct Schedule {
    std::vector<ScheduledOp> ops;          // in processing order
    std::vector<double> maintenance_time;  // per global component: actual group start
    std::vector<double> workshop_load;     // per workshop: sum of duration + waiting
};

/// First-come-first-served decoding.  Requests are served in order of
/// (requested time, car, group); each operation starts at the latest of
/// its requested time, its team becoming free and its car becoming free.
Schedule decode(const VfmsoInstance& instance, const Chromosome& chromosome);

/// Penalty for maintaining at time `maintenance` a component that would
/// actually fail at `due`, was last repaired at `last_repair`, and costs
/// `cost` to maintain plus `setup` to bring the car in: the full cost and
/// setup at or before the last repair, zero at or after the failure,
/// linear in between.  Throws when due <= last_repair.
double penalty_cost(double maintenance, double due, double cost, double setup,
                    double last_repair);

/// Monte-Carlo model of when each component actually fails: per component
/// a fixed set of due dates drawn from its lifetime distribution truncated
/// to the execution window (redrawn while not after the last repair).
/// Samples are kept sorted with precomputed suffix sums so that mean
/// penalties cost one binary search instead of a pass over all samples.
class DueDateSampleSet {
public:
    static constexpr std::size_t kDefaultCount = 1000;

    static DueDateSampleSet draw(const VfmsoInstance& instance, std::size_t count, Rng& rng);

    /// Fixture entry point: one vector per global component, every value
    /// strictly after that component's last repair.
    static DueDateSampleSet from_samples(const VfmsoInstance& instance,
                                         std::vector<std::vector<double>> samples);

    std::size_t sample_count() const { return count_; }
    std::size_t num_components() const { return sorted_.size(); }
    const std::vector<double>& sorted_samples(std::size_t component) const {
        return sorted_[component];
    }

    /// Fraction of scenarios in which the component fails strictly before
    /// its maintenance starts (due < maintenance).  A scenario failing at
    /// exactly the maintenance time counts neither here nor as a penalty.
    double failure_fraction(std::size_t component, double maintenance) const;

    /// Mean of penalty_cost over the component's scenarios; penalties
    /// accrue only in scenarios with due > maintenance.
    double mean_penalty(std::size_t component, double maintenance, double base_cost) const;

private:
    std::size_t count_ = 0;
    std::vector<std::vector<double>> sorted_;      // per component, ascending
    std::vector<std::vector<double>> inv_suffix_;  // suffix sums of 1 / (due - last_repair)
    std::vector<double> last_repair_;              // per component

    void finalize(const VfmsoInstance& instance);
};

struct EvaluationResult {
    ObjectiveVector objectives;        // {workshop time, fleet cost, expected failures}
    std::vector<double> workshop_load; // per workshop
    std::vector<double> car_cost;      // per car, incl. its penalty share
};

/// The three minimized objectives:
///   1. total workshop time: sum over operations of duration plus waiting,
///   2. total fleet cost: setup + maintenance costs plus mean early-
///      maintenance penalties (base = component service cost + car setup
///      cost at the chosen workshop),
///   3. expected number of component failures before maintenance.
EvaluationResult evaluate_schedule(const VfmsoInstance& instance, const Chromosome& chromosome,
                                   const DueDateSampleSet& samples);

/// Engine adapter: owns the instance and the frozen due-date scenarios.
class FleetProblem {
public:
    using Genome = Chromosome;

    FleetProblem(VfmsoInstance instance, DueDateSampleSet samples);

    const VfmsoInstance& instance() const { return instance_; }
    const DueDateSampleSet& samples() const { return samples_; }
    const std::string& name() const { return name_; }
    std::size_t num_objectives() const { return 3; }

    ObjectiveVector evaluate(const Genome& chromosome) const;
    Genome random_genome(Rng& rng) const;
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) const;
    Genome mutate(Genome chromosome, Rng& rng) const;

private:
    VfmsoInstance instance_;
    DueDateSampleSet samples_;
    std::string name_ = "vfmso";
};

}  // namespace apmoea::vfmso
