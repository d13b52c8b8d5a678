#include "apmoea/vfmso/evaluate.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace apmoea::vfmso {

Schedule decode(const VfmsoInstance& instance, const Chromosome& chromosome) {
    if (chromosome.size() != instance.cars.size())
        throw std::invalid_argument("decode: chromosome does not match the instance");

    Schedule schedule;
    for (std::size_t car = 0; car < chromosome.size(); ++car) {
        const auto& plan = chromosome[car];
        const auto members = group_members(plan);
        const auto& spec = instance.cars[car];
        for (std::size_t g = 0; g < members.size(); ++g) {
            ScheduledOp op;
            op.car = car;
            op.group = static_cast<int>(g);
            op.slot = plan.team_slot[g];
            const auto [workshop, team] = instance.slot_to_team(op.slot);
            op.workshop = workshop;
            op.team = team;
            op.requested = plan.start[g];
            op.duration = spec.setup_time[static_cast<std::size_t>(workshop)];
            for (std::size_t j : members[g]) {
                const ShopService* service = spec.components[j].service_at(workshop);
                if (service == nullptr)
                    throw std::invalid_argument("decode: component sent to an unable workshop");
                op.duration += service->time;
            }
            schedule.ops.push_back(op);
        }
    }

    std::sort(schedule.ops.begin(), schedule.ops.end(),
              [](const ScheduledOp& a, const ScheduledOp& b) {
                  if (a.requested != b.requested) return a.requested < b.requested;
                  if (a.car != b.car) return a.car < b.car;
                  return a.group < b.group;
              });

    const double unconstrained = -std::numeric_limits<double>::infinity();
    std::vector<double> team_free(static_cast<std::size_t>(instance.total_team_slots()),
                                  unconstrained);
    std::vector<double> car_free(instance.cars.size(), unconstrained);
    schedule.maintenance_time.assign(instance.total_components(),
                                     std::numeric_limits<double>::quiet_NaN());
    schedule.workshop_load.assign(instance.workshops.size(), 0.0);

    for (auto& op : schedule.ops) {
        op.actual = std::max({op.requested, team_free[static_cast<std::size_t>(op.slot)],
                              car_free[op.car]});
        const double done = op.actual + op.duration;
        team_free[static_cast<std::size_t>(op.slot)] = done;
        car_free[op.car] = done;
        const auto members = group_members(chromosome[op.car]);
        const std::size_t base = instance.component_offset(op.car);
        for (std::size_t j : members[static_cast<std::size_t>(op.group)])
            schedule.maintenance_time[base + j] = op.actual;
        schedule.workshop_load[static_cast<std::size_t>(op.workshop)] +=
            op.duration + (op.actual - op.requested);
    }
    return schedule;
}

double penalty_cost(double maintenance, double due, double cost, double setup,
                    double last_repair) {
    if (!(due > last_repair))
        throw std::invalid_argument("penalty_cost: due date not after the last repair");
    const double base = cost + setup;
    if (maintenance <= last_repair) return base;
    if (maintenance >= due) return 0.0;
    return base * (due - maintenance) / (due - last_repair);
}

DueDateSampleSet DueDateSampleSet::draw(const VfmsoInstance& instance, std::size_t count,
                                        Rng& rng) {
    if (count == 0) throw std::invalid_argument("DueDateSampleSet: need at least one sample");
    DueDateSampleSet set;
    set.count_ = count;
    set.sorted_.reserve(instance.total_components());
    for (const auto& car : instance.cars) {
        for (const auto& comp : car.components) {
            std::vector<double> samples(count);
            for (double& d : samples) {
                do {
                    d = rng.normal(comp.rul_mean, comp.rul_std);
                } while (d < comp.window_start() || d > comp.window_end() ||
                         d <= comp.last_repair);
            }
            set.sorted_.push_back(std::move(samples));
        }
    }
    set.finalize(instance);
    return set;
}

DueDateSampleSet DueDateSampleSet::from_samples(const VfmsoInstance& instance,
                                                std::vector<std::vector<double>> samples) {
    if (samples.size() != instance.total_components())
        throw std::invalid_argument("DueDateSampleSet: one sample vector per component needed");
    DueDateSampleSet set;
    set.count_ = samples.empty() ? 0 : samples.front().size();
    if (set.count_ == 0) throw std::invalid_argument("DueDateSampleSet: need at least one sample");
    for (const auto& s : samples)
        if (s.size() != set.count_)
            throw std::invalid_argument("DueDateSampleSet: ragged sample vectors");
    set.sorted_ = std::move(samples);
    set.finalize(instance);
    return set;
}

void DueDateSampleSet::finalize(const VfmsoInstance& instance) {
    last_repair_.reserve(sorted_.size());
    for (const auto& car : instance.cars)
        for (const auto& comp : car.components) last_repair_.push_back(comp.last_repair);

    inv_suffix_.resize(sorted_.size());
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
        auto& samples = sorted_[i];
        std::sort(samples.begin(), samples.end());
        if (!(samples.front() > last_repair_[i]))
            throw std::invalid_argument("DueDateSampleSet: due date not after the last repair");
        auto& suffix = inv_suffix_[i];
        suffix.assign(samples.size() + 1, 0.0);
        for (std::size_t k = samples.size(); k > 0; --k)
            suffix[k - 1] = suffix[k] + 1.0 / (samples[k - 1] - last_repair_[i]);
    }
}

double DueDateSampleSet::failure_fraction(std::size_t component, double maintenance) const {
    const auto& samples = sorted_[component];
    const auto failed =
        std::lower_bound(samples.begin(), samples.end(), maintenance) - samples.begin();
    return static_cast<double>(failed) / static_cast<double>(count_);
}

double DueDateSampleSet::mean_penalty(std::size_t component, double maintenance,
                                      double base_cost) const {
    const double last = last_repair_[component];
    if (maintenance <= last) return base_cost;
    const auto& samples = sorted_[component];
    const auto first_late =
        std::upper_bound(samples.begin(), samples.end(), maintenance) - samples.begin();
    const auto late = static_cast<std::size_t>(first_late);
    // sum over due > maintenance of (due - maintenance) / (due - last)
    //   = count - (maintenance - last) * sum of 1 / (due - last)
    const double survivors = static_cast<double>(samples.size() - late);
    const double sum = survivors - (maintenance - last) * inv_suffix_[component][late];
    return base_cost * sum / static_cast<double>(count_);
}

EvaluationResult evaluate_schedule(const VfmsoInstance& instance, const Chromosome& chromosome,
                                   const DueDateSampleSet& samples) {
    if (samples.num_components() != instance.total_components())
        throw std::invalid_argument("evaluate_schedule: sample set for a different instance");
    const Schedule schedule = decode(instance, chromosome);

    EvaluationResult result;
    result.workshop_load = schedule.workshop_load;
    result.car_cost.assign(instance.cars.size(), 0.0);

    double total_time = 0.0;
    for (double load : schedule.workshop_load) total_time += load;

    double expected_failures = 0.0;
    for (const auto& op : schedule.ops) {
        const auto& spec = instance.cars[op.car];
        const double setup = spec.setup_cost[static_cast<std::size_t>(op.workshop)];
        double cost = setup;
        const auto members = group_members(chromosome[op.car]);
        const std::size_t base = instance.component_offset(op.car);
        for (std::size_t j : members[static_cast<std::size_t>(op.group)]) {
            const ShopService* service = spec.components[j].service_at(op.workshop);
            cost += service->cost;
            const std::size_t comp = base + j;
            result.car_cost[op.car] +=
                samples.mean_penalty(comp, op.actual, service->cost + setup);
            expected_failures += samples.failure_fraction(comp, op.actual);
        }
        result.car_cost[op.car] += cost;
    }

    double total_cost = 0.0;
    for (double c : result.car_cost) total_cost += c;

    result.objectives = {total_time, total_cost, expected_failures};
    return result;
}

FleetProblem::FleetProblem(VfmsoInstance instance, DueDateSampleSet samples)
    : instance_(std::move(instance)), samples_(std::move(samples)) {
    instance_.validate();
    if (samples_.num_components() != instance_.total_components())
        throw std::invalid_argument("FleetProblem: sample set for a different instance");
}

ObjectiveVector FleetProblem::evaluate(const Genome& chromosome) const {
    return evaluate_schedule(instance_, chromosome, samples_).objectives;
}

FleetProblem::Genome FleetProblem::random_genome(Rng& rng) const {
    return random_chromosome(instance_, rng);
}

std::pair<FleetProblem::Genome, FleetProblem::Genome> FleetProblem::crossover(
    const Genome& a, const Genome& b, Rng& rng) const {
    return vfmso::crossover(instance_, a, b, rng, 0.9);
}

FleetProblem::Genome FleetProblem::mutate(Genome chromosome, Rng& rng) const {
    vfmso::mutate(instance_, chromosome, rng);
    return chromosome;
}

}  // namespace apmoea::vfmso
