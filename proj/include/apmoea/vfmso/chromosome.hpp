#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "apmoea/rng.hpp"
#include "apmoea/vfmso/instance.hpp"

namespace apmoea::vfmso {

/// Closed time interval.  Empty when lo > hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return !(lo <= hi); }
    double length() const { return hi - lo; }
    bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Maintenance plan of a single car, three aligned vectors:
///   group_of[j]  -> group index of component j,
///   start[g]     -> requested start time of group g,
///   team_slot[g] -> flattened team slot (see VfmsoInstance::slot_to_team).
///
/// Canonical numbering: scanning components in index order, the first
/// group seen is 0, the next new one 1, and so on.  All operators keep
/// plans canonical so that identical plans compare equal.
struct CarPlan {
    std::vector<int> group_of;
    std::vector<double> start;
    std::vector<int> team_slot;

    int num_groups() const { return static_cast<int>(start.size()); }

    bool operator==(const CarPlan&) const = default;
};

using Chromosome = std::vector<CarPlan>;

/// Members of each group, ascending component indices per group.
std::vector<std::vector<std::size_t>> group_members(const CarPlan& plan);

std::size_t total_groups(const Chromosome& chromosome);

/// Intersection of the members' execution windows.
Interval group_window(const VfmsoInstance& instance, std::size_t car,
                      const std::vector<std::size_t>& members);

/// Workshops offering service for every member, ascending ids.
std::vector<int> common_workshops(const VfmsoInstance& instance, std::size_t car,
                                  const std::vector<std::size_t>& members);

/// A group is feasible when its members' windows overlap and at least one
/// workshop can maintain all of them.
bool is_feasible_group(const VfmsoInstance& instance, std::size_t car,
                       const std::vector<std::size_t>& members);

/// Flattened team slots belonging to the given workshops, ascending.
std::vector<int> valid_team_slots(const VfmsoInstance& instance,
                                  const std::vector<int>& workshops);

/// Random grouping of one car's components: components are visited in
/// shuffled order and each joins the first existing group that stays
/// feasible with it, or founds a new one.  Returns canonical group_of.
std::vector<int> random_group_structure(const VfmsoInstance& instance, std::size_t car,
                                        Rng& rng);

/// Random feasible plan: random grouping, then per group a start drawn
/// uniformly from the window intersection and a team slot drawn uniformly
/// from the slots of the common workshops.
Chromosome random_chromosome(const VfmsoInstance& instance, Rng& rng);

/// Renumber groups into canonical order and drop entries of unused group
/// labels.  Requires start/team_slot aligned to the label range.
void canonicalize(CarPlan& plan);

/// Make a plan valid in place: canonicalize, split infeasible groups into
/// singletons, redraw out-of-window starts uniformly from the window and
/// invalid team slots uniformly from the valid ones.  A valid canonical
/// chromosome passes through unchanged.
void repair(const VfmsoInstance& instance, Chromosome& chromosome, Rng& rng);

/// Throws std::invalid_argument when the chromosome is not a valid
/// canonical plan for the instance.
void validate_chromosome(const VfmsoInstance& instance, const Chromosome& chromosome);

/// Car-aligned multi-point crossover.  Grouping and starts travel together
/// as whole car plans over max(1, n_cars / 10) cut points; team slots
/// recombine over an independent set of cut points and are matched to the
/// inherited groups by index (clamped), then repaired.  With fewer than
/// two cars, or when the rate gate fails, the children are copies.
std::pair<Chromosome, Chromosome> crossover(const VfmsoInstance& instance,
                                            const Chromosome& a, const Chromosome& b,
                                            Rng& rng, double crossover_rate = 0.9);

/// Probabilities of the three mutation passes.  Negative values pick the
/// defaults: one expected structure resample per chromosome (1 / n_cars
/// per car) and one expected redraw each for starts and team slots
/// (1 / total_groups per group, counted after the group pass).
struct MutationRates {
    double group_rate = -1.0;
    double start_rate = -1.0;
    double team_rate = -1.0;
};

/// Three passes in fixed order, then a repair.
///   group: re-sample the car's whole group structure; starts and team
///          slots of surviving group indices are kept where still valid
///          and redrawn by the final repair otherwise.
///   start: redraw the group start uniformly from its window.
///   team:  redraw the team slot uniformly from the valid slots.
/// The group pass runs first because it changes what the other two apply
/// to; with no pass firing the chromosome comes back unchanged.
void mutate(const VfmsoInstance& instance, Chromosome& chromosome, Rng& rng,
            const MutationRates& rates = {});

}  // namespace apmoea::vfmso
