#include "apmoea/vfmso/chromosome.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace apmoea::vfmso {

namespace {

std::string car_tag(std::size_t car) { return "car " + std::to_string(car); }

/// Group member lists from a raw label vector (labels already in range).
std::vector<std::vector<std::size_t>> members_of(const std::vector<int>& group_of,
                                                 std::size_t n_groups) {
    std::vector<std::vector<std::size_t>> members(n_groups);
    for (std::size_t j = 0; j < group_of.size(); ++j)
        members[static_cast<std::size_t>(group_of[j])].push_back(j);
    return members;
}

}  // namespace

std::vector<std::vector<std::size_t>> group_members(const CarPlan& plan) {
    return members_of(plan.group_of, plan.start.size());
}

std::size_t total_groups(const Chromosome& chromosome) {
    std::size_t n = 0;
    for (const auto& plan : chromosome) n += plan.start.size();
    return n;
}

Interval group_window(const VfmsoInstance& instance, std::size_t car,
                      const std::vector<std::size_t>& members) {
    if (members.empty()) throw std::invalid_argument("group_window: empty group");
    const auto& comps = instance.cars[car].components;
    Interval window{-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    for (std::size_t j : members) {
        window.lo = std::max(window.lo, comps[j].window_start());
        window.hi = std::min(window.hi, comps[j].window_end());
    }
    return window;
}

std::vector<int> common_workshops(const VfmsoInstance& instance, std::size_t car,
                                  const std::vector<std::size_t>& members) {
    if (members.empty()) throw std::invalid_argument("common_workshops: empty group");
    const auto& comps = instance.cars[car].components;
    std::vector<int> shops;
    for (const auto& w : instance.workshops) {
        bool all = true;
        for (std::size_t j : members) {
            if (comps[j].service_at(w.id) == nullptr) {
                all = false;
                break;
            }
        }
        if (all) shops.push_back(w.id);
    }
    return shops;
}

bool is_feasible_group(const VfmsoInstance& instance, std::size_t car,
                       const std::vector<std::size_t>& members) {
    if (group_window(instance, car, members).empty()) return false;
    return !common_workshops(instance, car, members).empty();
}

std::vector<int> valid_team_slots(const VfmsoInstance& instance,
                                  const std::vector<int>& workshops) {
    std::vector<int> slots;
    for (int w : workshops) {
        const int base = instance.slot_base(w);
        for (int t = 0; t < instance.workshops[static_cast<std::size_t>(w)].teams; ++t)
            slots.push_back(base + t);
    }
    return slots;
}

std::vector<int> random_group_structure(const VfmsoInstance& instance, std::size_t car,
                                        Rng& rng) {
    const std::size_t n = instance.cars[car].components.size();
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    rng.shuffle(order);

    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t j : order) {
        bool joined = false;
        for (auto& members : groups) {
            members.push_back(j);
            if (is_feasible_group(instance, car, members)) {
                joined = true;
                break;
            }
            members.pop_back();
        }
        if (!joined) groups.push_back({j});
    }

    std::vector<int> group_of(n, -1);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t j : groups[g]) group_of[j] = static_cast<int>(g);

    // Renumber by first occurrence so downstream draws happen in a
    // canonical group order.
    std::vector<int> label(groups.size(), -1);
    int next = 0;
    for (std::size_t j = 0; j < n; ++j) {
        int& l = label[static_cast<std::size_t>(group_of[j])];
        if (l < 0) l = next++;
        group_of[j] = l;
    }
    return group_of;
}

namespace {

CarPlan random_car_plan(const VfmsoInstance& instance, std::size_t car, Rng& rng) {
    CarPlan plan;
    plan.group_of = random_group_structure(instance, car, rng);
    const std::size_t n_groups =
        plan.group_of.empty()
            ? 0
            : static_cast<std::size_t>(
                  *std::max_element(plan.group_of.begin(), plan.group_of.end())) +
                  1;
    const auto members = members_of(plan.group_of, n_groups);
    plan.start.resize(n_groups);
    plan.team_slot.resize(n_groups);
    for (std::size_t g = 0; g < n_groups; ++g) {
        const Interval window = group_window(instance, car, members[g]);
        plan.start[g] = rng.uniform(window.lo, window.hi);
        const auto slots = valid_team_slots(instance, common_workshops(instance, car, members[g]));
        plan.team_slot[g] = slots[rng.uniform_index(slots.size())];
    }
    return plan;
}

}  // namespace

Chromosome random_chromosome(const VfmsoInstance& instance, Rng& rng) {
    Chromosome chromosome;
    chromosome.reserve(instance.cars.size());
    for (std::size_t car = 0; car < instance.cars.size(); ++car)
        chromosome.push_back(random_car_plan(instance, car, rng));
    return chromosome;
}

void canonicalize(CarPlan& plan) {
    const std::size_t n_labels = plan.start.size();
    if (plan.team_slot.size() != n_labels)
        throw std::logic_error("canonicalize: start/team_slot size mismatch");
    for (int l : plan.group_of)
        if (l < 0 || static_cast<std::size_t>(l) >= n_labels)
            throw std::logic_error("canonicalize: group label out of range");

    std::vector<int> map(n_labels, -1);
    int next = 0;
    for (int l : plan.group_of)
        if (map[static_cast<std::size_t>(l)] < 0) map[static_cast<std::size_t>(l)] = next++;

    std::vector<double> start(static_cast<std::size_t>(next));
    std::vector<int> team(static_cast<std::size_t>(next));
    for (std::size_t l = 0; l < n_labels; ++l) {
        if (map[l] < 0) continue;  // label unused, entry dropped
        start[static_cast<std::size_t>(map[l])] = plan.start[l];
        team[static_cast<std::size_t>(map[l])] = plan.team_slot[l];
    }
    for (int& l : plan.group_of) l = map[static_cast<std::size_t>(l)];
    plan.start = std::move(start);
    plan.team_slot = std::move(team);
}

void repair(const VfmsoInstance& instance, Chromosome& chromosome, Rng& rng) {
    if (chromosome.size() != instance.cars.size())
        throw std::invalid_argument("repair: chromosome does not match the instance");

    for (std::size_t car = 0; car < chromosome.size(); ++car) {
        auto& plan = chromosome[car];
        const std::size_t n = instance.cars[car].components.size();

        bool structure_ok = plan.group_of.size() == n &&
                            plan.team_slot.size() == plan.start.size() && !plan.start.empty();
        if (structure_ok) {
            for (int l : plan.group_of)
                if (l < 0 || static_cast<std::size_t>(l) >= plan.start.size()) {
                    structure_ok = false;
                    break;
                }
        }
        if (!structure_ok) {
            plan = random_car_plan(instance, car, rng);
            continue;
        }

        canonicalize(plan);

        // Split infeasible groups into singletons; the extra groups get
        // poisoned start/team values so the redraw below fixes them.
        auto members = group_members(plan);
        bool split = false;
        for (std::size_t g = 0; g < members.size(); ++g) {
            if (is_feasible_group(instance, car, members[g])) continue;
            split = true;
            for (std::size_t k = 1; k < members[g].size(); ++k) {
                plan.group_of[members[g][k]] = plan.num_groups();
                plan.start.push_back(std::numeric_limits<double>::quiet_NaN());
                plan.team_slot.push_back(-1);
            }
        }
        if (split) {
            canonicalize(plan);
            members = group_members(plan);
        }

        for (std::size_t g = 0; g < members.size(); ++g) {
            const Interval window = group_window(instance, car, members[g]);
            if (!window.contains(plan.start[g]))
                plan.start[g] = rng.uniform(window.lo, window.hi);
            const auto slots =
                valid_team_slots(instance, common_workshops(instance, car, members[g]));
            if (!std::binary_search(slots.begin(), slots.end(), plan.team_slot[g]))
                plan.team_slot[g] = slots[rng.uniform_index(slots.size())];
        }
    }
}

void validate_chromosome(const VfmsoInstance& instance, const Chromosome& chromosome) {
    if (chromosome.size() != instance.cars.size())
        throw std::invalid_argument("chromosome: wrong number of car plans");

    for (std::size_t car = 0; car < chromosome.size(); ++car) {
        const auto& plan = chromosome[car];
        const std::size_t n = instance.cars[car].components.size();
        if (plan.group_of.size() != n)
            throw std::invalid_argument("chromosome: wrong component count for " + car_tag(car));
        if (plan.start.size() != plan.team_slot.size())
            throw std::invalid_argument("chromosome: start/team size mismatch for " +
                                        car_tag(car));

        int next = 0;
        for (int l : plan.group_of) {
            if (l < 0 || l > next)
                throw std::invalid_argument("chromosome: non-canonical group labels for " +
                                            car_tag(car));
            if (l == next) ++next;
        }
        if (static_cast<std::size_t>(next) != plan.start.size())
            throw std::invalid_argument("chromosome: unused group entries for " + car_tag(car));

        const auto members = group_members(plan);
        for (std::size_t g = 0; g < members.size(); ++g) {
            const Interval window = group_window(instance, car, members[g]);
            if (window.empty())
                throw std::invalid_argument("chromosome: group with disjoint windows in " +
                                            car_tag(car));
            if (!window.contains(plan.start[g]))
                throw std::invalid_argument("chromosome: start outside the window in " +
                                            car_tag(car));
            const auto shops = common_workshops(instance, car, members[g]);
            if (shops.empty())
                throw std::invalid_argument("chromosome: group without a shared workshop in " +
                                            car_tag(car));
            const auto slots = valid_team_slots(instance, shops);
            if (!std::binary_search(slots.begin(), slots.end(), plan.team_slot[g]))
                throw std::invalid_argument("chromosome: team slot not usable in " + car_tag(car));
        }
    }
}

namespace {

/// n_cuts distinct positions in [1, n_cars - 1], ascending.
std::vector<std::size_t> draw_cut_points(std::size_t n_cars, std::size_t n_cuts, Rng& rng) {
    std::vector<std::size_t> cuts;
    while (cuts.size() < n_cuts) {
        const std::size_t pos = 1 + static_cast<std::size_t>(rng.uniform_index(n_cars - 1));
        if (std::find(cuts.begin(), cuts.end(), pos) == cuts.end()) cuts.push_back(pos);
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

/// True when `car` falls into an even segment of the cut pattern.
bool even_segment(const std::vector<std::size_t>& cuts, std::size_t car) {
    std::size_t seg = 0;
    for (std::size_t c : cuts)
        if (c <= car) ++seg;
    return seg % 2 == 0;
}

}  // namespace

std::pair<Chromosome, Chromosome> crossover(const VfmsoInstance& instance, const Chromosome& a,
                                            const Chromosome& b, Rng& rng,
                                            double crossover_rate) {
    const std::size_t n_cars = instance.cars.size();
    if (a.size() != n_cars || b.size() != n_cars)
        throw std::invalid_argument("crossover: parents do not match the instance");
    if (n_cars < 2) return {a, b};
    if (!rng.chance(crossover_rate)) return {a, b};

    const std::size_t n_cuts = std::max<std::size_t>(1, n_cars / 10);
    const auto plan_cuts = draw_cut_points(n_cars, n_cuts, rng);
    const auto team_cuts = draw_cut_points(n_cars, n_cuts, rng);

    auto build = [&](bool first_child) {
        Chromosome child(n_cars);
        for (std::size_t car = 0; car < n_cars; ++car) {
            const bool plan_from_a = even_segment(plan_cuts, car) == first_child;
            const bool team_from_a = even_segment(team_cuts, car) == first_child;
            const Chromosome& plan_src = plan_from_a ? a : b;
            child[car] = plan_src[car];
            if (team_from_a != plan_from_a) {
                const CarPlan& other = (team_from_a ? a : b)[car];
                const int other_last = other.num_groups() - 1;
                for (int g = 0; g < child[car].num_groups(); ++g)
                    child[car].team_slot[static_cast<std::size_t>(g)] =
                        other.team_slot[static_cast<std::size_t>(std::min(g, other_last))];
            }
        }
        return child;
    };

    auto first = build(true);
    auto second = build(false);
    repair(instance, first, rng);
    repair(instance, second, rng);
    return {std::move(first), std::move(second)};
}

void mutate(const VfmsoInstance& instance, Chromosome& chromosome, Rng& rng,
            const MutationRates& rates) {
    const std::size_t n_cars = instance.cars.size();
    if (chromosome.size() != n_cars)
        throw std::invalid_argument("mutate: chromosome does not match the instance");

    auto resolve = [](double rate, double fallback, const char* what) {
        const double r = rate < 0.0 ? fallback : rate;
        if (!(r >= 0.0 && r <= 1.0))
            throw std::invalid_argument(std::string("mutate: bad ") + what + " rate");
        return r;
    };
    const double group_rate =
        resolve(rates.group_rate, 1.0 / static_cast<double>(n_cars), "group");

    for (std::size_t car = 0; car < n_cars; ++car) {
        if (!rng.chance(group_rate)) continue;
        auto& plan = chromosome[car];
        plan.group_of = random_group_structure(instance, car, rng);
        const std::size_t n_groups = static_cast<std::size_t>(
            *std::max_element(plan.group_of.begin(), plan.group_of.end()) + 1);
        // Entries for kept group indices stay and are validated by the
        // final repair; fresh groups get poisoned values so the repair is
        // forced to redraw them.
        plan.start.resize(n_groups, std::numeric_limits<double>::quiet_NaN());
        plan.team_slot.resize(n_groups, -1);
    }

    const double per_group = 1.0 / static_cast<double>(total_groups(chromosome));
    const double start_rate = resolve(rates.start_rate, per_group, "start");
    const double team_rate = resolve(rates.team_rate, per_group, "team");

    for (std::size_t car = 0; car < n_cars; ++car) {
        auto& plan = chromosome[car];
        const auto members = group_members(plan);
        for (std::size_t g = 0; g < members.size(); ++g) {
            if (!rng.chance(start_rate)) continue;
            const Interval window = group_window(instance, car, members[g]);
            plan.start[g] = rng.uniform(window.lo, window.hi);
        }
    }
    for (std::size_t car = 0; car < n_cars; ++car) {
        auto& plan = chromosome[car];
        const auto members = group_members(plan);
        for (std::size_t g = 0; g < members.size(); ++g) {
            if (!rng.chance(team_rate)) continue;
            const auto slots =
                valid_team_slots(instance, common_workshops(instance, car, members[g]));
            plan.team_slot[g] = slots[rng.uniform_index(slots.size())];
        }
    }

    repair(instance, chromosome, rng);
}

}  // namespace apmoea::vfmso
