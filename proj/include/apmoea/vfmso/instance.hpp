#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "apmoea/rng.hpp"

namespace apmoea::vfmso {

/// Component kinds used by the synthetic fleet generator.
enum ComponentKind : int { kEngine = 0, kSpring = 1, kBrake = 2, kTire = 3 };
inline constexpr int kKindCount = 4;

struct WorkshopSpec {
    int id = 0;
    int teams = 1;               // parallel teams, each serving one car at a time
    std::vector<int> kinds;      // component kinds it can maintain, sorted ascending

    bool can_maintain(int kind) const;
};

/// Maintenance terms of one component at one capable workshop.
struct ShopService {
    int workshop = 0;
    double time = 0.0;  // hours of work
    double cost = 0.0;
};

struct ComponentSpec {
    int kind = 0;
    double rul_mean = 0.0;    // remaining useful life, mean hours from now
    double rul_std = 0.0;
    double last_repair = 0.0;  // absolute hours (not after the window start)
    std::vector<ShopService> services;  // sorted by workshop id, never empty

    /// Maintenance must happen inside [mean - 2 std, mean + 2 std].
    double window_start() const { return rul_mean - 2.0 * rul_std; }
    double window_end() const { return rul_mean + 2.0 * rul_std; }

    const ShopService* service_at(int workshop) const;
};

struct CarSpec {
    std::vector<ComponentSpec> components;
    std::vector<double> setup_time;  // per workshop, hours to bring the car in
    std::vector<double> setup_cost;  // per workshop
};

struct VfmsoInstance {
    std::vector<WorkshopSpec> workshops;
    std::vector<CarSpec> cars;

    std::size_t total_components() const;
    /// Global component index of car `car`, component 0.
    std::size_t component_offset(std::size_t car) const;

    /// Team slots flattened across workshops: workshop 0 owns slots
    /// [0, z_0), workshop 1 the next z_1, and so on.
    int total_team_slots() const;
    int slot_base(int workshop) const;
    std::pair<int, int> slot_to_team(int slot) const;  // (workshop, team index)

    /// Throws std::invalid_argument when any structural contract is broken.
    void validate() const;
};

/// Synthetic fleet: every car carries one engine, four springs, four brakes
/// and four tires.  Lifetime means fall in kind-specific bands inside
/// [2000, 8000] hours (engines longest-lived, tires shortest), deviations
/// are 5-10% of the mean, maintenance takes 1-8 hours and costs 50-400 per
/// component plus a per-car setup of 0.5-2 hours and cost 20-80.  Workshops
/// get 1-4 teams and random capability sets, redrawn until every kind is
/// covered somewhere.
VfmsoInstance generate_instance(int n_cars, int n_workshops, Rng& rng);

/// Plain-text round-trip.  save followed by load followed by save yields
/// byte-identical output.
void save_instance(const VfmsoInstance& instance, std::ostream& out);
void save_instance_file(const VfmsoInstance& instance, const std::string& path);
VfmsoInstance load_instance(std::istream& in);
VfmsoInstance load_instance_file(const std::string& path);

}  // namespace apmoea::vfmso
