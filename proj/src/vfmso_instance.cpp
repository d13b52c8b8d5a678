#include "apmoea/vfmso/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace apmoea::vfmso {

bool WorkshopSpec::can_maintain(int kind) const {
    return std::binary_search(kinds.begin(), kinds.end(), kind);
}

const ShopService* ComponentSpec::service_at(int workshop) const {
    for (const auto& s : services)
        if (s.workshop == workshop) return &s;
    return nullptr;
}

std::size_t VfmsoInstance::total_components() const {
    std::size_t n = 0;
    for (const auto& car : cars) n += car.components.size();
    return n;
}

std::size_t VfmsoInstance::component_offset(std::size_t car) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < car; ++i) n += cars[i].components.size();
    return n;
}

int VfmsoInstance::total_team_slots() const {
    int n = 0;
    for (const auto& w : workshops) n += w.teams;
    return n;
}

int VfmsoInstance::slot_base(int workshop) const {
    int n = 0;
    for (int k = 0; k < workshop; ++k) n += workshops[static_cast<std::size_t>(k)].teams;
    return n;
}

std::pair<int, int> VfmsoInstance::slot_to_team(int slot) const {
    if (slot < 0) throw std::invalid_argument("slot_to_team: slot out of range");
    int base = 0;
    for (const auto& w : workshops) {
        if (slot < base + w.teams) return {w.id, slot - base};
        base += w.teams;
    }
    throw std::invalid_argument("slot_to_team: slot out of range");
}

void VfmsoInstance::validate() const {
    if (workshops.empty()) throw std::invalid_argument("instance: no workshops");
    if (cars.empty()) throw std::invalid_argument("instance: no cars");
    for (std::size_t k = 0; k < workshops.size(); ++k) {
        const auto& w = workshops[k];
        if (w.id != static_cast<int>(k))
            throw std::invalid_argument("instance: workshop ids must be 0..n-1 in order");
        if (w.teams < 1) throw std::invalid_argument("instance: workshop without teams");
        if (w.kinds.empty()) throw std::invalid_argument("instance: workshop maintains nothing");
        if (!std::is_sorted(w.kinds.begin(), w.kinds.end()) ||
            std::adjacent_find(w.kinds.begin(), w.kinds.end()) != w.kinds.end())
            throw std::invalid_argument("instance: workshop kinds must be sorted and unique");
    }
    for (const auto& car : cars) {
        if (car.components.empty()) throw std::invalid_argument("instance: car without components");
        if (car.setup_time.size() != workshops.size() ||
            car.setup_cost.size() != workshops.size())
            throw std::invalid_argument("instance: setup arrays must cover every workshop");
        for (double x : car.setup_time)
            if (!(x > 0.0)) throw std::invalid_argument("instance: setup time must be positive");
        for (double y : car.setup_cost)
            if (!(y >= 0.0)) throw std::invalid_argument("instance: negative setup cost");
        for (const auto& comp : car.components) {
            if (!(comp.rul_std > 0.0))
                throw std::invalid_argument("instance: component needs positive deviation");
            if (comp.last_repair > comp.window_start())
                throw std::invalid_argument(
                    "instance: last repair later than the execution window start");
            if (comp.services.empty())
                throw std::invalid_argument("instance: component no workshop can maintain");
            int prev = -1;
            for (const auto& s : comp.services) {
                if (s.workshop <= prev)
                    throw std::invalid_argument("instance: services must be sorted by workshop");
                prev = s.workshop;
                if (s.workshop < 0 || s.workshop >= static_cast<int>(workshops.size()))
                    throw std::invalid_argument("instance: service references unknown workshop");
                if (!workshops[static_cast<std::size_t>(s.workshop)].can_maintain(comp.kind))
                    throw std::invalid_argument(
                        "instance: service at a workshop that cannot maintain the kind");
                if (!(s.time > 0.0) || !(s.cost >= 0.0))
                    throw std::invalid_argument("instance: bad service time or cost");
            }
        }
    }
}

VfmsoInstance generate_instance(int n_cars, int n_workshops, Rng& rng) {
    if (n_cars < 1 || n_workshops < 1)
        throw std::invalid_argument("generate_instance: need at least one car and workshop");

    VfmsoInstance instance;
    instance.workshops.resize(static_cast<std::size_t>(n_workshops));
    for (int k = 0; k < n_workshops; ++k) {
        auto& w = instance.workshops[static_cast<std::size_t>(k)];
        w.id = k;
        w.teams = 1 + static_cast<int>(rng.uniform_index(4));
    }

    // Capability matrix: each workshop takes each kind with probability 0.6;
    // empty rows are redrawn, and the whole matrix is redrawn until every
    // kind is maintained somewhere.
    while (true) {
        bool covered[kKindCount] = {false, false, false, false};
        for (auto& w : instance.workshops) {
            w.kinds.clear();
            while (w.kinds.empty()) {
                for (int kind = 0; kind < kKindCount; ++kind)
                    if (rng.chance(0.6)) w.kinds.push_back(kind);
            }
            for (int kind : w.kinds) covered[static_cast<std::size_t>(kind)] = true;
        }
        if (covered[0] && covered[1] && covered[2] && covered[3]) break;
    }

    // One engine, four springs, four brakes, four tires per car.
    static constexpr int kCarKinds[13] = {kEngine, kSpring, kSpring, kSpring, kSpring,
                                          kBrake,  kBrake,  kBrake,  kBrake,
                                          kTire,   kTire,   kTire,   kTire};
    // Lifetime bands per kind, hours.
    static constexpr double kMeanLow[kKindCount] = {6000.0, 4000.0, 3000.0, 2000.0};
    static constexpr double kMeanHigh[kKindCount] = {8000.0, 6000.0, 5000.0, 4000.0};

    instance.cars.resize(static_cast<std::size_t>(n_cars));
    for (auto& car : instance.cars) {
        car.setup_time.resize(static_cast<std::size_t>(n_workshops));
        car.setup_cost.resize(static_cast<std::size_t>(n_workshops));
        for (int k = 0; k < n_workshops; ++k) {
            car.setup_time[static_cast<std::size_t>(k)] = rng.uniform(0.5, 2.0);
            car.setup_cost[static_cast<std::size_t>(k)] = rng.uniform(20.0, 80.0);
        }
        car.components.resize(13);
        for (std::size_t j = 0; j < 13; ++j) {
            auto& comp = car.components[j];
            comp.kind = kCarKinds[j];
            comp.rul_mean = rng.uniform(kMeanLow[comp.kind], kMeanHigh[comp.kind]);
            comp.rul_std = comp.rul_mean * rng.uniform(0.05, 0.10);
            comp.last_repair = -rng.uniform(0.0, 0.3 * comp.rul_mean);
            for (const auto& w : instance.workshops) {
                if (!w.can_maintain(comp.kind)) continue;
                comp.services.push_back({w.id, rng.uniform(1.0, 8.0), rng.uniform(50.0, 400.0)});
            }
        }
    }
    instance.validate();
    return instance;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
    throw std::runtime_error("instance parse error at line " + std::to_string(line_no) + ": " +
                             why);
}

}  // namespace

void save_instance(const VfmsoInstance& instance, std::ostream& out) {
    out << "vfmso-instance v1\n";
    out << "workshops " << instance.workshops.size() << "\n";
    for (const auto& w : instance.workshops) {
        out << "workshop " << w.id << " teams " << w.teams << " kinds";
        for (int kind : w.kinds) out << ' ' << kind;
        out << "\n";
    }
    out << "cars " << instance.cars.size() << "\n";
    for (std::size_t i = 0; i < instance.cars.size(); ++i) {
        const auto& car = instance.cars[i];
        out << "car " << i << " components " << car.components.size() << "\n";
        out << "setup " << i << " times";
        for (double x : car.setup_time) out << ' ' << format_double(x);
        out << " costs";
        for (double y : car.setup_cost) out << ' ' << format_double(y);
        out << "\n";
        for (std::size_t j = 0; j < car.components.size(); ++j) {
            const auto& comp = car.components[j];
            out << "component " << i << ' ' << j << " kind " << comp.kind << " mu "
                << format_double(comp.rul_mean) << " sigma " << format_double(comp.rul_std)
                << " last_repair " << format_double(comp.last_repair) << "\n";
            for (const auto& s : comp.services)
                out << "service " << i << ' ' << j << " workshop " << s.workshop << " time "
                    << format_double(s.time) << " cost " << format_double(s.cost) << "\n";
        }
    }
    out << "end\n";
}

void save_instance_file(const VfmsoInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    save_instance(instance, out);
    if (!out.good()) throw std::runtime_error("write failed for instance file: " + path);
}

VfmsoInstance load_instance(std::istream& in) {
    VfmsoInstance instance;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false, saw_end = false;

    auto expect_word = [&](std::istringstream& s, const std::string& want) {
        std::string word;
        if (!(s >> word) || word != want) parse_fail(line_no, "expected '" + want + "'");
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "vfmso-instance v1")
                parse_fail(line_no, "unsupported header '" + line + "'");
            saw_header = true;
            continue;
        }
        std::istringstream s(line);
        std::string tag;
        s >> tag;
        if (tag == "workshops") {
            std::size_t n = 0;
            if (!(s >> n) || n == 0) parse_fail(line_no, "bad workshop count");
            instance.workshops.reserve(n);
        } else if (tag == "workshop") {
            WorkshopSpec w;
            if (!(s >> w.id)) parse_fail(line_no, "bad workshop id");
            expect_word(s, "teams");
            if (!(s >> w.teams)) parse_fail(line_no, "bad team count");
            expect_word(s, "kinds");
            int kind;
            while (s >> kind) w.kinds.push_back(kind);
            instance.workshops.push_back(std::move(w));
        } else if (tag == "cars") {
            std::size_t n = 0;
            if (!(s >> n) || n == 0) parse_fail(line_no, "bad car count");
            instance.cars.resize(n);
        } else if (tag == "car") {
            std::size_t id = 0, comps = 0;
            if (!(s >> id)) parse_fail(line_no, "bad car id");
            expect_word(s, "components");
            if (!(s >> comps) || comps == 0) parse_fail(line_no, "bad component count");
            if (id >= instance.cars.size()) parse_fail(line_no, "car id out of range");
            instance.cars[id].components.resize(comps);
        } else if (tag == "setup") {
            std::size_t id = 0;
            if (!(s >> id) || id >= instance.cars.size()) parse_fail(line_no, "bad car id");
            expect_word(s, "times");
            auto& car = instance.cars[id];
            car.setup_time.resize(instance.workshops.size());
            for (double& x : car.setup_time)
                if (!(s >> x)) parse_fail(line_no, "missing setup time");
            expect_word(s, "costs");
            car.setup_cost.resize(instance.workshops.size());
            for (double& y : car.setup_cost)
                if (!(s >> y)) parse_fail(line_no, "missing setup cost");
        } else if (tag == "component") {
            std::size_t car = 0, j = 0;
            if (!(s >> car >> j) || car >= instance.cars.size())
                parse_fail(line_no, "bad component address");
            if (j >= instance.cars[car].components.size())
                parse_fail(line_no, "component index out of range");
            auto& comp = instance.cars[car].components[j];
            expect_word(s, "kind");
            if (!(s >> comp.kind)) parse_fail(line_no, "bad kind");
            expect_word(s, "mu");
            if (!(s >> comp.rul_mean)) parse_fail(line_no, "bad mean");
            expect_word(s, "sigma");
            if (!(s >> comp.rul_std)) parse_fail(line_no, "bad deviation");
            expect_word(s, "last_repair");
            if (!(s >> comp.last_repair)) parse_fail(line_no, "bad last repair");
        } else if (tag == "service") {
            std::size_t car = 0, j = 0;
            if (!(s >> car >> j) || car >= instance.cars.size())
                parse_fail(line_no, "bad service address");
            if (j >= instance.cars[car].components.size())
                parse_fail(line_no, "service component out of range");
            ShopService svc;
            expect_word(s, "workshop");
            if (!(s >> svc.workshop)) parse_fail(line_no, "bad workshop reference");
            expect_word(s, "time");
            if (!(s >> svc.time)) parse_fail(line_no, "bad service time");
            expect_word(s, "cost");
            if (!(s >> svc.cost)) parse_fail(line_no, "bad service cost");
            instance.cars[car].components[j].services.push_back(svc);
        } else if (tag == "end") {
            saw_end = true;
            break;
        } else {
            parse_fail(line_no, "unknown record '" + tag + "'");
        }
    }
    if (!saw_header) throw std::runtime_error("instance parse error: missing header");
    if (!saw_end) throw std::runtime_error("instance parse error: missing 'end'");
    instance.validate();
    return instance;
}

VfmsoInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return load_instance(in);
}

}  // namespace apmoea::vfmso
