#include "apmoea/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "apmoea/engine.hpp"
#include "apmoea/metrics.hpp"
#include "apmoea/preference.hpp"
#include "apmoea/problems.hpp"
#include "apmoea/vfmso/instance.hpp"

namespace apmoea::cli {

namespace {

namespace fs = std::filesystem;

// Decorrelates the due-date sample stream from the evolution stream that
// is seeded with the same user-facing seed.
constexpr std::uint64_t kSampleStreamSalt = 0x9e3779b97f4a7c15ULL;

constexpr std::string_view kFleetPrefix = "vfmso:";
constexpr long long kFleetDefaultBudget = 1200000;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_csv(const ObjectiveVector& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string hex16(std::uint64_t value) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    return out;
}

std::string vector_summary(const std::vector<double>& genome) {
    std::string out;
    for (std::size_t i = 0; i < genome.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(genome[i]);
    }
    return out;
}

std::string chromosome_summary(const vfmso::Chromosome& chromosome) {
    std::string bytes;
    for (const auto& plan : chromosome) {
        for (int g : plan.group_of) {
            bytes += std::to_string(g);
            bytes += ',';
        }
        bytes += '|';
        for (double s : plan.start) {
            bytes += format_double(s);
            bytes += ',';
        }
        bytes += '|';
        for (int t : plan.team_slot) {
            bytes += std::to_string(t);
            bytes += ',';
        }
        bytes += '#';
    }
    return "groups=" + std::to_string(vfmso::total_groups(chromosome)) +
           ";hash=" + hex16(fnv1a64(bytes));
}

using ManifestExtras = std::vector<std::pair<std::string, std::string>>;

template <EvolvableProblem P, typename Summary>
void run_and_write(P& problem, const RunConfig& rc, const EvolutionConfig& config,
                   std::size_t n_objectives, const ManifestExtras& extras, Summary&& summary) {
    Engine<P> engine(problem, config);
    const RunResult<typename P::Genome> result = engine.run();

    fs::create_directories(rc.output_dir);
    const fs::path dir(rc.output_dir);

    {
        auto out = open_output(dir / "manifest.txt");
        out << "# apmoea-manifest v1\n";
        out << "command run\n";
        out << "algorithm " << rc.algorithm << "\n";
        out << "problem " << rc.problem << "\n";
        for (const auto& [key, value] : extras) out << key << ' ' << value << "\n";
        out << "objectives " << n_objectives << "\n";
        out << "population_size " << config.population_size << "\n";
        out << "budget " << config.total_budget << "\n";
        out << "learning_fraction " << format_double(config.learning_fraction) << "\n";
        out << "region_updates " << config.region_updates << "\n";
        out << "epsilon_fraction " << format_double(config.epsilon_fraction) << "\n";
        out << "seed " << rc.seed << "\n";
        out << "evaluations " << result.evaluations << "\n";
        out << "region_builds " << result.events.size() << "\n";
    }

    {
        auto out = open_output(dir / "events.tsv");
        out << "# apmoea-events v1\n";
        out << "# columns: evaluations shape convex concave epsilon knee upper\n";
        for (const RegionEvent& event : result.events) {
            out << event.evaluations << '\t' << pref::to_string(event.info.verdict.shape)
                << '\t' << event.info.verdict.num_convex << '\t'
                << event.info.verdict.num_concave << '\t' << format_double(event.info.epsilon)
                << '\t' << join_csv(event.info.region.knee) << '\t'
                << join_csv(event.info.region.upper_bound) << "\n";
        }
    }

    {
        auto out = open_output(dir / "front.tsv");
        out << "# apmoea-front v1\n";
        out << "# columns: " << n_objectives << " objective values, then genome summary\n";
        for (const auto& member : result.population) {
            if (member.rank != 0) continue;
            for (double f : member.objectives) out << format_double(f) << '\t';
            out << summary(member.genome) << "\n";
        }
    }
}

}  // namespace

AlgorithmSpec parse_algorithm(const std::string& name) {
    if (name == "di-1") return {Variant::Di1, false};
    if (name == "di-2") return {Variant::Di2, false};
    if (name == "ap-di-1") return {Variant::Di1, true};
    if (name == "ap-di-2") return {Variant::Di2, true};
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected di-1, di-2, ap-di-1 or ap-di-2)");
}

std::string algorithm_name(const AlgorithmSpec& spec) {
    std::string name = spec.preference ? "ap-" : "";
    return name + to_string(spec.variant);
}

void cmd_run(const RunConfig& rc) {
    const AlgorithmSpec algorithm = parse_algorithm(rc.algorithm);
    if (rc.output_dir.empty()) throw std::invalid_argument("run: output directory required");
    if (rc.budget < 0) throw std::invalid_argument("run: budget must be non-negative");

    EvolutionConfig config;
    config.population_size = rc.population_size;
    config.variant = algorithm.variant;
    config.preference_enabled = algorithm.preference;
    config.learning_fraction = rc.learning_fraction;
    config.region_updates = rc.region_updates;
    config.epsilon_fraction = rc.epsilon_fraction;
    config.rng_seed = rc.seed;

    if (rc.problem.starts_with(kFleetPrefix)) {
        const std::string path = rc.problem.substr(kFleetPrefix.size());
        if (path.empty())
            throw std::invalid_argument("run: fleet problem needs an instance path after '" +
                                        std::string(kFleetPrefix) + "'");
        const std::string instance_hash = hex16(fnv1a64(read_file_bytes(path)));
        vfmso::VfmsoInstance instance = vfmso::load_instance_file(path);
        config.total_budget = rc.budget > 0 ? rc.budget : kFleetDefaultBudget;

        Rng sample_rng(rc.seed ^ kSampleStreamSalt);
        auto samples = vfmso::DueDateSampleSet::draw(instance, rc.samples, sample_rng);
        vfmso::FleetProblem problem(std::move(instance), std::move(samples));

        const ManifestExtras extras = {{"instance", path},
                                       {"instance_hash", instance_hash},
                                       {"samples", std::to_string(rc.samples)}};
        run_and_write(problem, rc, config, problem.num_objectives(), extras,
                      [](const vfmso::Chromosome& c) { return chromosome_summary(c); });
    } else {
        bench::ContinuousProblem problem = bench::ContinuousProblem::by_name(rc.problem);
        config.total_budget = rc.budget > 0 ? rc.budget : problem.default_budget();
        run_and_write(problem, rc, config, problem.num_objectives(), {},
                      [](const std::vector<double>& g) { return vector_summary(g); });
    }
}

void cmd_generate_instance(const GenerateConfig& gc) {
    if (gc.output_path.empty())
        throw std::invalid_argument("generate-instance: output path required");
    Rng rng(gc.seed);
    const vfmso::VfmsoInstance instance = vfmso::generate_instance(gc.cars, gc.workshops, rng);
    const fs::path path(gc.output_path);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    vfmso::save_instance_file(instance, gc.output_path);
}

namespace {

struct EventRecord {
    long long evaluations = 0;
    std::string shape;
    long long convex = 0;
    long long concave = 0;
    double epsilon = 0.0;
    ObjectiveVector knee;
    ObjectiveVector upper;
};

struct RunRecord {
    std::string dir;
    std::map<std::string, std::string> manifest;
    std::vector<ObjectiveVector> front;
    std::vector<EventRecord> events;
};

double parse_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::runtime_error("analyze: cannot parse " + what + " from '" + text + "'");
    return value;
}

long long parse_ll(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw std::runtime_error("analyze: cannot parse " + what + " from '" + text + "'");
    return value;
}

ObjectiveVector parse_csv(const std::string& text, const std::string& what) {
    ObjectiveVector values;
    std::istringstream s(text);
    std::string field;
    while (std::getline(s, field, ',')) values.push_back(parse_double(field, what));
    return values;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

std::ifstream open_versioned(const fs::path& path, const std::string& header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("analyze: cannot open " + path.string());
    std::string first;
    if (!std::getline(in, first) || first != header)
        throw std::runtime_error("analyze: " + path.string() + " is not a '" + header +
                                 "' file");
    return in;
}

std::map<std::string, std::string> read_manifest(const std::string& dir) {
    auto in = open_versioned(fs::path(dir) / "manifest.txt", "# apmoea-manifest v1");
    std::map<std::string, std::string> manifest;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::size_t space = line.find(' ');
        if (space == std::string::npos)
            throw std::runtime_error("analyze: malformed manifest line '" + line + "' in " +
                                     dir);
        manifest[line.substr(0, space)] = line.substr(space + 1);
    }
    return manifest;
}

std::vector<ObjectiveVector> read_front(const std::string& dir, std::size_t n_objectives) {
    auto in = open_versioned(fs::path(dir) / "front.tsv", "# apmoea-front v1");
    std::vector<ObjectiveVector> front;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() < n_objectives)
            throw std::runtime_error("analyze: front row with too few columns in " + dir);
        ObjectiveVector point(n_objectives);
        for (std::size_t i = 0; i < n_objectives; ++i)
            point[i] = parse_double(fields[i], "objective");
        front.push_back(std::move(point));
    }
    return front;
}

std::vector<EventRecord> read_events(const std::string& dir) {
    auto in = open_versioned(fs::path(dir) / "events.tsv", "# apmoea-events v1");
    std::vector<EventRecord> events;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 7)
            throw std::runtime_error("analyze: malformed event row in " + dir);
        EventRecord event;
        event.evaluations = parse_ll(fields[0], "evaluations");
        event.shape = fields[1];
        event.convex = parse_ll(fields[2], "convex count");
        event.concave = parse_ll(fields[3], "concave count");
        event.epsilon = parse_double(fields[4], "epsilon");
        event.knee = parse_csv(fields[5], "knee");
        event.upper = parse_csv(fields[6], "upper bound");
        events.push_back(std::move(event));
    }
    return events;
}

const std::string& manifest_value(const RunRecord& run, const std::string& key) {
    const auto it = run.manifest.find(key);
    if (it == run.manifest.end())
        throw std::runtime_error("analyze: manifest in " + run.dir + " lacks '" + key + "'");
    return it->second;
}

RunRecord load_run(const std::string& dir) {
    RunRecord run;
    run.dir = dir;
    run.manifest = read_manifest(dir);
    const std::size_t n_objectives = static_cast<std::size_t>(
        parse_ll(manifest_value(run, "objectives"), "objective count"));
    run.front = read_front(dir, n_objectives);
    run.events = read_events(dir);
    return run;
}

}  // namespace

std::string analysis_report(const AnalyzeConfig& ac) {
    if (ac.baseline_dirs.size() != ac.preferred_dirs.size())
        throw std::invalid_argument(
            "analyze: got " + std::to_string(ac.baseline_dirs.size()) + " baseline run(s) but " +
            std::to_string(ac.preferred_dirs.size()) + " preferred run(s)");
    if (ac.baseline_dirs.empty()) throw std::invalid_argument("analyze: no run pairs given");

    const std::size_t n_pairs = ac.baseline_dirs.size();
    std::vector<RunRecord> baseline, preferred;
    baseline.reserve(n_pairs);
    preferred.reserve(n_pairs);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        baseline.push_back(load_run(ac.baseline_dirs[i]));
        preferred.push_back(load_run(ac.preferred_dirs[i]));
    }

    std::vector<std::string> offenders;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const std::string tag = "pair " + std::to_string(i) + " (" + baseline[i].dir + " vs " +
                                preferred[i].dir + ")";
        const auto check = [&](bool bad, const std::string& why) {
            if (bad) offenders.push_back(tag + ": " + why);
        };
        try {
            check(manifest_value(baseline[i], "problem") != manifest_value(preferred[i], "problem"),
                  "problems differ (" + manifest_value(baseline[i], "problem") + " vs " +
                      manifest_value(preferred[i], "problem") + ")");
            check(manifest_value(baseline[i], "seed") != manifest_value(preferred[i], "seed"),
                  "seeds differ (" + manifest_value(baseline[i], "seed") + " vs " +
                      manifest_value(preferred[i], "seed") + ")");
            check(manifest_value(baseline[i], "objectives") !=
                      manifest_value(preferred[i], "objectives"),
                  "objective counts differ");
            check(parse_algorithm(manifest_value(baseline[i], "algorithm")).preference,
                  "baseline run used a preference algorithm");
            check(!parse_algorithm(manifest_value(preferred[i], "algorithm")).preference,
                  "preferred run used a plain algorithm");
            check(preferred[i].events.empty(), "preferred run recorded no region builds");
            check(baseline[i].front.empty(), "baseline run has an empty front");
            check(preferred[i].front.empty(), "preferred run has an empty front");
        } catch (const std::exception& e) {
            offenders.push_back(tag + ": " + e.what());
        }
    }
    if (!offenders.empty()) {
        std::string message = "analyze: mismatched run pairs:";
        for (const auto& o : offenders) message += "\n  " + o;
        throw std::runtime_error(message);
    }

    std::ostringstream out;
    out << "# apmoea-analysis v1\n";
    out << "# columns: pair problem seed knee_in_region knee_relation hv_baseline"
           " hv_preferred preferred_not_worse\n";

    std::size_t in_region[3] = {0, 0, 0};   // incomparable, dominated, dominating
    std::size_t out_region[3] = {0, 0, 0};
    std::size_t hv_wins = 0;

    for (std::size_t i = 0; i < n_pairs; ++i) {
        const EventRecord& last = preferred[i].events.back();
        pref::PreferenceRegion region;
        region.knee = last.knee;
        region.upper_bound = last.upper;

        const double epsilon_fraction =
            parse_double(manifest_value(baseline[i], "epsilon_fraction"), "epsilon_fraction");
        const ObjectiveVector knee =
            pref::build_preference_region(baseline[i].front, epsilon_fraction).region.knee;

        const metrics::RegionComparison comparison =
            metrics::classify_knee_relation(knee, preferred[i].front, region);

        const auto restricted_baseline = metrics::restrict_to_region(baseline[i].front, region);
        const auto restricted_preferred = metrics::restrict_to_region(preferred[i].front, region);

        double hv_baseline = 0.0, hv_preferred = 0.0;
        if (!restricted_baseline.empty() || !restricted_preferred.empty()) {
            ObjectiveVector ref;
            for (const auto* set : {&restricted_baseline, &restricted_preferred}) {
                for (const ObjectiveVector& p : *set) {
                    if (ref.empty()) ref = p;
                    for (std::size_t k = 0; k < p.size(); ++k) ref[k] = std::max(ref[k], p[k]);
                }
            }
            hv_baseline = metrics::hypervolume(restricted_baseline, ref);
            hv_preferred = metrics::hypervolume(restricted_preferred, ref);
        }

        const bool preferred_not_worse = hv_preferred >= hv_baseline;
        if (preferred_not_worse) ++hv_wins;

        auto& bucket = comparison.knee_in_region ? in_region : out_region;
        ++bucket[static_cast<std::size_t>(comparison.relation)];

        out << i << '\t' << manifest_value(baseline[i], "problem") << '\t'
            << manifest_value(baseline[i], "seed") << '\t'
            << (comparison.knee_in_region ? "yes" : "no") << '\t'
            << metrics::to_string(comparison.relation) << '\t' << format_double(hv_baseline)
            << '\t' << format_double(hv_preferred) << '\t'
            << (preferred_not_worse ? "yes" : "no") << "\n";
    }

    out << "# knee placement vs preferred front, " << n_pairs << " pair(s)\n";
    const auto relation_label = [](std::size_t r) {
        return metrics::to_string(static_cast<metrics::KneeRelation>(r));
    };
    for (std::size_t r = 0; r < 3; ++r)
        out << "in-region\t" << relation_label(r) << '\t' << in_region[r] << "\n";
    for (std::size_t r = 0; r < 2; ++r)
        out << "outside\t" << relation_label(r) << '\t' << out_region[r] << "\n";
    // A knee outside the region that still dominates preferred solutions
    // never happened in any reference experiment; surface it only when it
    // actually occurs so the usual table keeps its five-row shape.
    if (out_region[2] > 0) out << "outside\tdominating\t" << out_region[2] << "\n";

    out << "# restricted hypervolume: preferred not worse in " << hv_wins << " of " << n_pairs
        << " pair(s)\n";
    return std::move(out).str();
}

void cmd_analyze(const AnalyzeConfig& ac) {
    const std::string report = analysis_report(ac);
    if (ac.output_path.empty()) {
        std::cout << report;
        return;
    }
    const fs::path path(ac.output_path);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto out = open_output(path);
    out << report;
}

}  // namespace apmoea::cli
