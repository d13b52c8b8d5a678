#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apmoea/config.hpp"
#include "apmoea/vfmso/evaluate.hpp"

namespace apmoea::cli {

/// Algorithm names exposed on the command line: "di-1" and "di-2" run the
/// plain variants, the "ap-" prefix switches the automatic preference
/// region on.
struct AlgorithmSpec {
    Variant variant = Variant::Di1;
    bool preference = false;
};

/// Throws std::invalid_argument for anything outside
/// {di-1, di-2, ap-di-1, ap-di-2}.
AlgorithmSpec parse_algorithm(const std::string& name);

std::string algorithm_name(const AlgorithmSpec& spec);

/// One experiment run.  `problem` is a benchmark name (zdt1, zdt2, dtlz1,
/// dtlz2) or "vfmso:<instance-file>".  A budget of 0 picks the per-family
/// default: 22000 for the bi-objective benchmarks, 120000 for the
/// three-objective ones, 1200000 for fleet instances.
struct RunConfig {
    std::string algorithm = "di-1";
    std::string problem;
    std::size_t population_size = 100;
    long long budget = 0;
    double learning_fraction = 0.5;
    int region_updates = 12;
    double epsilon_fraction = 0.05;
    std::uint64_t seed = 0;
    std::size_t samples = vfmso::DueDateSampleSet::kDefaultCount;  // fleet runs only
    std::string output_dir;
};

/// Runs the configured experiment and writes three artifacts into the
/// output directory:
///   manifest.txt  - resolved configuration and run outcome, key/value,
///   front.tsv     - final non-dominated front, objectives then a genome
///                   summary per row,
///   events.tsv    - one row per preference-region build.
/// Reruns with an identical configuration produce byte-identical files.
void cmd_run(const RunConfig& config);

struct GenerateConfig {
    int cars = 20;
    int workshops = 3;
    std::uint64_t seed = 0;
    std::string output_path;
};

/// Generates a synthetic fleet instance and saves it as text.
void cmd_generate_instance(const GenerateConfig& config);

/// Pairwise comparison of plain runs against preference runs.  Directories
/// are paired by position and must agree on problem and seed, with the
/// baseline run preference-free and the preferred run preference-enabled.
struct AnalyzeConfig {
    std::vector<std::string> baseline_dirs;
    std::vector<std::string> preferred_dirs;
    std::string output_path;  // empty -> stdout
};

/// The report: per pair the baseline knee (recomputed from its front), its
/// membership in the preferred run's final region, its dominance relation
/// against the preferred front, and both restricted-region hypervolumes
/// (shared reference point: component-wise maximum over the union of both
/// restricted sets); then aggregate counts of knee placement and a
/// hypervolume win count.
std::string analysis_report(const AnalyzeConfig& config);

void cmd_analyze(const AnalyzeConfig& config);

}  // namespace apmoea::cli
