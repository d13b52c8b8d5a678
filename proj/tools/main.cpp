#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "apmoea/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Diversity-indicator multi-objective optimizer with automatic preference regions"};
    app.require_subcommand(1);

    apmoea::cli::RunConfig run_config;
    CLI::App* run = app.add_subcommand("run", "Run one optimization experiment");
    run->add_option("--problem", run_config.problem,
                    "Problem: zdt1, zdt2, dtlz1, dtlz2 or vfmso:<instance-file>")
        ->required();
    run->add_option("--algorithm", run_config.algorithm,
                    "Algorithm: di-1, di-2, ap-di-1 or ap-di-2 (default di-1)");
    run->add_option("--population-size", run_config.population_size,
                    "Population size (default 100)");
    run->add_option("--budget", run_config.budget,
                    "Evaluation budget; 0 picks the problem-family default");
    run->add_option("--learning-fraction", run_config.learning_fraction,
                    "Budget share spent before the first region build (default 0.5)");
    run->add_option("--region-updates", run_config.region_updates,
                    "Region refreshes after the first build (default 12)");
    run->add_option("--epsilon-fraction", run_config.epsilon_fraction,
                    "Linearity vote margin as a share of the filtered front (default 0.05)");
    run->add_option("--seed", run_config.seed, "Random seed (default 0)");
    run->add_option("--samples", run_config.samples,
                    "Due-date samples per component, fleet runs only (default 1000)");
    run->add_option("--output", run_config.output_dir, "Directory for the run artifacts")
        ->required();

    apmoea::cli::GenerateConfig generate_config;
    CLI::App* generate =
        app.add_subcommand("generate-instance", "Generate a synthetic fleet instance");
    generate->add_option("--cars", generate_config.cars, "Number of cars (default 20)");
    generate->add_option("--workshops", generate_config.workshops,
                         "Number of workshops (default 3)");
    generate->add_option("--seed", generate_config.seed, "Random seed (default 0)");
    generate->add_option("--output", generate_config.output_path, "Instance file to write")
        ->required();

    apmoea::cli::AnalyzeConfig analyze_config;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Compare paired plain and preference runs");
    analyze
        ->add_option("--baseline", analyze_config.baseline_dirs,
                     "Plain run directories (di-1 / di-2), in pair order")
        ->required();
    analyze
        ->add_option("--preferred", analyze_config.preferred_dirs,
                     "Preference run directories (ap-di-1 / ap-di-2), in pair order")
        ->required();
    analyze->add_option("--output", analyze_config.output_path,
                        "Report file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            apmoea::cli::cmd_run(run_config);
        } else if (generate->parsed()) {
            apmoea::cli::cmd_generate_instance(generate_config);
        } else if (analyze->parsed()) {
            apmoea::cli::cmd_analyze(analyze_config);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
