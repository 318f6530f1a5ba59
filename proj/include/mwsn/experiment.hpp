#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mwsn/config.hpp"
#include "mwsn/partition.hpp"
#include "mwsn/relocation.hpp"

namespace mwsn {

/// Initial positions drawn i.i.d. uniform over the region from Xoshiro256
/// seeded with config.seed (x then y for each sensor, in index order).
Fleet init_random_deployment(const ExperimentConfig& config);

DensityGrid make_density_grid(const ExperimentConfig& config);

struct ExecutionOptions {
    Parallelism parallelism{};
    bool keep_history = false;
};

/// Runs the configured algorithm from the seeded deployment with the default
/// early-stop tolerance.
Trace run_configured(const ExperimentConfig& config, const ExecutionOptions& exec = {},
                     const StepObserver& observer = {});

inline constexpr const char* kTraceHeader =
    "iter,distortion,coverage,total_energy,max_individual_energy,max_step,cum_path_total";

/// trace.csv contents: header plus one row per iteration, LF endings, %.17g.
std::string format_trace_csv(const Trace& trace);

/// Initial positions as green circles, final positions as red circles and
/// displacements as blue lines.
std::string render_svg(const ExperimentConfig& config, const Trace& trace);

std::string format_summary(const ExperimentConfig& config, const Trace& trace);

struct RunArtifacts {
    std::filesystem::path trace_csv;
    std::filesystem::path deployment_svg;
    std::filesystem::path summary_txt;
    Trace trace;
};

/// Writes trace.csv, deployment.svg and summary.txt into config.outdir.
/// Throws std::runtime_error on I/O failure.
RunArtifacts run_experiment(const ExperimentConfig& config, const ExecutionOptions& exec = {});

struct ComparisonRow {
    Algorithm algorithm = Algorithm::lloyd;
    std::string budget;
    double budget_key = 0.0;  // sort key: gamma, max gamma_n, alpha, or +inf
    double final_distortion = 0.0;
    double final_coverage = 0.0;
    double total_energy = 0.0;
    double total_distance = 0.0;
    double max_individual_distance = 0.0;
    std::size_t iterations = 0;
};

/// Runs every config and returns one row per (algorithm, budget), ordered by
/// algorithm name and then budget. Throws std::invalid_argument for fewer
/// than two configs or configs that differ in region, grid, density, seed or
/// fleet parameters.
std::vector<ComparisonRow> compare(const std::vector<ExperimentConfig>& configs, const ExecutionOptions& exec = {});

inline constexpr const char* kComparisonHeader =
    "algorithm,budget,final_distortion,final_coverage,total_energy,total_distance,max_individual_distance,iterations";

std::string format_comparison_csv(const std::vector<ComparisonRow>& rows);

/// Mean initial coverage over seeds [first_seed, first_seed + seeds) of a
/// square region [0, side]^2.
double mean_initial_coverage(ExperimentConfig config, double side, std::uint64_t first_seed, std::size_t seeds);

/// Bisection on the square region side so that the mean initial coverage hits
/// `target`. Coverage falls as the side grows.
double calibrate_region_side(const ExperimentConfig& config, double target, std::uint64_t first_seed,
                             std::size_t seeds, double lo = 0.25, double hi = 20.0, int iterations = 40);

}  // namespace mwsn
