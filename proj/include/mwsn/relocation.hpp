#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/metrics.hpp"
#include "mwsn/parallel.hpp"
#include "mwsn/partition.hpp"

namespace mwsn {

enum class Algorithm { lloyd, lloyd_alpha, eml, cml };

std::string to_string(Algorithm a);
/// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(const std::string& name);

struct Unlimited {
    friend bool operator==(const Unlimited&, const Unlimited&) = default;
};
struct TotalBudget {
    double gamma = 0.0;
    friend bool operator==(const TotalBudget&, const TotalBudget&) = default;
};
struct PerSensorBudget {
    std::vector<double> gammas;
    friend bool operator==(const PerSensorBudget&, const PerSensorBudget&) = default;
};

using EnergyBudget = std::variant<Unlimited, TotalBudget, PerSensorBudget>;

/// Result of splitting a total energy budget among sensors with a fixed
/// partition: z_n is the energy sensor n spends moving toward its centroid.
struct EnergyAllocation {
    std::vector<double> z;
    std::vector<bool> dynamic;
    double rho_bar = 0.0;        // common moving efficiency of dynamic sensors
    bool binding = false;        // budget smaller than reaching every centroid
    std::size_t passes = 0;      // pruning passes executed
};

/// Pruning allocation used by EML: chi_n = xi_n |Gamma_n|, varsigma_n as in
/// the partition (non-finite marks an excluded sensor), gamma the total budget.
/// Sensors with chi_n == 0 or non-finite varsigma_n never become dynamic.
EnergyAllocation allocate_total_energy(std::span<const double> chi, std::span<const double> varsigma, double gamma);

struct StepOutcome {
    std::vector<Vec2> movement;            // new position - initial position
    std::vector<std::size_t> dynamic_set;  // |movement| > 0
    std::vector<std::size_t> static_set;
    double rho_bar = std::numeric_limits<double>::quiet_NaN();  // EML with a binding budget only
    bool budget_binding = false;
    std::size_t pruning_passes = 0;
    std::vector<Point> positions;
};

StepOutcome lloyd_step(const Fleet& fleet, const Partition& partition);

/// Throws std::invalid_argument unless 0 <= alpha <= 1.
StepOutcome lloyd_alpha_step(const Fleet& fleet, const Partition& partition, double alpha);

/// Throws std::invalid_argument for a negative or non-finite gamma.
StepOutcome eml_step(const Fleet& fleet, const Partition& partition, double gamma);

/// Throws std::invalid_argument for a length mismatch or a negative budget.
StepOutcome cml_step(const Fleet& fleet, const Partition& partition, std::span<const double> gammas);

struct IterationRecord {
    std::size_t iteration = 0;
    double distortion = 0.0;
    double coverage = 0.0;
    double total_energy = 0.0;
    double max_individual_energy = 0.0;
    double max_step = 0.0;                 // largest single-iteration displacement
    std::vector<double> path_length;       // cumulative distance travelled, per sensor
    double path_total = 0.0;
};

struct Trace {
    IterationRecord initial;               // the deployment before any step
    std::vector<IterationRecord> records;  // one per executed iteration
    std::vector<std::vector<Point>> history;  // positions after each iteration, when requested
    Fleet final_fleet;
    bool converged = false;
};

struct RunOptions {
    std::size_t iter_max = 100;
    double tolerance = 0.0;  // stop when every sensor moved less than this; 0 disables
    double alpha = 1.0;      // lloyd_alpha step scale
    bool keep_history = false;
    Parallelism parallelism{};
};

/// Called once per iteration with the partition the step was planned on.
using StepObserver = std::function<void(std::size_t iteration, const Fleet& before, const Partition& partition,
                                        const StepOutcome& outcome)>;

/// Alternates partitioning and the selected step. Throws std::invalid_argument
/// if the budget variant does not fit the algorithm or iter_max is zero.
Trace run(Algorithm algorithm, const Fleet& fleet, const EnergyBudget& budget, const DensityGrid& density,
          const RunOptions& options, const StepObserver& observer = {});

/// Default early-stop tolerance: 1e-9 region widths.
double default_tolerance(const Region& region);

}  // namespace mwsn
