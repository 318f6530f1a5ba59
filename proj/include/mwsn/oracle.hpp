#pragma once

// Reference solvers that certify relocation steps independently of the
// pruning loop and the closed-form step formulas.

#include <cstdint>
#include <span>
#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/partition.hpp"
#include "mwsn/relocation.hpp"

namespace mwsn::oracle {

/// Fixed-partition energy split:
///   minimize sum_n (z_n - chi_n)^2 / varsigma_n
///   subject to sum_n z_n <= gamma, 0 <= z_n <= chi_n.
struct AllocationInstance {
    std::vector<double> chi;
    std::vector<double> varsigma;
    double gamma = 0.0;

    /// Throws std::invalid_argument on length mismatch or invalid entries.
    void validate() const;
    double objective(std::span<const double> z) const;
};

struct QpSolution {
    std::vector<double> z;
    double lambda = 0.0;  // water level; 0 when the budget is slack
};

/// Water-filling by bisection on lambda in [0, max chi/varsigma].
QpSolution qp_energy_allocation(const AllocationInstance& instance);

/// Exhaustive search over z_n in {0, h, 2h, ...} with h = gamma / steps and
/// sum z <= gamma, each z_n additionally clamped to chi_n. When the budget is
/// slack the corner z = chi is returned directly. Throws std::invalid_argument
/// for N > 4 or steps outside [1, 200].
std::vector<double> grid_search_allocation(const AllocationInstance& instance, int steps);

/// Fixed-partition objective sum_n eta_n |p_n - c_n|^2 v_n over nonempty cells.
double fixed_partition_objective(const Fleet& fleet, const Partition& partition, std::span<const Point> positions);

/// Local-optimality certificate: tries `trials` random single-sensor moves of
/// length <= epsilon, projected back into that sensor's feasible disk given the
/// others, and fails if any lowers the fixed-partition objective by more than
/// 1e-9. Total budgets give sensor n the slack gamma - sum_{m != n} E_m.
bool segment_perturbation_check(const Fleet& fleet, const Partition& partition, std::span<const Point> candidate,
                                const EnergyBudget& budget, int trials, double epsilon, std::uint64_t seed = 1);

}  // namespace mwsn::oracle
