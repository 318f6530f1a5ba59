#pragma once

#include <span>
#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/parallel.hpp"
#include "mwsn/partition.hpp"

namespace mwsn {

struct DistortionTerms {
    double total = 0.0;
    std::vector<double> local;  // per sensor
};

/// Weighted distortion of fleet.current over the given ownership, recomputed
/// cell by cell from the density grid.
DistortionTerms distortion(const Fleet& fleet, const Partition& partition, const DensityGrid& density);

/// Distortion rewritten through the parallel-axis theorem:
/// sum_n eta_n int |c_n - w|^2 f dw  +  sum_n eta_n |p_n - c_n|^2 v_n.
/// Returns {centroid term, offset term}.
struct ParallelAxisTerms {
    double about_centroids = 0.0;
    double offset = 0.0;
    double total() const { return about_centroids + offset; }
};
ParallelAxisTerms distortion_parallel_axis(const Fleet& fleet, const Partition& partition, const DensityGrid& density);

struct EnergyReport {
    std::vector<double> per_sensor;
    double total = 0.0;
    double max_individual = 0.0;
};

/// xi_n |p_n - initial_n| for every sensor.
EnergyReport energy(const Fleet& fleet);

/// Fraction of grid cells (by area, ignoring density) whose center lies within
/// R_s / sqrt(eta_n) of at least one sensor.
double area_coverage(const Fleet& fleet, const Grid& grid, Parallelism par = {});

/// Per-sensor relocation budgets that leave alpha * T of residual energy:
/// max(0, e_n - alpha * T).
std::vector<double> lifetime_budget(std::span<const double> residual, double alpha, double lifetime);

struct MetricsReport {
    double distortion = 0.0;
    std::vector<double> local_distortion;
    std::vector<double> energy;
    double total_energy = 0.0;
    double max_individual_energy = 0.0;
    double coverage = 0.0;
};

MetricsReport evaluate(const Fleet& fleet, const Partition& partition, const DensityGrid& density,
                       Parallelism par = {});

}  // namespace mwsn
