#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/parallel.hpp"

namespace mwsn {

struct SensorParams {
    double eta = 1.0;             // sensing cost
    double xi = 1.0;              // moving cost, energy per unit distance
    double sensing_radius = 0.2;  // base R_s; effective radius is R_s / sqrt(eta)

    double effective_radius() const { return sensing_radius / std::sqrt(eta); }
};

/// Sensors with their parameters, starting positions and current positions.
struct Fleet {
    std::vector<SensorParams> params;
    std::vector<Point> initial;
    std::vector<Point> current;

    std::size_t size() const { return params.size(); }

    /// Fleet with current == initial.
    static Fleet at_rest(std::vector<SensorParams> params, std::vector<Point> initial);

    /// Throws std::invalid_argument on length mismatch, N == 0, nonpositive
    /// parameters, or points outside the region.
    void validate(const Region& region) const;
};

using OwnerMap = std::vector<std::uint32_t>;

/// Weighted Voronoi cells of a deployment, reduced to per-sensor moments.
struct Partition {
    static constexpr double kEmpty = std::numeric_limits<double>::infinity();

    OwnerMap owner;
    std::vector<double> volume;        // density mass of the cell
    std::vector<Point> centroid;       // valid only when volume > 0
    std::vector<Vec2> gamma;           // centroid - initial; zero for empty cells
    std::vector<double> varsigma;      // xi^2 / (eta * volume); kEmpty for empty cells
    std::vector<double> local_distortion;  // eta * sum |p - w|^2 f dA over the cell

    std::size_t size() const { return volume.size(); }
    bool empty_cell(std::size_t n) const { return !(volume[n] > 0.0); }
    double distortion() const;
};

/// Owner of every grid cell: argmin_n eta_n |w - p_n|^2, ties to the lowest index.
OwnerMap assign_mwvd(const Fleet& fleet, const Grid& grid, Parallelism par = {});

/// Per-sensor volume, centroid, Gamma, varsigma and local distortion for the
/// given ownership (which must have been built on density.grid).
Partition cell_moments(const OwnerMap& owner, const DensityGrid& density, const Fleet& fleet, Parallelism par = {});

/// assign_mwvd followed by cell_moments, fused into one grid pass.
/// Produces the same values bit for bit as the two-step form.
Partition partition_fleet(const Fleet& fleet, const DensityGrid& density, Parallelism par = {});

}  // namespace mwsn
