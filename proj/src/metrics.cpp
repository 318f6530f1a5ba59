#include "mwsn/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwsn {

DistortionTerms distortion(const Fleet& fleet, const Partition& partition, const DensityGrid& density) {
    const Grid& grid = density.grid;
    if (partition.owner.size() != grid.size()) throw std::invalid_argument("partition does not match the grid");
    DistortionTerms out;
    out.local.assign(fleet.size(), 0.0);
    std::size_t c = 0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i, ++c) {
            const auto n = partition.owner[c];
            const Point w{grid.center_x(i), grid.center_y(j)};
            out.local[n] += fleet.params[n].eta * squared_norm(fleet.current[n] - w) * density.mass[c];
        }
    }
    for (double d : out.local) out.total += d;
    return out;
}

ParallelAxisTerms distortion_parallel_axis(const Fleet& fleet, const Partition& partition,
                                           const DensityGrid& density) {
    const Grid& grid = density.grid;
    ParallelAxisTerms out;
    std::vector<double> spread(fleet.size(), 0.0);
    std::size_t c = 0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i, ++c) {
            const auto n = partition.owner[c];
            const Point w{grid.center_x(i), grid.center_y(j)};
            spread[n] += squared_norm(partition.centroid[n] - w) * density.mass[c];
        }
    }
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        if (partition.empty_cell(n)) continue;
        const double eta = fleet.params[n].eta;
        out.about_centroids += eta * spread[n];
        out.offset += eta * squared_norm(fleet.current[n] - partition.centroid[n]) * partition.volume[n];
    }
    return out;
}

EnergyReport energy(const Fleet& fleet) {
    EnergyReport out;
    out.per_sensor.resize(fleet.size());
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        out.per_sensor[n] = fleet.params[n].xi * distance(fleet.current[n], fleet.initial[n]);
        out.total += out.per_sensor[n];
        out.max_individual = std::max(out.max_individual, out.per_sensor[n]);
    }
    return out;
}

double area_coverage(const Fleet& fleet, const Grid& grid, Parallelism par) {
    const std::size_t n = fleet.size();
    // eta |w - p|^2 <= R_s^2  <=>  |w - p| <= R_s / sqrt(eta)
    std::vector<double> px(n), py(n), eta(n), r2(n);
    for (std::size_t k = 0; k < n; ++k) {
        px[k] = fleet.current[k].x;
        py[k] = fleet.current[k].y;
        eta[k] = fleet.params[k].eta;
        r2[k] = fleet.params[k].sensing_radius * fleet.params[k].sensing_radius;
    }
    std::vector<std::size_t> covered_rows(grid.ny(), 0);
    for_each_block(grid.ny(), par, [&](std::size_t j) {
        const double wy = grid.center_y(j);
        std::size_t count = 0;
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double wx = grid.center_x(i);
            for (std::size_t k = 0; k < n; ++k) {
                const double ddx = wx - px[k];
                const double ddy = wy - py[k];
                if (eta[k] * (ddx * ddx + ddy * ddy) <= r2[k]) {
                    ++count;
                    break;
                }
            }
        }
        covered_rows[j] = count;
    });
    std::size_t covered = 0;
    for (auto c : covered_rows) covered += c;
    return static_cast<double>(covered) / static_cast<double>(grid.size());
}

std::vector<double> lifetime_budget(std::span<const double> residual, double alpha, double lifetime) {
    if (!(alpha >= 0.0) || !(lifetime >= 0.0)) throw std::invalid_argument("alpha and lifetime must be nonnegative");
    std::vector<double> out(residual.size());
    for (std::size_t n = 0; n < residual.size(); ++n) out[n] = std::max(0.0, residual[n] - alpha * lifetime);
    return out;
}

MetricsReport evaluate(const Fleet& fleet, const Partition& partition, const DensityGrid& density, Parallelism par) {
    MetricsReport r;
    r.local_distortion = partition.local_distortion;
    r.distortion = partition.distortion();
    auto e = energy(fleet);
    r.energy = std::move(e.per_sensor);
    r.total_energy = e.total;
    r.max_individual_energy = e.max_individual;
    r.coverage = area_coverage(fleet, density.grid, par);
    return r;
}

}  // namespace mwsn
