#include "mwsn/partition.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mwsn {

namespace {

constexpr std::size_t kRowsPerBlock = 8;

// Structure-of-arrays copy of the deployment for the hot loop.
struct Generators {
    std::vector<double> x, y, eta;

    explicit Generators(const Fleet& fleet) {
        const std::size_t n = fleet.size();
        x.resize(n);
        y.resize(n);
        eta.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = fleet.current[k].x;
            y[k] = fleet.current[k].y;
            eta[k] = fleet.params[k].eta;
        }
    }

    double weighted_sq(std::size_t k, double wx, double wy) const {
        const double ddx = wx - x[k];
        const double ddy = wy - y[k];
        return eta[k] * (ddx * ddx + ddy * ddy);
    }

    // Lowest index wins ties because only a strictly smaller value replaces.
    std::uint32_t nearest(double wx, double wy, double& best) const {
        std::uint32_t arg = 0;
        best = weighted_sq(0, wx, wy);
        for (std::size_t k = 1; k < x.size(); ++k) {
            const double d = weighted_sq(k, wx, wy);
            if (d < best) {
                best = d;
                arg = static_cast<std::uint32_t>(k);
            }
        }
        return arg;
    }
};

struct Accumulator {
    std::vector<double> mass, mx, my, dist;

    explicit Accumulator(std::size_t n) : mass(n, 0.0), mx(n, 0.0), my(n, 0.0), dist(n, 0.0) {}

    void add(std::uint32_t k, double m, double wx, double wy, double weighted_sq) {
        mass[k] += m;
        mx[k] += m * wx;
        my[k] += m * wy;
        dist[k] += m * weighted_sq;
    }
};

std::size_t block_count(const Grid& grid) { return (grid.ny() + kRowsPerBlock - 1) / kRowsPerBlock; }

Partition finish(OwnerMap owner, const std::vector<Accumulator>& blocks, const Fleet& fleet) {
    const std::size_t n = fleet.size();
    Partition p;
    p.owner = std::move(owner);
    p.volume.assign(n, 0.0);
    p.centroid.assign(n, Point{});
    p.gamma.assign(n, Vec2{});
    p.varsigma.assign(n, Partition::kEmpty);
    p.local_distortion.assign(n, 0.0);

    std::vector<double> mx(n, 0.0), my(n, 0.0);
    for (const auto& b : blocks) {
        for (std::size_t k = 0; k < n; ++k) {
            p.volume[k] += b.mass[k];
            mx[k] += b.mx[k];
            my[k] += b.my[k];
            p.local_distortion[k] += b.dist[k];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!(p.volume[k] > 0.0)) continue;
        p.centroid[k] = {mx[k] / p.volume[k], my[k] / p.volume[k]};
        p.gamma[k] = p.centroid[k] - fleet.initial[k];
        const double xi = fleet.params[k].xi;
        p.varsigma[k] = xi * xi / (fleet.params[k].eta * p.volume[k]);
    }
    return p;
}

}  // namespace

Fleet Fleet::at_rest(std::vector<SensorParams> params, std::vector<Point> initial) {
    Fleet f{std::move(params), std::move(initial), {}};
    f.current = f.initial;
    return f;
}

void Fleet::validate(const Region& region) const {
    const std::size_t n = params.size();
    if (n == 0) throw std::invalid_argument("fleet must contain at least one sensor");
    if (initial.size() != n || current.size() != n) {
        throw std::invalid_argument("fleet parameter and position lists differ in length");
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = params[k];
        if (!(s.eta > 0.0) || !(s.xi > 0.0) || !(s.sensing_radius > 0.0) || !std::isfinite(s.eta) ||
            !std::isfinite(s.xi) || !std::isfinite(s.sensing_radius)) {
            throw std::invalid_argument("sensor " + std::to_string(k) + " has a nonpositive parameter");
        }
        if (!region.contains(initial[k]) || !region.contains(current[k])) {
            throw std::invalid_argument("sensor " + std::to_string(k) + " lies outside the region");
        }
    }
}

double Partition::distortion() const {
    return std::accumulate(local_distortion.begin(), local_distortion.end(), 0.0);
}

OwnerMap assign_mwvd(const Fleet& fleet, const Grid& grid, Parallelism par) {
    const Generators gen(fleet);
    OwnerMap owner(grid.size());
    for_each_block(block_count(grid), par, [&](std::size_t b) {
        const std::size_t j_end = std::min(grid.ny(), (b + 1) * kRowsPerBlock);
        for (std::size_t j = b * kRowsPerBlock; j < j_end; ++j) {
            const double wy = grid.center_y(j);
            for (std::size_t i = 0; i < grid.nx(); ++i) {
                double best = 0.0;
                owner[j * grid.nx() + i] = gen.nearest(grid.center_x(i), wy, best);
            }
        }
    });
    return owner;
}

Partition cell_moments(const OwnerMap& owner, const DensityGrid& density, const Fleet& fleet, Parallelism par) {
    const Grid& grid = density.grid;
    if (owner.size() != grid.size()) throw std::invalid_argument("owner map does not match the grid");
    const Generators gen(fleet);
    std::vector<Accumulator> blocks(block_count(grid), Accumulator(fleet.size()));
    for_each_block(blocks.size(), par, [&](std::size_t b) {
        auto& acc = blocks[b];
        const std::size_t j_end = std::min(grid.ny(), (b + 1) * kRowsPerBlock);
        for (std::size_t j = b * kRowsPerBlock; j < j_end; ++j) {
            const double wy = grid.center_y(j);
            for (std::size_t i = 0; i < grid.nx(); ++i) {
                const std::size_t c = j * grid.nx() + i;
                const double wx = grid.center_x(i);
                const std::uint32_t k = owner[c];
                acc.add(k, density.mass[c], wx, wy, gen.weighted_sq(k, wx, wy));
            }
        }
    });
    return finish(owner, blocks, fleet);
}

Partition partition_fleet(const Fleet& fleet, const DensityGrid& density, Parallelism par) {
    const Grid& grid = density.grid;
    const Generators gen(fleet);
    OwnerMap owner(grid.size());
    std::vector<Accumulator> blocks(block_count(grid), Accumulator(fleet.size()));
    for_each_block(blocks.size(), par, [&](std::size_t b) {
        auto& acc = blocks[b];
        const std::size_t j_end = std::min(grid.ny(), (b + 1) * kRowsPerBlock);
        for (std::size_t j = b * kRowsPerBlock; j < j_end; ++j) {
            const double wy = grid.center_y(j);
            for (std::size_t i = 0; i < grid.nx(); ++i) {
                const std::size_t c = j * grid.nx() + i;
                const double wx = grid.center_x(i);
                double best = 0.0;
                const std::uint32_t k = gen.nearest(wx, wy, best);
                owner[c] = k;
                acc.add(k, density.mass[c], wx, wy, best);
            }
        }
    });
    return finish(std::move(owner), blocks, fleet);
}

}  // namespace mwsn
