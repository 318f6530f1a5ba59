#include "mwsn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mwsn/rng.hpp"

namespace mwsn::oracle {

void AllocationInstance::validate() const {
    if (chi.size() != varsigma.size()) throw std::invalid_argument("chi and varsigma lengths differ");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and nonnegative");
    for (std::size_t n = 0; n < chi.size(); ++n) {
        if (!(chi[n] >= 0.0) || !std::isfinite(chi[n])) throw std::invalid_argument("chi must be finite and nonnegative");
        if (!(varsigma[n] > 0.0)) throw std::invalid_argument("varsigma must be positive");
    }
}

double AllocationInstance::objective(std::span<const double> z) const {
    double f = 0.0;
    for (std::size_t n = 0; n < chi.size(); ++n) {
        if (std::isinf(varsigma[n])) continue;
        const double d = z[n] - chi[n];
        f += d * d / varsigma[n];
    }
    return f;
}

namespace {

double level_energy(const AllocationInstance& in, double lambda, std::vector<double>* z) {
    double total = 0.0;
    for (std::size_t n = 0; n < in.chi.size(); ++n) {
        const double zn = std::isinf(in.varsigma[n]) ? 0.0 : std::max(0.0, in.chi[n] - lambda * in.varsigma[n]);
        if (z) (*z)[n] = zn;
        total += zn;
    }
    return total;
}

}  // namespace

QpSolution qp_energy_allocation(const AllocationInstance& instance) {
    instance.validate();
    QpSolution out;
    double reach_all = 0.0;
    for (double c : instance.chi) reach_all += c;
    if (reach_all <= instance.gamma) {
        out.z = instance.chi;
        return out;
    }

    double hi = 0.0;
    for (std::size_t n = 0; n < instance.chi.size(); ++n) {
        if (std::isfinite(instance.varsigma[n])) hi = std::max(hi, instance.chi[n] / instance.varsigma[n]);
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (level_energy(instance, mid, nullptr) > instance.gamma) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.lambda = 0.5 * (lo + hi);
    out.z.resize(instance.chi.size());
    level_energy(instance, out.lambda, &out.z);
    return out;
}

namespace {

struct GridSearch {
    const AllocationInstance& in;
    double step;
    std::vector<double> current;
    std::vector<double> best;
    double best_value = std::numeric_limits<double>::infinity();

    void visit(std::size_t dim, double remaining) {
        if (dim == in.chi.size()) {
            const double v = in.objective(current);
            if (v < best_value) {
                best_value = v;
                best = current;
            }
            return;
        }
        const double slack = 1e-12 * std::max(1.0, in.gamma);
        for (long k = 0;; ++k) {
            const double z = static_cast<double>(k) * step;
            if (z > in.chi[dim] || z > remaining + slack) break;
            current[dim] = z;
            visit(dim + 1, remaining - z);
        }
        // chi itself is a grid point of every coordinate.
        if (in.chi[dim] <= remaining + slack) {
            current[dim] = in.chi[dim];
            visit(dim + 1, remaining - in.chi[dim]);
        }
    }
};

}  // namespace

std::vector<double> grid_search_allocation(const AllocationInstance& instance, int steps) {
    instance.validate();
    if (instance.chi.size() > 4) throw std::invalid_argument("grid search supports at most 4 sensors");
    if (steps < 1 || steps > 200) throw std::invalid_argument("grid search steps must lie in [1, 200]");

    double reach_all = 0.0;
    for (double c : instance.chi) reach_all += c;
    if (reach_all <= instance.gamma) return instance.chi;
    if (instance.gamma == 0.0) return std::vector<double>(instance.chi.size(), 0.0);

    GridSearch search{instance, instance.gamma / steps, std::vector<double>(instance.chi.size(), 0.0), {}};
    search.visit(0, instance.gamma);
    return search.best;
}

double fixed_partition_objective(const Fleet& fleet, const Partition& partition, std::span<const Point> positions) {
    double f = 0.0;
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        if (partition.empty_cell(n)) continue;
        f += fleet.params[n].eta * squared_norm(positions[n] - partition.centroid[n]) * partition.volume[n];
    }
    return f;
}

bool segment_perturbation_check(const Fleet& fleet, const Partition& partition, std::span<const Point> candidate,
                                const EnergyBudget& budget, int trials, double epsilon, std::uint64_t seed) {
    const std::size_t n_sensors = fleet.size();
    if (candidate.size() != n_sensors || partition.size() != n_sensors) {
        throw std::invalid_argument("candidate, partition and fleet sizes differ");
    }

    std::vector<double> spent(n_sensors);
    double spent_total = 0.0;
    for (std::size_t n = 0; n < n_sensors; ++n) {
        spent[n] = fleet.params[n].xi * distance(candidate[n], fleet.initial[n]);
        spent_total += spent[n];
    }

    // Radius of the disk about the initial position that sensor n may reach
    // with every other sensor held fixed.
    auto reach = [&](std::size_t n) -> double {
        return std::visit(
            [&](const auto& b) -> double {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, Unlimited>) {
                    return std::numeric_limits<double>::infinity();
                } else if constexpr (std::is_same_v<B, TotalBudget>) {
                    return std::max(0.0, b.gamma - (spent_total - spent[n])) / fleet.params[n].xi;
                } else {
                    return b.gammas.at(n) / fleet.params[n].xi;
                }
            },
            budget);
    };

    Xoshiro256 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto n = static_cast<std::size_t>(rng() % n_sensors);
        const double angle = 2.0 * std::numbers::pi * rng.uniform01();
        const double radius = epsilon * std::sqrt(rng.uniform01());
        if (partition.empty_cell(n)) continue;

        Point moved = candidate[n] + Vec2{radius * std::cos(angle), radius * std::sin(angle)};
        const double r = reach(n);
        const Vec2 offset = moved - fleet.initial[n];
        const double len = norm(offset);
        if (len > r) moved = fleet.initial[n] + (r / len) * offset;

        const double weight = fleet.params[n].eta * partition.volume[n];
        const double change = weight * (squared_norm(moved - partition.centroid[n]) -
                                        squared_norm(candidate[n] - partition.centroid[n]));
        if (change < -1e-9) return false;
    }
    return true;
}

}  // namespace mwsn::oracle
