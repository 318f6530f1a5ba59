#include "mwsn/relocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwsn {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::lloyd: return "lloyd";
        case Algorithm::lloyd_alpha: return "lloyd_alpha";
        case Algorithm::eml: return "eml";
        case Algorithm::cml: return "cml";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "lloyd") return Algorithm::lloyd;
    if (name == "lloyd_alpha") return Algorithm::lloyd_alpha;
    if (name == "eml") return Algorithm::eml;
    if (name == "cml") return Algorithm::cml;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

namespace {

bool candidate(double chi, double varsigma) { return chi > 0.0 && std::isfinite(varsigma); }

StepOutcome finish(const Fleet& fleet, std::vector<Point> positions) {
    StepOutcome out;
    out.positions = std::move(positions);
    out.movement.resize(fleet.size());
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        out.movement[n] = out.positions[n] - fleet.initial[n];
        if (out.positions[n] != fleet.initial[n]) {
            out.dynamic_set.push_back(n);
        } else {
            out.static_set.push_back(n);
        }
    }
    return out;
}

void check_partition(const Fleet& fleet, const Partition& partition) {
    if (partition.size() != fleet.size()) throw std::invalid_argument("partition and fleet sizes differ");
}

}  // namespace

EnergyAllocation allocate_total_energy(std::span<const double> chi, std::span<const double> varsigma, double gamma) {
    if (chi.size() != varsigma.size()) throw std::invalid_argument("chi and varsigma lengths differ");
    if (!(gamma >= 0.0)) throw std::invalid_argument("energy budget must be nonnegative");
    const std::size_t n = chi.size();

    EnergyAllocation out;
    out.z.assign(n, 0.0);
    out.dynamic.assign(n, false);

    double reach_all = 0.0;
    for (double c : chi) reach_all += c;
    if (reach_all <= gamma) {
        for (std::size_t k = 0; k < n; ++k) {
            out.z[k] = chi[k];
            out.dynamic[k] = candidate(chi[k], varsigma[k]);
        }
        return out;
    }

    out.binding = true;
    if (gamma == 0.0) {
        // Every candidate's tentative z is nonpositive at the level max chi/varsigma.
        for (std::size_t k = 0; k < n; ++k) {
            if (candidate(chi[k], varsigma[k])) out.rho_bar = std::max(out.rho_bar, chi[k] / varsigma[k]);
        }
        return out;
    }

    for (std::size_t k = 0; k < n; ++k) out.dynamic[k] = candidate(chi[k], varsigma[k]);

    double rho = 0.0;
    while (true) {
        double sum_chi = 0.0;
        double sum_varsigma = 0.0;
        bool any = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (!out.dynamic[k]) continue;
            sum_chi += chi[k];
            sum_varsigma += varsigma[k];
            any = true;
        }
        if (!any) break;
        ++out.passes;
        rho = (sum_chi - gamma) / sum_varsigma;
        bool pruned = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (out.dynamic[k] && chi[k] - varsigma[k] * rho <= 0.0) {
                out.dynamic[k] = false;
                pruned = true;
            }
        }
        if (!pruned) break;
    }

    out.rho_bar = rho;
    for (std::size_t k = 0; k < n; ++k) {
        if (out.dynamic[k]) out.z[k] = chi[k] - varsigma[k] * rho;
    }
    return out;
}

StepOutcome lloyd_step(const Fleet& fleet, const Partition& partition) {
    check_partition(fleet, partition);
    std::vector<Point> next = fleet.current;
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        if (!partition.empty_cell(n)) next[n] = partition.centroid[n];
    }
    return finish(fleet, std::move(next));
}

StepOutcome lloyd_alpha_step(const Fleet& fleet, const Partition& partition, double alpha) {
    check_partition(fleet, partition);
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
    std::vector<Point> next = fleet.current;
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        if (partition.empty_cell(n)) continue;
        // (1 - alpha) p + alpha c reproduces p exactly at alpha = 0 and c at alpha = 1.
        next[n] = (1.0 - alpha) * fleet.current[n] + alpha * partition.centroid[n];
    }
    return finish(fleet, std::move(next));
}

StepOutcome eml_step(const Fleet& fleet, const Partition& partition, double gamma) {
    check_partition(fleet, partition);
    if (std::isnan(gamma) || gamma < 0.0) throw std::invalid_argument("energy budget must be nonnegative");
    if (std::isinf(gamma)) return lloyd_step(fleet, partition);

    const std::size_t n = fleet.size();
    std::vector<double> chi(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (!partition.empty_cell(k)) chi[k] = fleet.params[k].xi * norm(partition.gamma[k]);
    }
    const auto alloc = allocate_total_energy(chi, partition.varsigma, gamma);

    // Empty cells are static: they return to (or stay at) their initial position.
    std::vector<Point> next = fleet.initial;
    for (std::size_t k = 0; k < n; ++k) {
        if (partition.empty_cell(k)) continue;
        if (!alloc.binding) {
            next[k] = partition.centroid[k];
        } else if (alloc.dynamic[k]) {
            const double scale = 1.0 - partition.varsigma[k] * alloc.rho_bar / chi[k];
            next[k] = fleet.initial[k] + scale * partition.gamma[k];
        }
    }
    auto out = finish(fleet, std::move(next));
    out.budget_binding = alloc.binding;
    out.pruning_passes = alloc.passes;
    if (alloc.binding) out.rho_bar = alloc.rho_bar;
    return out;
}

StepOutcome cml_step(const Fleet& fleet, const Partition& partition, std::span<const double> gammas) {
    check_partition(fleet, partition);
    if (gammas.size() != fleet.size()) throw std::invalid_argument("per-sensor budget list has the wrong length");
    std::vector<Point> next = fleet.initial;
    for (std::size_t k = 0; k < fleet.size(); ++k) {
        if (!(gammas[k] >= 0.0)) throw std::invalid_argument("per-sensor budgets must be nonnegative");
        if (partition.empty_cell(k)) continue;
        const double chi = fleet.params[k].xi * norm(partition.gamma[k]);
        if (chi <= gammas[k]) {
            next[k] = partition.centroid[k];
        } else {
            next[k] = fleet.initial[k] + (gammas[k] / chi) * partition.gamma[k];
        }
    }
    return finish(fleet, std::move(next));
}

double default_tolerance(const Region& region) { return 1e-9 * region.width(); }

namespace {

void check_budget(Algorithm algorithm, const EnergyBudget& budget, std::size_t n) {
    const bool ok = std::visit(
        [&](const auto& b) {
            using B = std::decay_t<decltype(b)>;
            switch (algorithm) {
                case Algorithm::lloyd:
                case Algorithm::lloyd_alpha: return std::is_same_v<B, Unlimited>;
                case Algorithm::eml:
                    if constexpr (std::is_same_v<B, TotalBudget>) {
                        if (!(b.gamma >= 0.0)) throw std::invalid_argument("total budget must be nonnegative");
                    }
                    return std::is_same_v<B, Unlimited> || std::is_same_v<B, TotalBudget>;
                case Algorithm::cml:
                    if constexpr (std::is_same_v<B, PerSensorBudget>) {
                        if (b.gammas.size() != n) throw std::invalid_argument("per-sensor budget list has the wrong length");
                        return true;
                    }
                    return false;
            }
            return false;
        },
        budget);
    if (!ok) throw std::invalid_argument("energy budget does not match algorithm " + to_string(algorithm));
}

StepOutcome step(Algorithm algorithm, const Fleet& fleet, const Partition& partition, const EnergyBudget& budget,
                 double alpha) {
    switch (algorithm) {
        case Algorithm::lloyd: return lloyd_step(fleet, partition);
        case Algorithm::lloyd_alpha: return lloyd_alpha_step(fleet, partition, alpha);
        case Algorithm::eml: {
            const auto* total = std::get_if<TotalBudget>(&budget);
            return eml_step(fleet, partition, total ? total->gamma : std::numeric_limits<double>::infinity());
        }
        case Algorithm::cml: return cml_step(fleet, partition, std::get<PerSensorBudget>(budget).gammas);
    }
    throw std::logic_error("unreachable");
}

IterationRecord make_record(std::size_t iteration, const Fleet& fleet, const Partition& partition,
                            const DensityGrid& density, Parallelism par, std::vector<double> path, double max_step) {
    IterationRecord r;
    r.iteration = iteration;
    r.distortion = partition.distortion();
    r.coverage = area_coverage(fleet, density.grid, par);
    const auto e = energy(fleet);
    r.total_energy = e.total;
    r.max_individual_energy = e.max_individual;
    r.max_step = max_step;
    r.path_length = std::move(path);
    for (double d : r.path_length) r.path_total += d;
    return r;
}

}  // namespace

Trace run(Algorithm algorithm, const Fleet& fleet, const EnergyBudget& budget, const DensityGrid& density,
          const RunOptions& options, const StepObserver& observer) {
    if (options.iter_max == 0) throw std::invalid_argument("iter_max must be at least 1");
    if (algorithm == Algorithm::lloyd_alpha && !(options.alpha >= 0.0 && options.alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    fleet.validate(density.grid.region());
    check_budget(algorithm, budget, fleet.size());

    Trace trace;
    Fleet current = fleet;
    std::vector<double> path(fleet.size(), 0.0);
    Partition partition = partition_fleet(current, density, options.parallelism);
    trace.initial = make_record(0, current, partition, density, options.parallelism, path, 0.0);

    for (std::size_t k = 1; k <= options.iter_max; ++k) {
        auto outcome = step(algorithm, current, partition, budget, options.alpha);
        if (observer) observer(k, current, partition, outcome);

        double max_step = 0.0;
        for (std::size_t n = 0; n < current.size(); ++n) {
            const double d = distance(outcome.positions[n], current.current[n]);
            path[n] += d;
            max_step = std::max(max_step, d);
        }
        current.current = std::move(outcome.positions);
        partition = partition_fleet(current, density, options.parallelism);
        trace.records.push_back(make_record(k, current, partition, density, options.parallelism, path, max_step));
        if (options.keep_history) trace.history.push_back(current.current);

        if (max_step < options.tolerance) {
            trace.converged = true;
            break;
        }
    }
    trace.final_fleet = std::move(current);
    return trace;
}

}  // namespace mwsn
