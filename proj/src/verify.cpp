#include "mwsn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mwsn/metrics.hpp"
#include "mwsn/oracle.hpp"
#include "text_util.hpp"

namespace mwsn {

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerificationReport::format() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        if (c.passed) {
            out << "PASS " << c.name << " (" << c.evaluations << " evaluations)\n";
        } else {
            out << "FAIL " << c.name << " (iteration " << c.failed_iteration << "): " << c.detail << "\n";
        }
    }
    out << (passed() ? "all checks passed" : "verification failed") << " over " << iterations << " iterations\n";
    return out.str();
}

std::vector<std::vector<Point>> replay(const ExperimentConfig& config, const ExecutionOptions& exec) {
    ExecutionOptions with_history = exec;
    with_history.keep_history = true;
    const Trace trace = run_configured(config, with_history);
    std::vector<std::vector<Point>> out;
    out.push_back(trace.final_fleet.initial);
    for (const auto& p : trace.history) out.push_back(p);
    return out;
}

namespace {

using detail::format_real;

class Checklist {
public:
    explicit Checklist(VerificationReport& report) : report_(report) {}

    void record(const std::string& name, std::size_t iteration, bool ok, const std::string& detail = {}) {
        auto [it, inserted] = index_.try_emplace(name, report_.checks.size());
        if (inserted) report_.checks.push_back({name, true, 0, 0, {}});
        auto& c = report_.checks[it->second];
        ++c.evaluations;
        if (!ok && c.passed) {
            c.passed = false;
            c.failed_iteration = iteration;
            c.detail = detail;
        }
    }

private:
    VerificationReport& report_;
    std::map<std::string, std::size_t> index_;
};

std::string sensor_detail(std::size_t n, const std::string& what) { return "sensor " + std::to_string(n) + ": " + what; }

}  // namespace

VerificationReport verify_positions(const ExperimentConfig& config, const std::vector<std::vector<Point>>& positions,
                                    const VerifyOptions& options) {
    VerificationReport report;
    Checklist checks(report);
    if (positions.empty()) throw std::invalid_argument("no positions to verify");

    const DensityGrid density = make_density_grid(config);
    const double scale = std::max(config.region.width(), config.region.height());
    const double pos_tol_tight = 1e-12 * scale;
    const double pos_tol = 1e-9 * scale;

    Fleet before = Fleet::at_rest(config.sensor_params(), positions.front());
    const std::size_t n_sensors = before.size();
    Partition partition = partition_fleet(before, density);
    double previous_distortion = distortion(before, partition, density).total;

    for (std::size_t k = 1; k < positions.size(); ++k) {
        const auto& next = positions[k];
        if (next.size() != n_sensors) throw std::invalid_argument("position snapshot has the wrong sensor count");
        report.iterations = k;

        Fleet after = before;
        after.current = next;
        const auto e = energy(after);

        // Budget feasibility.
        if (const auto* t = std::get_if<TotalBudget>(&config.budget)) {
            checks.record("budget feasibility", k, e.total <= t->gamma * (1.0 + 1e-9),
                          "total energy " + format_real(e.total) + " exceeds " + format_real(t->gamma));
        } else if (const auto* p = std::get_if<PerSensorBudget>(&config.budget)) {
            for (std::size_t n = 0; n < n_sensors; ++n) {
                checks.record("budget feasibility", k, e.per_sensor[n] <= p->gammas[n] * (1.0 + 1e-9),
                              sensor_detail(n, "energy " + format_real(e.per_sensor[n]) + " exceeds " +
                                                   format_real(p->gammas[n])));
            }
        }

        std::vector<double> chi(n_sensors, 0.0);
        for (std::size_t n = 0; n < n_sensors; ++n) {
            if (!partition.empty_cell(n)) chi[n] = before.params[n].xi * norm(partition.gamma[n]);
        }

        const bool constrained = config.algorithm == Algorithm::eml || config.algorithm == Algorithm::cml;
        if (constrained) {
            for (std::size_t n = 0; n < n_sensors; ++n) {
                const Vec2 d = next[n] - before.initial[n];
                bool ok = true;
                std::string why;
                if (partition.empty_cell(n) || norm(partition.gamma[n]) == 0.0) {
                    ok = norm(d) <= pos_tol;
                    why = "sensor with no centroid offset moved";
                } else {
                    const Vec2 g = partition.gamma[n];
                    const double len = norm(g);
                    const double t = dot(d, g) / (len * len);
                    const double off_line = std::abs(g.x * d.y - g.y * d.x) / len;
                    ok = off_line <= pos_tol && t >= -1e-12 && t <= 1.0 + 1e-12;
                    why = "off segment by " + format_real(off_line) + ", parameter " + format_real(t);
                }
                checks.record("destination between initial position and centroid", k, ok, sensor_detail(n, why));
            }
        }

        if (config.algorithm == Algorithm::eml) {
            const double gamma = std::holds_alternative<TotalBudget>(config.budget)
                                     ? std::get<TotalBudget>(config.budget).gamma
                                     : std::numeric_limits<double>::infinity();
            double reach_all = 0.0;
            for (double c : chi) reach_all += c;

            if (std::isfinite(gamma)) {
                oracle::AllocationInstance inst{chi, partition.varsigma, gamma};
                const auto qp = oracle::qp_energy_allocation(inst);
                double worst = 0.0;
                for (std::size_t n = 0; n < n_sensors; ++n) {
                    worst = std::max(worst, std::abs(qp.z[n] - e.per_sensor[n]));
                }
                checks.record("allocation matches water-filling oracle", k, worst <= 1e-8,
                              "max |z - z*| = " + format_real(worst));
            }

            std::vector<std::size_t> dyn;
            for (std::size_t n = 0; n < n_sensors; ++n) {
                if (next[n] != before.initial[n]) dyn.push_back(n);
            }
            if (reach_all > gamma && !dyn.empty()) {
                checks.record("budget exhausted when binding", k, std::abs(e.total - gamma) <= 1e-9 * gamma,
                              "used " + format_real(e.total) + " of " + format_real(gamma));

                double sum_chi = 0.0, sum_varsigma = 0.0;
                for (auto n : dyn) {
                    sum_chi += chi[n];
                    sum_varsigma += partition.varsigma[n];
                }
                const double rho_bar = (sum_chi - gamma) / sum_varsigma;
                for (std::size_t n = 0; n < n_sensors; ++n) {
                    if (partition.empty_cell(n)) continue;
                    const double xi = before.params[n].xi;
                    const double rho = xi * distance(next[n], partition.centroid[n]) / partition.varsigma[n];
                    const bool dynamic = std::find(dyn.begin(), dyn.end(), n) != dyn.end();
                    if (dynamic) {
                        checks.record("equal moving efficiency of dynamic sensors", k,
                                      std::abs(rho - rho_bar) <= 1e-6 * std::max(std::abs(rho_bar), 1e-300),
                                      sensor_detail(n, "rho " + format_real(rho) + " vs " + format_real(rho_bar)));
                        const Point expected = partition.centroid[n] - (partition.varsigma[n] * rho_bar /
                                                                        (xi * norm(partition.gamma[n]))) *
                                                                           partition.gamma[n];
                        checks.record("dynamic position formula", k, distance(expected, next[n]) <= pos_tol,
                                      sensor_detail(n, "off by " + format_real(distance(expected, next[n]))));
                    } else {
                        checks.record("static efficiency below threshold", k, rho <= rho_bar * (1.0 + 1e-6),
                                      sensor_detail(n, "rho " + format_real(rho) + " > " + format_real(rho_bar)));
                    }
                }
            } else if (reach_all <= gamma) {
                for (std::size_t n = 0; n < n_sensors; ++n) {
                    if (partition.empty_cell(n)) continue;
                    checks.record("slack budget reaches centroids", k,
                                  distance(next[n], partition.centroid[n]) <= pos_tol_tight,
                                  sensor_detail(n, "not at centroid"));
                }
            }
        } else if (config.algorithm == Algorithm::cml) {
            const auto& gammas = std::get<PerSensorBudget>(config.budget).gammas;
            for (std::size_t n = 0; n < n_sensors; ++n) {
                Point expected = before.initial[n];
                if (!partition.empty_cell(n) && chi[n] > 0.0) {
                    expected = expected + std::min(1.0, gammas[n] / chi[n]) * partition.gamma[n];
                }
                checks.record("projected centroid formula", k, distance(expected, next[n]) <= pos_tol_tight,
                              sensor_detail(n, "off by " + format_real(distance(expected, next[n]))));
            }
        } else {
            const double alpha = config.algorithm == Algorithm::lloyd_alpha ? config.alpha : 1.0;
            for (std::size_t n = 0; n < n_sensors; ++n) {
                Point expected = before.current[n];
                if (!partition.empty_cell(n)) {
                    expected = expected + alpha * (partition.centroid[n] - before.current[n]);
                }
                checks.record("centroid update formula", k, distance(expected, next[n]) <= pos_tol_tight,
                              sensor_detail(n, "off by " + format_real(distance(expected, next[n]))));
            }
        }

        if (config.algorithm != Algorithm::lloyd_alpha && options.perturbation_trials > 0) {
            const bool ok = oracle::segment_perturbation_check(before, partition, next, config.budget,
                                                               options.perturbation_trials,
                                                               options.perturbation_epsilon * scale, options.seed + k);
            checks.record("local optimality under perturbation", k, ok, "a feasible perturbation lowers the objective");
        }

        const Partition next_partition = partition_fleet(after, density);
        const double d = distortion(after, next_partition, density).total;
        checks.record("monotone distortion", k, d <= previous_distortion * (1.0 + 1e-9),
                      "distortion rose from " + format_real(previous_distortion) + " to " + format_real(d));

        previous_distortion = d;
        before = std::move(after);
        before.current = next;
        partition = next_partition;
    }
    return report;
}

VerificationReport verify_run(const ExperimentConfig& config, const ExecutionOptions& exec,
                              const VerifyOptions& options) {
    return verify_positions(config, replay(config, exec), options);
}

}  // namespace mwsn
