#include "mwsn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mwsn/metrics.hpp"
#include "mwsn/rng.hpp"
#include "text_util.hpp"

namespace mwsn {

using detail::format_real;

Fleet init_random_deployment(const ExperimentConfig& config) {
    Xoshiro256 rng(config.seed);
    const Region& r = config.region;
    std::vector<Point> initial(config.n);
    for (auto& p : initial) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        p = {r.min().x + u * r.width(), r.min().y + v * r.height()};
    }
    return Fleet::at_rest(config.sensor_params(), std::move(initial));
}

DensityGrid make_density_grid(const ExperimentConfig& config) { return sample_density(config.grid(), config.density); }

Trace run_configured(const ExperimentConfig& config, const ExecutionOptions& exec, const StepObserver& observer) {
    RunOptions options;
    options.iter_max = config.iter_max;
    options.tolerance = default_tolerance(config.region);
    options.alpha = config.alpha;
    options.keep_history = exec.keep_history;
    options.parallelism = exec.parallelism;
    return run(config.algorithm, init_random_deployment(config), config.budget, make_density_grid(config), options,
               observer);
}

std::string format_trace_csv(const Trace& trace) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& r : trace.records) {
        out += std::to_string(r.iteration);
        for (double v : {r.distortion, r.coverage, r.total_energy, r.max_individual_energy, r.max_step, r.path_total}) {
            out += ',';
            out += format_real(v);
        }
        out += '\n';
    }
    return out;
}

std::string render_svg(const ExperimentConfig& config, const Trace& trace) {
    const Region& region = config.region;
    constexpr double kCanvas = 600.0;
    constexpr double kMargin = 10.0;
    const double scale = kCanvas / std::max(region.width(), region.height());
    const double w = region.width() * scale;
    const double h = region.height() * scale;
    auto sx = [&](double x) { return format_real(kMargin + (x - region.min().x) * scale); };
    auto sy = [&](double y) { return format_real(kMargin + (region.max().y - y) * scale); };

    const Fleet& fleet = trace.final_fleet;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_real(w + 2 * kMargin) << "\" height=\""
        << format_real(h + 2 * kMargin) << "\">\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << format_real(w) << "\" height=\""
        << format_real(h) << "\" fill=\"white\" stroke=\"black\"/>\n";
    out << "<g class=\"paths\" stroke=\"blue\" stroke-width=\"1.5\">\n";
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        out << "<line class=\"path\" x1=\"" << sx(fleet.initial[n].x) << "\" y1=\"" << sy(fleet.initial[n].y)
            << "\" x2=\"" << sx(fleet.current[n].x) << "\" y2=\"" << sy(fleet.current[n].y) << "\"/>\n";
    }
    out << "</g>\n<g class=\"initial-positions\" fill=\"none\" stroke=\"green\" stroke-width=\"1.5\">\n";
    for (const auto& p : fleet.initial) {
        out << "<circle class=\"initial\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"4\"/>\n";
    }
    out << "</g>\n<g class=\"final-positions\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\">\n";
    for (const auto& p : fleet.current) {
        out << "<circle class=\"final\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"4\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string format_summary(const ExperimentConfig& config, const Trace& trace) {
    const IterationRecord& last = trace.records.empty() ? trace.initial : trace.records.back();
    const Fleet& fleet = trace.final_fleet;
    std::size_t moved = 0;
    double max_distance = 0.0;
    double total_distance = 0.0;
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        const double d = distance(fleet.current[n], fleet.initial[n]);
        if (d > 0.0) ++moved;
        max_distance = std::max(max_distance, d);
        total_distance += d;
    }

    std::ostringstream out;
    out << "algorithm: " << to_string(config.algorithm) << "\n";
    if (!config.scenario.empty()) out << "scenario: " << config.scenario << "\n";
    out << "budget: " << describe_budget(config.budget) << "\n";
    out << "sensors: " << config.n << "\n";
    using detail::format_short;
    out << "region: [" << format_short(config.region.min().x) << ", " << format_short(config.region.max().x) << "] x ["
        << format_short(config.region.min().y) << ", " << format_short(config.region.max().y) << "]\n";
    out << "grid: " << config.grid_nx << " x " << config.grid_ny << "\n";
    out << "density: " << config.density.to_string() << "\n";
    out << "seed: " << config.seed << "\n";
    out << "iterations: " << trace.records.size() << " of " << config.iter_max
        << (trace.converged ? " (converged)" : "") << "\n";
    out << "initial distortion: " << format_real(trace.initial.distortion) << "\n";
    out << "final distortion: " << format_real(last.distortion) << "\n";
    out << "initial coverage: " << format_real(trace.initial.coverage) << "\n";
    out << "final coverage: " << format_real(last.coverage) << "\n";
    out << "total energy: " << format_real(last.total_energy) << "\n";
    out << "max individual energy: " << format_real(last.max_individual_energy) << "\n";
    out << "total moving distance: " << format_real(total_distance) << "\n";
    out << "max individual moving distance: " << format_real(max_distance) << "\n";
    out << "dynamic sensors: " << moved << "\n";
    out << "cumulative path length (diagnostic): " << format_real(last.path_total) << "\n";
    return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << contents;
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& config, const ExecutionOptions& exec) {
    std::error_code ec;
    std::filesystem::create_directories(config.outdir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + config.outdir.string() + ": " + ec.message());

    RunArtifacts art;
    art.trace = run_configured(config, exec);
    art.trace_csv = config.outdir / "trace.csv";
    art.deployment_svg = config.outdir / "deployment.svg";
    art.summary_txt = config.outdir / "summary.txt";
    write_file(art.trace_csv, format_trace_csv(art.trace));
    write_file(art.deployment_svg, render_svg(config, art.trace));
    write_file(art.summary_txt, format_summary(config, art.trace));
    return art;
}

namespace {

double budget_key(const ExperimentConfig& c) {
    if (const auto* t = std::get_if<TotalBudget>(&c.budget)) return t->gamma;
    if (const auto* p = std::get_if<PerSensorBudget>(&c.budget)) {
        return *std::max_element(p->gammas.begin(), p->gammas.end());
    }
    if (c.algorithm == Algorithm::lloyd_alpha) return c.alpha;
    return std::numeric_limits<double>::infinity();
}

void check_comparable(const ExperimentConfig& a, const ExperimentConfig& b) {
    if (!(a.region == b.region) || a.grid_nx != b.grid_nx || a.grid_ny != b.grid_ny || a.seed != b.seed ||
        !(a.density.spec() == b.density.spec()) || a.n != b.n || a.eta != b.eta || a.xi != b.xi ||
        a.sensing_radius != b.sensing_radius) {
        throw std::invalid_argument("compared configs must share region, grid, density, seed and fleet parameters");
    }
}

}  // namespace

std::vector<ComparisonRow> compare(const std::vector<ExperimentConfig>& configs, const ExecutionOptions& exec) {
    if (configs.size() < 2) throw std::invalid_argument("compare needs at least two configs");
    for (std::size_t k = 1; k < configs.size(); ++k) check_comparable(configs.front(), configs[k]);

    std::vector<ComparisonRow> rows;
    for (const auto& cfg : configs) {
        const Trace trace = run_configured(cfg, exec);
        const auto& last = trace.records.back();
        ComparisonRow row;
        row.algorithm = cfg.algorithm;
        row.budget = cfg.algorithm == Algorithm::lloyd_alpha ? "alpha=" + detail::format_short(cfg.alpha)
                                                               : describe_budget(cfg.budget);
        row.budget_key = budget_key(cfg);
        row.final_distortion = last.distortion;
        row.final_coverage = last.coverage;
        row.total_energy = last.total_energy;
        for (std::size_t n = 0; n < trace.final_fleet.size(); ++n) {
            const double d = distance(trace.final_fleet.current[n], trace.final_fleet.initial[n]);
            row.total_distance += d;
            row.max_individual_distance = std::max(row.max_individual_distance, d);
        }
        row.iterations = trace.records.size();
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        const auto na = to_string(a.algorithm);
        const auto nb = to_string(b.algorithm);
        if (na != nb) return na < nb;
        return a.budget_key < b.budget_key;
    });
    return rows;
}

std::string format_comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = kComparisonHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += to_string(r.algorithm) + ',' + r.budget;
        for (double v : {r.final_distortion, r.final_coverage, r.total_energy, r.total_distance,
                         r.max_individual_distance}) {
            out += ',' + format_real(v);
        }
        out += ',' + std::to_string(r.iterations) + '\n';
    }
    return out;
}

double mean_initial_coverage(ExperimentConfig config, double side, std::uint64_t first_seed, std::size_t seeds) {
    config.region = Region({0.0, 0.0}, {side, side});
    const Grid grid = config.grid();
    double sum = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) {
        config.seed = first_seed + s;
        sum += area_coverage(init_random_deployment(config), grid);
    }
    return sum / static_cast<double>(seeds);
}

double calibrate_region_side(const ExperimentConfig& config, double target, std::uint64_t first_seed,
                             std::size_t seeds, double lo, double hi, int iterations) {
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target coverage must lie in (0, 1)");
    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mean_initial_coverage(config, mid, first_seed, seeds) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace mwsn
