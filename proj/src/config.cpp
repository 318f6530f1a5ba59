#include "mwsn/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace mwsn {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

const std::vector<BuiltinScenario>& builtin_scenarios() {
    static const std::vector<BuiltinScenario> scenarios = [] {
        BuiltinScenario mwsn1{"mwsn1", "homogeneous: 32 sensors, eta = 1, xi = 1, R_s = 0.2", 32,
                              std::vector<double>(32, 1.0), std::vector<double>(32, 1.0), 0.2};
        BuiltinScenario mwsn2{"mwsn2",
                              "heterogeneous: sensors 1-8 eta = 1, xi = 3; sensors 9-32 eta = 2, xi = 1; R_s = 0.3",
                              32, {}, {}, 0.3};
        for (std::size_t n = 0; n < 32; ++n) {
            mwsn2.eta.push_back(n < 8 ? 1.0 : 2.0);
            mwsn2.xi.push_back(n < 8 ? 3.0 : 1.0);
        }
        return std::vector<BuiltinScenario>{mwsn1, mwsn2};
    }();
    return scenarios;
}

const BuiltinScenario& find_scenario(const std::string& name) {
    for (const auto& s : builtin_scenarios()) {
        if (s.name == name) return s;
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::vector<SensorParams> ExperimentConfig::sensor_params() const {
    std::vector<SensorParams> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = {eta.at(k), xi.at(k), sensing_radius};
    return out;
}

namespace {

using detail::parse_double;
using detail::trim;

struct Entry {
    std::size_t line;
    std::string value;
};

const std::set<std::string> kKeys = {"region_min", "region_max", "grid_nx", "grid_ny", "N",     "eta",
                                     "xi",         "Rs",         "density", "algorithm", "alpha", "gamma",
                                     "gamma_n",    "iter_max",   "seed",    "scenario",  "outdir"};

double number(const Entry& e, const std::string& key) {
    const auto v = parse_double(e.value);
    if (!v || !std::isfinite(*v)) throw ConfigError(e.line, "malformed number for '" + key + "': '" + e.value + "'");
    return *v;
}

std::vector<double> number_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    for (auto part : detail::split(e.value, ',')) {
        const auto v = parse_double(part);
        if (!v || !std::isfinite(*v)) {
            throw ConfigError(e.line, "malformed number in list '" + key + "': '" + std::string(part) + "'");
        }
        out.push_back(*v);
    }
    return out;
}

template <class Int>
Int integer(const Entry& e, const std::string& key) {
    const auto v = detail::parse_integer<Int>(e.value);
    if (!v) throw ConfigError(e.line, "malformed integer for '" + key + "': '" + e.value + "'");
    return *v;
}

Point point(const Entry& e, const std::string& key) {
    const auto v = number_list(e, key);
    if (v.size() != 2) throw ConfigError(e.line, "'" + key + "' expects two comma-separated numbers");
    return {v[0], v[1]};
}

// Single values broadcast to every sensor.
std::vector<double> per_sensor(std::vector<double> values, std::size_t n, std::size_t line, const std::string& key) {
    if (values.size() == 1) return std::vector<double>(n, values[0]);
    if (values.size() != n) {
        throw ConfigError(line, "'" + key + "' has " + std::to_string(values.size()) + " entries but N = " +
                                    std::to_string(n));
    }
    return values;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!kKeys.contains(key)) throw ConfigError(line_no, "unknown key '" + key + "'");
        if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
        if (entries.contains(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
        entries.emplace(key, Entry{line_no, value});
    }
    auto get = [&](const std::string& key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;
    std::optional<std::vector<double>> eta_values, xi_values;
    std::size_t eta_line = 0, xi_line = 0;

    if (const auto* e = get("scenario")) {
        try {
            const auto& s = find_scenario(e->value);
            cfg.scenario = s.name;
            cfg.n = s.n;
            eta_values = s.eta;
            xi_values = s.xi;
            cfg.sensing_radius = s.sensing_radius;
            eta_line = xi_line = e->line;
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, ex.what());
        }
    }

    if (const auto* e = get("N")) {
        const auto n = integer<long long>(*e, "N");
        if (n < 1) throw ConfigError(e->line, "N must be at least 1");
        cfg.n = static_cast<std::size_t>(n);
    } else if (cfg.scenario.empty()) {
        throw ConfigError(0, "missing required key 'N'");
    }

    if (const auto* e = get("eta")) {
        eta_values = number_list(*e, "eta");
        eta_line = e->line;
    }
    if (const auto* e = get("xi")) {
        xi_values = number_list(*e, "xi");
        xi_line = e->line;
    }
    cfg.eta = per_sensor(eta_values.value_or(std::vector<double>{1.0}), cfg.n, eta_line, "eta");
    cfg.xi = per_sensor(xi_values.value_or(std::vector<double>{1.0}), cfg.n, xi_line, "xi");
    for (double v : cfg.eta) {
        if (!(v > 0.0)) throw ConfigError(eta_line, "eta values must be positive");
    }
    for (double v : cfg.xi) {
        if (!(v > 0.0)) throw ConfigError(xi_line, "xi values must be positive");
    }

    if (const auto* e = get("Rs")) {
        cfg.sensing_radius = number(*e, "Rs");
        if (!(cfg.sensing_radius > 0.0)) throw ConfigError(e->line, "Rs must be positive");
    } else if (cfg.scenario.empty()) {
        throw ConfigError(0, "missing required key 'Rs'");
    }

    {
        Point lo{0.0, 0.0}, hi{1.0, 1.0};
        const auto* emin = get("region_min");
        const auto* emax = get("region_max");
        if (emin) lo = point(*emin, "region_min");
        if (emax) hi = point(*emax, "region_max");
        try {
            cfg.region = Region(lo, hi);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(emax ? emax->line : (emin ? emin->line : 0), ex.what());
        }
    }

    for (const char* key : {"grid_nx", "grid_ny"}) {
        if (const auto* e = get(key)) {
            const auto v = integer<long long>(*e, key);
            if (v < 1) throw ConfigError(e->line, std::string(key) + " must be at least 1");
            (std::string(key) == "grid_nx" ? cfg.grid_nx : cfg.grid_ny) = static_cast<std::size_t>(v);
        }
    }

    if (const auto* e = get("density")) {
        try {
            cfg.density = DensityField::parse(e->value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, ex.what());
        }
    }

    const auto* gamma = get("gamma");
    const auto* gamma_n = get("gamma_n");
    if (gamma && gamma_n) throw ConfigError(gamma_n->line, "'gamma' and 'gamma_n' are mutually exclusive");

    if (const auto* e = get("algorithm")) {
        try {
            cfg.algorithm = parse_algorithm(e->value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, ex.what());
        }
    } else {
        cfg.algorithm = gamma ? Algorithm::eml : gamma_n ? Algorithm::cml : Algorithm::lloyd;
    }
    const std::size_t algo_line = get("algorithm") ? get("algorithm")->line : 0;

    if (gamma) {
        if (cfg.algorithm != Algorithm::eml) {
            throw ConfigError(gamma->line, "budget/algorithm mismatch: total budget 'gamma' requires algorithm eml");
        }
        if (gamma->value == "unlimited" || gamma->value == "inf") {
            cfg.budget = Unlimited{};
        } else {
            const double g = number(*gamma, "gamma");
            if (g < 0.0) throw ConfigError(gamma->line, "gamma must be nonnegative");
            cfg.budget = TotalBudget{g};
        }
    } else if (gamma_n) {
        if (cfg.algorithm != Algorithm::cml) {
            throw ConfigError(gamma_n->line,
                              "budget/algorithm mismatch: per-sensor budget 'gamma_n' requires algorithm cml");
        }
        auto g = per_sensor(number_list(*gamma_n, "gamma_n"), cfg.n, gamma_n->line, "gamma_n");
        for (double v : g) {
            if (v < 0.0) throw ConfigError(gamma_n->line, "gamma_n values must be nonnegative");
        }
        cfg.budget = PerSensorBudget{std::move(g)};
    } else if (cfg.algorithm == Algorithm::cml) {
        throw ConfigError(algo_line, "missing required key 'gamma_n' for algorithm cml");
    }

    if (const auto* e = get("alpha")) {
        if (cfg.algorithm != Algorithm::lloyd_alpha) throw ConfigError(e->line, "'alpha' applies to lloyd_alpha only");
        cfg.alpha = number(*e, "alpha");
        if (cfg.alpha < 0.0 || cfg.alpha > 1.0) throw ConfigError(e->line, "alpha must lie in [0, 1]");
    } else if (cfg.algorithm == Algorithm::lloyd_alpha) {
        throw ConfigError(algo_line, "missing required key 'alpha' for algorithm lloyd_alpha");
    }

    if (const auto* e = get("iter_max")) {
        const auto v = integer<long long>(*e, "iter_max");
        if (v < 1) throw ConfigError(e->line, "iter_max must be at least 1");
        cfg.iter_max = static_cast<std::size_t>(v);
    }
    if (const auto* e = get("seed")) cfg.seed = integer<std::uint64_t>(*e, "seed");
    if (const auto* e = get("outdir")) cfg.outdir = e->value;
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        out += detail::format_short(v[k]);
    }
    return out;
}

}  // namespace

std::string describe_budget(const EnergyBudget& budget) {
    if (std::holds_alternative<Unlimited>(budget)) return "unlimited";
    if (const auto* t = std::get_if<TotalBudget>(&budget)) return "gamma=" + detail::format_short(t->gamma);
    const auto& g = std::get<PerSensorBudget>(budget).gammas;
    bool uniform = !g.empty();
    for (double v : g) uniform = uniform && v == g.front();
    if (uniform) return "gamma_n=" + detail::format_short(g.front());
    // ';' keeps the description a single CSV field.
    std::string out = "gamma_n=[";
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k) out += ';';
        out += detail::format_short(g[k]);
    }
    return out + "]";
}

std::string to_config_text(const ExperimentConfig& c) {
    using detail::format_short;
    std::ostringstream out;
    if (!c.scenario.empty()) out << "scenario = " << c.scenario << "\n";
    out << "region_min = " << format_short(c.region.min().x) << ", " << format_short(c.region.min().y) << "\n";
    out << "region_max = " << format_short(c.region.max().x) << ", " << format_short(c.region.max().y) << "\n";
    out << "grid_nx = " << c.grid_nx << "\n";
    out << "grid_ny = " << c.grid_ny << "\n";
    out << "N = " << c.n << "\n";
    out << "eta = " << join(c.eta) << "\n";
    out << "xi = " << join(c.xi) << "\n";
    out << "Rs = " << format_short(c.sensing_radius) << "\n";
    out << "density = " << c.density.to_string() << "\n";
    out << "algorithm = " << to_string(c.algorithm) << "\n";
    if (c.algorithm == Algorithm::lloyd_alpha) out << "alpha = " << format_short(c.alpha) << "\n";
    if (const auto* t = std::get_if<TotalBudget>(&c.budget)) out << "gamma = " << format_short(t->gamma) << "\n";
    if (const auto* p = std::get_if<PerSensorBudget>(&c.budget)) out << "gamma_n = " << join(p->gammas) << "\n";
    if (c.algorithm == Algorithm::eml && std::holds_alternative<Unlimited>(c.budget)) out << "gamma = unlimited\n";
    out << "iter_max = " << c.iter_max << "\n";
    out << "seed = " << c.seed << "\n";
    out << "outdir = " << c.outdir.string() << "\n";
    return out.str();
}

}  // namespace mwsn
