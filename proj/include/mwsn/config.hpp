#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/relocation.hpp"

namespace mwsn {

/// Parse failure; line() is 1-based, or 0 for problems not tied to one line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct BuiltinScenario {
    std::string name;
    std::string description;
    std::size_t n = 0;
    std::vector<double> eta;
    std::vector<double> xi;
    double sensing_radius = 0.0;
};

/// mwsn1 (homogeneous) and mwsn2 (8 strong + 24 weak sensors).
const std::vector<BuiltinScenario>& builtin_scenarios();
const BuiltinScenario& find_scenario(const std::string& name);

struct ExperimentConfig {
    std::string scenario;  // empty when none was used
    Region region;
    std::size_t grid_nx = 256;
    std::size_t grid_ny = 256;
    std::size_t n = 0;
    std::vector<double> eta;
    std::vector<double> xi;
    double sensing_radius = 0.0;
    DensityField density;
    Algorithm algorithm = Algorithm::lloyd;
    double alpha = 1.0;
    EnergyBudget budget = Unlimited{};
    std::size_t iter_max = 100;
    std::uint64_t seed = 1;
    std::filesystem::path outdir = "out";

    std::vector<SensorParams> sensor_params() const;
    Grid grid() const { return Grid(region, grid_nx, grid_ny); }
};

/// Line-oriented `key = value` grammar with `#` comments. A `scenario` line is
/// expanded first; every other key then overrides it. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& config);

std::string describe_budget(const EnergyBudget& budget);

}  // namespace mwsn
