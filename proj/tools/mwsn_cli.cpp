// Command-line driver: run, verify and compare relocation experiments.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwsn/config.hpp"
#include "mwsn/experiment.hpp"
#include "mwsn/verify.hpp"

namespace {

int cmd_run(const std::string& path, const std::string& outdir, unsigned threads) {
    auto config = mwsn::load_config(path);
    if (!outdir.empty()) config.outdir = outdir;
    const auto art = mwsn::run_experiment(config, {{threads}, false});
    std::cout << mwsn::format_summary(config, art.trace);
    std::cout << "wrote " << art.trace_csv.string() << ", " << art.deployment_svg.string() << ", "
              << art.summary_txt.string() << "\n";
    return 0;
}

int cmd_verify(const std::string& path, unsigned threads, int trials) {
    const auto config = mwsn::load_config(path);
    mwsn::VerifyOptions options;
    options.perturbation_trials = trials;
    const auto report = mwsn::verify_run(config, {{threads}, false}, options);
    std::cout << report.format();
    return report.passed() ? 0 : 1;
}

int cmd_compare(const std::vector<std::string>& paths, const std::string& output, unsigned threads) {
    std::vector<mwsn::ExperimentConfig> configs;
    for (const auto& p : paths) configs.push_back(mwsn::load_config(p));
    const auto csv = mwsn::format_comparison_csv(mwsn::compare(configs, {{threads}, false}));
    if (output.empty()) {
        std::cout << csv;
        return 0;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out || !(out << csv)) {
        std::cerr << "error: cannot write " << output << "\n";
        return 1;
    }
    return 0;
}

int cmd_scenarios() {
    for (const auto& s : mwsn::builtin_scenarios()) std::cout << s.name << "  " << s.description << "\n";
    return 0;
}

int cmd_calibrate(const std::string& scenario, double target, std::size_t seeds, std::size_t grid) {
    auto config = mwsn::parse_config("scenario = " + scenario + "\n");
    config.grid_nx = config.grid_ny = grid;
    const double side = mwsn::calibrate_region_side(config, target, 1, seeds);
    std::cout << "region_max = " << side << ", " << side << "\n";
    std::cout << "# mean initial coverage over seeds 1.." << seeds << ": "
              << mwsn::mean_initial_coverage(config, side, 1, seeds) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-constrained mobile sensor relocation"};
    app.require_subcommand(1);

    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for grid passes (0 = all cores)");

    std::string run_config, run_outdir;
    auto* run = app.add_subcommand("run", "Run one experiment and write trace.csv, deployment.svg, summary.txt");
    run->add_option("config", run_config, "Config file")->required();
    run->add_option("--outdir", run_outdir, "Override the config's output directory");

    std::string verify_config;
    int trials = 200;
    auto* verify = app.add_subcommand("verify", "Replay a run and check optimality and feasibility per iteration");
    verify->add_option("config", verify_config, "Config file")->required();
    verify->add_option("--trials", trials, "Perturbation trials per iteration");

    std::vector<std::string> compare_configs;
    std::string compare_output;
    auto* cmp = app.add_subcommand("compare", "Run several configs and tabulate final metrics");
    cmp->add_option("configs", compare_configs, "Config files")->required();
    cmp->add_option("-o,--output", compare_output, "Write the CSV here instead of stdout");

    auto* scenario = app.add_subcommand("scenario", "Built-in scenarios");
    scenario->require_subcommand(1);
    auto* list = scenario->add_subcommand("list", "List built-in scenarios");

    std::string cal_scenario = "mwsn1";
    double cal_target = 0.53;
    std::size_t cal_seeds = 20, cal_grid = 128;
    auto* calibrate = app.add_subcommand("calibrate", "Find the square region side giving a target initial coverage");
    calibrate->add_option("scenario", cal_scenario, "Scenario name");
    calibrate->add_option("--target", cal_target, "Mean initial coverage");
    calibrate->add_option("--seeds", cal_seeds, "Seeds averaged (starting at 1)");
    calibrate->add_option("--grid", cal_grid, "Grid resolution per axis");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_config, run_outdir, threads);
        if (*verify) return cmd_verify(verify_config, threads, trials);
        if (*cmp) return cmd_compare(compare_configs, compare_output, threads);
        if (*list) return cmd_scenarios();
        if (*calibrate) return cmd_calibrate(cal_scenario, cal_target, cal_seeds, cal_grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
