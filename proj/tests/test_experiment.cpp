#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mwsn/experiment.hpp"
#include "mwsn/verify.hpp"

using namespace mwsn;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(const std::string& extra, std::uint64_t seed = 1) {
    return parse_config("scenario = mwsn1\nregion_max = 2.2, 2.2\ngrid_nx = 64\ngrid_ny = 64\niter_max = 25\nseed = " +
                        std::to_string(seed) + "\n" + extra);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mwsn_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("deployment is seeded and reproducible") {
    const auto a = init_random_deployment(small(""));
    const auto b = init_random_deployment(small(""));
    const auto c = init_random_deployment(small("", 2));
    CHECK(a.initial == b.initial);
    CHECK(a.initial != c.initial);
    CHECK(a.current == a.initial);
    for (const auto& p : a.initial) CHECK(small("").region.contains(p));
}

TEST_CASE("deployment is uniform over the region") {
    // Pearson chi-square on a 10x10 binning of 1e5 draws; 134.6416 is the
    // 0.99 quantile with 99 degrees of freedom.
    auto cfg = parse_config("N = 100000\nRs = 0.1\nregion_min = -1, 2\nregion_max = 3, 4\nseed = 5\n");
    const auto fleet = init_random_deployment(cfg);
    std::vector<double> bins(100, 0.0);
    for (const auto& p : fleet.initial) {
        const auto i = static_cast<std::size_t>((p.x + 1.0) / 4.0 * 10);
        const auto j = static_cast<std::size_t>((p.y - 2.0) / 2.0 * 10);
        bins[std::min<std::size_t>(j, 9) * 10 + std::min<std::size_t>(i, 9)] += 1.0;
    }
    const double expected = 1000.0;
    double stat = 0.0;
    for (double o : bins) stat += (o - expected) * (o - expected) / expected;
    CHECK(stat < 134.6416);
}

TEST_CASE("run_experiment writes the three artifacts") {
    auto cfg = small("gamma = 8\n");
    cfg.outdir = scratch("artifacts");
    const auto art = run_experiment(cfg);
    REQUIRE(fs::exists(art.trace_csv));
    REQUIRE(fs::exists(art.deployment_svg));
    REQUIRE(fs::exists(art.summary_txt));

    const auto csv = slurp(art.trace_csv);
    CHECK(csv.substr(0, csv.find('\n')) == kTraceHeader);
    const auto rows = count(csv, "\n") - 1;
    CHECK(rows == art.trace.records.size());
    CHECK(rows <= 25);
    CHECK(art.trace.records.back().total_energy <= 8.0 * (1 + 1e-9));

    const auto svg = slurp(art.deployment_svg);
    CHECK(count(svg, "class=\"initial\"") == 32);
    CHECK(count(svg, "class=\"final\"") == 32);
    CHECK(count(svg, "class=\"path\"") == 32);

    const auto summary = slurp(art.summary_txt);
    CHECK(summary.find("gamma=8") != std::string::npos);
    fs::remove_all(cfg.outdir);
}

TEST_CASE("run_experiment reports unwritable output") {
    auto cfg = small("");
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    cfg.outdir = blocker / "sub";
    CHECK_THROWS_AS(run_experiment(cfg), std::runtime_error);
    fs::remove(blocker);
}

TEST_CASE("per-sensor budgets hold for every sensor") {
    const auto cfg = parse_config(
        "scenario = mwsn2\nregion_max = 2.6, 2.6\ngrid_nx = 64\ngrid_ny = 64\niter_max = 25\ngamma_n = 0.4\n");
    const auto trace = run_configured(cfg);
    for (std::size_t n = 0; n < cfg.n; ++n) {
        const double e = cfg.xi[n] * distance(trace.final_fleet.current[n], trace.final_fleet.initial[n]);
        CHECK(e <= 0.4 * (1 + 1e-9));
    }
}

TEST_CASE("unlimited EML and Lloyd produce identical traces") {
    const auto a = format_trace_csv(run_configured(small("gamma = unlimited\n")));
    const auto b = format_trace_csv(run_configured(small("algorithm = lloyd\n")));
    CHECK(a == b);
}

TEST_CASE("traces do not depend on the worker count") {
    const auto cfg = small("gamma = 4\n");
    const auto one = format_trace_csv(run_configured(cfg, {{1}, false}));
    CHECK(one == format_trace_csv(run_configured(cfg, {{1}, false})));
    CHECK(one == format_trace_csv(run_configured(cfg, {{4}, false})));
    CHECK(one == format_trace_csv(run_configured(cfg, {{0}, false})));
}

TEST_CASE("compare orders rows and respects budgets") {
    std::vector<ExperimentConfig> configs{small("gamma = 8\n"), small("gamma = 2\n"), small("algorithm = lloyd\n"),
                                          small("gamma_n = 0.4\n")};
    const auto rows = compare(configs);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].algorithm == Algorithm::cml);
    CHECK(rows[1].algorithm == Algorithm::eml);
    CHECK(rows[1].budget == "gamma=2");
    CHECK(rows[2].budget == "gamma=8");
    CHECK(rows[3].algorithm == Algorithm::lloyd);
    CHECK(rows[1].total_energy <= 2.0 * (1 + 1e-9));
    CHECK(rows[2].total_energy <= 8.0 * (1 + 1e-9));
    CHECK(rows[0].max_individual_distance <= 0.4 * (1 + 1e-9));

    const auto csv = format_comparison_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == kComparisonHeader);
    CHECK(count(csv, "\n") == 5);

    CHECK_THROWS_AS(compare({small("gamma = 8\n")}), std::invalid_argument);
    CHECK_THROWS_AS(compare({small("gamma = 8\n"), small("gamma = 2\n", 2)}), std::invalid_argument);
}

TEST_CASE("verification passes on replayed runs") {
    for (const char* extra : {"gamma = 4\n", "gamma_n = 0.3\n", "algorithm = lloyd\n",
                              "algorithm = lloyd_alpha\nalpha = 0.5\n"}) {
        CAPTURE(extra);
        auto cfg = small(extra);
        cfg.iter_max = 8;
        VerifyOptions opt;
        opt.perturbation_trials = 50;
        const auto report = verify_run(cfg, {}, opt);
        CHECK(report.iterations >= 1);
        CHECK_MESSAGE(report.passed(), report.format());
    }
}

TEST_CASE("verification flags a corrupted iteration") {
    auto cfg = small("gamma = 4\n");
    cfg.iter_max = 6;
    auto positions = replay(cfg);
    REQUIRE(positions.size() >= 4);
    positions[3][0] = positions[3][0] + Vec2{0.3, 0.3};
    VerifyOptions opt;
    opt.perturbation_trials = 50;
    const auto report = verify_positions(cfg, positions, opt);
    CHECK_FALSE(report.passed());
    bool located = false;
    for (const auto& c : report.checks) {
        if (!c.passed) located = located || c.failed_iteration == 3;
    }
    CHECK(located);
    CHECK(report.format().find("FAIL") != std::string::npos);
}

TEST_CASE("calibration inverts mean initial coverage") {
    auto cfg = small("");
    cfg.grid_nx = cfg.grid_ny = 48;
    const double side = calibrate_region_side(cfg, 0.5, 1, 5);
    CHECK(mean_initial_coverage(cfg, side, 1, 5) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(mean_initial_coverage(cfg, side * 1.2, 1, 5) < 0.5);
}
