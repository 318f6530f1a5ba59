#include <string>

#include "doctest.h"
#include "mwsn/config.hpp"

using namespace mwsn;

namespace {

std::size_t error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    FAIL("expected a ConfigError");
    return 0;
}

}  // namespace

TEST_CASE("scenario expansion with a total budget") {
    const auto c = parse_config("scenario = mwsn1\ngamma = 8\nseed = 7\n");
    CHECK(c.scenario == "mwsn1");
    CHECK(c.algorithm == Algorithm::eml);
    CHECK(c.budget == EnergyBudget{TotalBudget{8.0}});
    CHECK(c.n == 32);
    CHECK(c.seed == 7);
    CHECK(c.sensing_radius == 0.2);
    CHECK(c.eta == std::vector<double>(32, 1.0));
    CHECK(c.xi == std::vector<double>(32, 1.0));
    CHECK(c.iter_max == 100);
}

TEST_CASE("heterogeneous scenario") {
    const auto c = parse_config("scenario = mwsn2\ngamma_n = 0.4\n");
    CHECK(c.algorithm == Algorithm::cml);
    CHECK(c.n == 32);
    CHECK(c.sensing_radius == 0.3);
    CHECK(c.eta[0] == 1.0);
    CHECK(c.eta[8] == 2.0);
    CHECK(c.xi[7] == 3.0);
    CHECK(c.xi[31] == 1.0);
    CHECK(c.budget == EnergyBudget{PerSensorBudget{std::vector<double>(32, 0.4)}});
    const auto params = c.sensor_params();
    CHECK(params[8].eta == 2.0);
    CHECK(params[8].sensing_radius == 0.3);
}

TEST_CASE("explicit keys override the scenario") {
    const auto c = parse_config("scenario = mwsn1\nRs = 0.25\nregion_max = 2.5, 2\ngrid_nx = 64\niter_max = 12\n");
    CHECK(c.sensing_radius == 0.25);
    CHECK(c.region.max() == Point{2.5, 2.0});
    CHECK(c.grid_nx == 64);
    CHECK(c.grid_ny == 256);
    CHECK(c.iter_max == 12);
    CHECK(c.algorithm == Algorithm::lloyd);
    CHECK(c.budget == EnergyBudget{Unlimited{}});
}

TEST_CASE("standalone config") {
    const auto c = parse_config(
        "# three sensors\n"
        "N = 3\n"
        "eta = 1, 2, 1\n"
        "xi = 2   # broadcast\n"
        "Rs = 0.1\n"
        "density = gaussian 0.5 0.5 0.2\n"
        "algorithm = lloyd_alpha\n"
        "alpha = 0.5\n"
        "outdir = results/a\n");
    CHECK(c.n == 3);
    CHECK(c.eta == std::vector<double>{1, 2, 1});
    CHECK(c.xi == std::vector<double>{2, 2, 2});
    CHECK(c.alpha == 0.5);
    CHECK(c.outdir == "results/a");
    CHECK(c.density.spec() == DensitySpec{GaussianDensity{{0.5, 0.5}, 0.2, 1.0}});
}

TEST_CASE("unlimited total budget") {
    CHECK(parse_config("scenario = mwsn1\ngamma = unlimited\n").budget == EnergyBudget{Unlimited{}});
    CHECK(parse_config("scenario = mwsn1\nalgorithm = eml\n").budget == EnergyBudget{Unlimited{}});
}

TEST_CASE("errors name the offending line") {
    CHECK(error_line("scenario = mwsn1\nN = 0\n") == 2);
    CHECK(error_line("scenario = mwsn1\nalgorithm = cml\ngamma = 8\n") == 3);
    CHECK(error_line("scenario = mwsn1\n\nfoo = 1\n") == 3);
    CHECK(error_line("scenario = mwsn1\ngamma = 8x\n") == 2);
    CHECK(error_line("scenario = mwsn1\nseed = 1\nseed = 2\n") == 3);
    CHECK(error_line("N = 3\nRs = 0.1\neta = 1, 2\n") == 3);
    CHECK(error_line("scenario = nope\n") == 1);
    CHECK(error_line("scenario = mwsn1\nalpha = 0.5\n") == 2);
    CHECK(error_line("scenario = mwsn1\nalgorithm = lloyd_alpha\nalpha = 1.5\n") == 3);
    CHECK(error_line("scenario = mwsn1\ngamma = -1\n") == 2);
    CHECK(error_line("scenario = mwsn1\njust words\n") == 2);
    CHECK(error_line("scenario = mwsn1\nregion_max = 0, 1\n") == 2);
    CHECK_THROWS_WITH_AS(parse_config("scenario = mwsn1\nfoo = 1\n"), doctest::Contains("line 2"), ConfigError);
}

TEST_CASE("missing required keys") {
    CHECK_THROWS_AS(parse_config("Rs = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("N = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario = mwsn1\nalgorithm = cml\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario = mwsn1\nalgorithm = lloyd_alpha\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("canonical text round-trips") {
    for (const char* text : {"scenario = mwsn2\ngamma_n = 0.4\nseed = 9\nregion_max = 2.57911, 2.57911\n",
                             "scenario = mwsn1\ngamma = 8\ndensity = mixture 1 0.2 0.3 0.1, 2 1 1 0.5\n",
                             "N = 2\nRs = 0.3\neta = 1, 0.5\nalgorithm = lloyd_alpha\nalpha = 0.25\n"}) {
        const auto a = parse_config(text);
        const auto b = parse_config(to_config_text(a));
        CHECK(b.region == a.region);
        CHECK(b.grid_nx == a.grid_nx);
        CHECK(b.grid_ny == a.grid_ny);
        CHECK(b.n == a.n);
        CHECK(b.eta == a.eta);
        CHECK(b.xi == a.xi);
        CHECK(b.sensing_radius == a.sensing_radius);
        CHECK(b.density.spec() == a.density.spec());
        CHECK(b.algorithm == a.algorithm);
        CHECK(b.alpha == a.alpha);
        CHECK(b.budget == a.budget);
        CHECK(b.iter_max == a.iter_max);
        CHECK(b.seed == a.seed);
        CHECK(b.outdir == a.outdir);
        CHECK(to_config_text(b) == to_config_text(a));
    }
}

TEST_CASE("budget descriptions") {
    CHECK(describe_budget(Unlimited{}) == "unlimited");
    CHECK(describe_budget(TotalBudget{8}) == "gamma=8");
    CHECK(describe_budget(PerSensorBudget{{0.4, 0.4}}) == "gamma_n=0.4");
    CHECK(describe_budget(PerSensorBudget{{0.5, 1}}) == "gamma_n=[0.5;1]");
}
