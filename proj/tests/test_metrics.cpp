#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mwsn/metrics.hpp"
#include "support.hpp"

using namespace mwsn;

namespace {

Fleet single(Point p, double eta = 1.0, double rs = 0.2) {
    return Fleet::at_rest({SensorParams{eta, 1.0, rs}}, {p});
}

}  // namespace

TEST_CASE("distortion of one sensor matches the analytic second moment") {
    const auto dg = testing::uniform_unit(256);
    auto fleet = single({0.5, 0.5});
    auto part = partition_fleet(fleet, dg);
    CHECK(std::abs(distortion(fleet, part, dg).total - 1.0 / 6.0) < 1e-5);
    CHECK(std::abs(part.distortion() - 1.0 / 6.0) < 1e-5);

    fleet = single({0.0, 0.0});
    part = partition_fleet(fleet, dg);
    CHECK(std::abs(distortion(fleet, part, dg).total - 2.0 / 3.0) < 1e-5);
}

TEST_CASE("local distortions sum to the total, and the fused pass agrees") {
    Xoshiro256 rng(21);
    const auto dg = sample_density(Grid(Region({0, 0}, {2, 2}), 64, 64), DensityField::gaussian({1.2, 0.7}, 0.5));
    for (int t = 0; t < 10; ++t) {
        const auto fleet = testing::random_fleet(rng, dg.grid.region(), {12, true, true});
        const auto part = partition_fleet(fleet, dg);
        const auto terms = distortion(fleet, part, dg);
        double sum = 0.0;
        for (double d : terms.local) sum += d;
        CHECK(terms.total == sum);
        CHECK(terms.total >= 0.0);
        CHECK(part.distortion() == doctest::Approx(terms.total).epsilon(1e-12));
    }
}

TEST_CASE("parallel-axis identity on random heterogeneous instances") {
    Xoshiro256 rng(22);
    const auto dg = sample_density(Grid(Region({0, 0}, {2.3, 2.3}), 96, 96), DensityField::uniform());
    for (int t = 0; t < 32; ++t) {
        const auto fleet = testing::random_fleet(rng, dg.grid.region(), {32, true, true});
        const auto part = partition_fleet(fleet, dg);
        const double direct = distortion(fleet, part, dg).total;
        const auto pa = distortion_parallel_axis(fleet, part, dg);
        CHECK(std::abs(direct - pa.total()) <= 1e-10 * direct);
    }
}

TEST_CASE("energy is xi times displacement") {
    Fleet f = Fleet::at_rest({SensorParams{1.0, 2.0, 0.2}, SensorParams{1.0, 1.0, 0.2}}, {{0.1, 0.1}, {0.5, 0.5}});
    auto e = energy(f);
    CHECK(e.total == 0.0);
    CHECK(e.per_sensor == std::vector<double>{0.0, 0.0});

    f.current[0] = {0.4, 0.5};
    e = energy(f);
    CHECK(e.per_sensor[0] == doctest::Approx(1.0));
    CHECK(e.total == doctest::Approx(1.0));
    CHECK(e.max_individual == doctest::Approx(1.0));
}

TEST_CASE("energy is translation invariant") {
    Xoshiro256 rng(23);
    for (int t = 0; t < 20; ++t) {
        auto f = testing::random_fleet(rng, testing::unit_square());
        const auto before = energy(f);
        const Vec2 shift{10 * rng.uniform01() - 5, 10 * rng.uniform01() - 5};
        for (std::size_t n = 0; n < f.size(); ++n) {
            f.initial[n] += shift;
            f.current[n] += shift;
        }
        const auto after = energy(f);
        CHECK(after.total == doctest::Approx(before.total).epsilon(1e-12));
    }
}

TEST_CASE("coverage of a single disk") {
    const Grid g = build_grid(testing::unit_square(), 256, 256);
    CHECK(std::abs(area_coverage(single({0.5, 0.5}, 1.0, 0.2), g) - std::numbers::pi * 0.04) < 1e-3);
    // eta = 4 halves the radius.
    CHECK(std::abs(area_coverage(single({0.5, 0.5}, 4.0, 0.2), g) - std::numbers::pi * 0.01) < 1e-3);
    CHECK(area_coverage(single({0.5, 0.5}, 1.0, 2.0), g) == 1.0);
    CHECK(area_coverage(single({0.0, 0.0}, 1.0, 1.5), g) == 1.0);
}

TEST_CASE("coverage grows with the sensing radius") {
    Xoshiro256 rng(24);
    const Grid g = build_grid(testing::unit_square(), 64, 64);
    for (int t = 0; t < 10; ++t) {
        auto f = testing::random_fleet(rng, g.region(), {10, true, true});
        double prev = 0.0;
        for (double rs : {0.0125, 0.05, 0.1, 0.2, 0.4, 0.8}) {
            for (auto& p : f.params) p.sensing_radius = rs;
            const double c = area_coverage(f, g);
            CHECK(c >= prev);
            CHECK(c <= 1.0);
            prev = c;
        }
        CHECK(area_coverage(f, g, {3}) == area_coverage(f, g, {1}));
    }
}

TEST_CASE("lifetime budgets") {
    CHECK(lifetime_budget(std::vector<double>{5, 3}, 1.0, 2.0) == std::vector<double>{3, 1});
    CHECK(lifetime_budget(std::vector<double>{5, 3}, 1.0, 0.0) == std::vector<double>{5, 3});
    CHECK(lifetime_budget(std::vector<double>{1}, 1.0, 2.0) == std::vector<double>{0});
    CHECK_THROWS_AS(lifetime_budget(std::vector<double>{1}, -1.0, 2.0), std::invalid_argument);
}

TEST_CASE("evaluate bundles the report") {
    const auto dg = testing::uniform_unit(32);
    Fleet f = Fleet::at_rest({SensorParams{}, SensorParams{}}, {{0.25, 0.5}, {0.75, 0.5}});
    f.current[1] = {0.7, 0.5};
    const auto part = partition_fleet(f, dg);
    const auto r = evaluate(f, part, dg);
    CHECK(r.distortion == doctest::Approx(r.local_distortion[0] + r.local_distortion[1]));
    CHECK(r.total_energy == doctest::Approx(0.05));
    CHECK(r.max_individual_energy == doctest::Approx(0.05));
    CHECK(r.coverage > 0.0);
}
