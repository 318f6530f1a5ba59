#pragma once

#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/partition.hpp"
#include "mwsn/rng.hpp"

namespace mwsn::testing {

inline Region unit_square() { return Region({0.0, 0.0}, {1.0, 1.0}); }

inline DensityGrid uniform_unit(std::size_t res) { return sample_density(Grid(unit_square(), res, res), DensityField::uniform()); }

struct RandomFleetOptions {
    std::size_t n = 8;
    bool heterogeneous = true;
    bool displaced = true;  // current differs from initial
};

/// Random fleet inside `region`: eta in [0.5, 2], xi in [0.5, 3] when heterogeneous.
inline Fleet random_fleet(Xoshiro256& rng, const Region& region, RandomFleetOptions opt = {}) {
    auto draw = [&] {
        return Point{region.min().x + rng.uniform01() * region.width(), region.min().y + rng.uniform01() * region.height()};
    };
    Fleet f;
    for (std::size_t k = 0; k < opt.n; ++k) {
        SensorParams s;
        if (opt.heterogeneous) {
            s.eta = 0.5 + 1.5 * rng.uniform01();
            s.xi = 0.5 + 2.5 * rng.uniform01();
        }
        s.sensing_radius = 0.2;
        f.params.push_back(s);
        f.initial.push_back(draw());
    }
    f.current = f.initial;
    if (opt.displaced) {
        for (auto& p : f.current) p = draw();
    }
    return f;
}

}  // namespace mwsn::testing
