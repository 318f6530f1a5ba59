#include "mwsn/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "text_util.hpp"

namespace mwsn {

Region::Region(Point min, Point max) : min_(min), max_(max) {
    if (!std::isfinite(min.x) || !std::isfinite(min.y) || !std::isfinite(max.x) || !std::isfinite(max.y)) {
        throw std::invalid_argument("region corners must be finite");
    }
    if (!(max.x > min.x) || !(max.y > min.y)) {
        throw std::invalid_argument("region max corner must exceed min corner in both coordinates");
    }
}

bool Region::contains(const Point& p) const {
    return p.x >= min_.x && p.x <= max_.x && p.y >= min_.y && p.y <= max_.y;
}

Grid::Grid(const Region& region, std::size_t nx, std::size_t ny)
    : region_(region), nx_(nx), ny_(ny), dx_(0.0), dy_(0.0) {
    if (nx == 0 || ny == 0) throw std::invalid_argument("grid resolution must be positive");
    dx_ = region.width() / static_cast<double>(nx);
    dy_ = region.height() / static_cast<double>(ny);
}

Grid build_grid(const Region& region, std::size_t nx, std::size_t ny) { return Grid(region, nx, ny); }

double integrate(const Grid& grid, const std::function<double(const Point&)>& g) {
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.center_y(j);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double v = g({grid.center_x(i), y});
            if (!std::isfinite(v)) throw std::domain_error("integrand is not finite at a grid center");
            sum += v;
        }
    }
    return sum * grid.cell_area();
}

namespace {

double gaussian_value(const GaussianDensity& g, const Point& w) {
    return g.weight * std::exp(-squared_norm(w - g.center) / (2.0 * g.sigma * g.sigma));
}

void validate(const GaussianDensity& g) {
    if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) throw std::invalid_argument("gaussian sigma must be positive");
    if (!(g.weight >= 0.0) || !std::isfinite(g.weight)) throw std::invalid_argument("gaussian weight must be nonnegative");
    if (!std::isfinite(g.center.x) || !std::isfinite(g.center.y)) throw std::invalid_argument("gaussian center must be finite");
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

DensityField::DensityField(DensitySpec spec) : spec_(std::move(spec)) {
    std::visit(overloaded{
                   [](const UniformDensity& u) {
                       if (!(u.value > 0.0) || !std::isfinite(u.value)) {
                           throw std::invalid_argument("uniform density must be positive");
                       }
                   },
                   [](const GaussianDensity& g) { validate(g); },
                   [](const MixtureDensity& m) {
                       if (m.components.empty()) throw std::invalid_argument("mixture density needs components");
                       for (const auto& g : m.components) validate(g);
                   },
               },
               spec_);
}

double DensityField::operator()(const Point& w) const {
    return std::visit(overloaded{
                          [](const UniformDensity& u) { return u.value; },
                          [&](const GaussianDensity& g) { return gaussian_value(g, w); },
                          [&](const MixtureDensity& m) {
                              double s = 0.0;
                              for (const auto& g : m.components) s += gaussian_value(g, w);
                              return s;
                          },
                      },
                      spec_);
}

std::string DensityField::to_string() const {
    using detail::format_short;
    return std::visit(overloaded{
                          [](const UniformDensity& u) {
                              return u.value == 1.0 ? std::string("uniform") : "uniform " + format_short(u.value);
                          },
                          [](const GaussianDensity& g) {
                              return "gaussian " + format_short(g.center.x) + " " + format_short(g.center.y) + " " +
                                     format_short(g.sigma);
                          },
                          [](const MixtureDensity& m) {
                              std::string out = "mixture";
                              for (std::size_t k = 0; k < m.components.size(); ++k) {
                                  const auto& g = m.components[k];
                                  out += (k == 0 ? " " : ", ");
                                  out += format_short(g.weight) + " " + format_short(g.center.x) + " " +
                                         format_short(g.center.y) + " " + format_short(g.sigma);
                              }
                              return out;
                          },
                      },
                      spec_);
}

namespace {

std::vector<double> parse_numbers(std::string_view text, const std::string& what) {
    std::vector<double> out;
    for (auto tok : detail::split_ws(text)) {
        const auto v = detail::parse_double(tok);
        if (!v) throw std::invalid_argument("malformed number '" + std::string(tok) + "' in " + what);
        out.push_back(*v);
    }
    return out;
}

}  // namespace

DensityField DensityField::parse(const std::string& text) {
    const auto body = detail::trim(text);
    const auto space = body.find_first_of(" \t");
    const auto kind = body.substr(0, space);
    const auto rest = space == std::string_view::npos ? std::string_view{} : body.substr(space + 1);

    if (kind == "uniform") {
        const auto nums = parse_numbers(rest, "uniform density");
        if (nums.size() > 1) throw std::invalid_argument("uniform density takes at most one value");
        return DensityField(UniformDensity{nums.empty() ? 1.0 : nums[0]});
    }
    if (kind == "gaussian") {
        const auto nums = parse_numbers(rest, "gaussian density");
        if (nums.size() != 3) throw std::invalid_argument("gaussian density expects: gaussian cx cy sigma");
        return DensityField(GaussianDensity{{nums[0], nums[1]}, nums[2], 1.0});
    }
    if (kind == "mixture") {
        MixtureDensity m;
        for (auto part : detail::split(rest, ',')) {
            const auto nums = parse_numbers(part, "mixture density");
            if (nums.size() != 4) throw std::invalid_argument("mixture components expect: weight cx cy sigma");
            m.components.push_back({{nums[1], nums[2]}, nums[3], nums[0]});
        }
        return DensityField(std::move(m));
    }
    throw std::invalid_argument("unknown density kind '" + std::string(kind) + "'");
}

DensityGrid sample_density(const Grid& grid, const DensityField& field) {
    DensityGrid out{grid, field, {}, 0.0};
    out.mass.resize(grid.size());
    const double area = grid.cell_area();
    std::size_t c = 0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.center_y(j);
        for (std::size_t i = 0; i < grid.nx(); ++i, ++c) {
            const double f = field({grid.center_x(i), y});
            if (!std::isfinite(f) || f < 0.0) throw std::domain_error("density must be finite and nonnegative");
            out.mass[c] = f * area;
            out.total_mass += out.mass[c];
        }
    }
    if (!(out.total_mass > 0.0)) throw std::domain_error("density has no mass over the region");
    return out;
}

}  // namespace mwsn
