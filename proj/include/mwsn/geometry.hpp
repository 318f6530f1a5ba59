#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace mwsn {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
    friend Point operator*(const Point& p, double s) { return {s * p.x, s * p.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

// Displacements share the representation of positions.
using Vec2 = Point;

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double squared_norm(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Axis-aligned rectangle [min.x, max.x] x [min.y, max.y].
class Region {
public:
    Region() : Region({0.0, 0.0}, {1.0, 1.0}) {}
    Region(Point min, Point max);

    const Point& min() const { return min_; }
    const Point& max() const { return max_; }
    double width() const { return max_.x - min_.x; }
    double height() const { return max_.y - min_.y; }
    double area() const { return width() * height(); }
    bool contains(const Point& p) const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    Point min_;
    Point max_;
};

/// Uniform midpoint-rule grid over a region. Cells are indexed row-major:
/// index = j * nx + i, with i along x and j along y.
class Grid {
public:
    Grid(const Region& region, std::size_t nx, std::size_t ny);

    const Region& region() const { return region_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return nx_ * ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double cell_area() const { return dx_ * dy_; }

    double center_x(std::size_t i) const { return region_.min().x + (static_cast<double>(i) + 0.5) * dx_; }
    double center_y(std::size_t j) const { return region_.min().y + (static_cast<double>(j) + 0.5) * dy_; }
    Point center(std::size_t cell) const { return {center_x(cell % nx_), center_y(cell / nx_)}; }

private:
    Region region_;
    std::size_t nx_;
    std::size_t ny_;
    double dx_;
    double dy_;
};

/// Throws std::invalid_argument when either resolution is zero.
Grid build_grid(const Region& region, std::size_t nx, std::size_t ny);

/// Midpoint quadrature: sum of g(center) * cell area in row-major order.
/// Throws std::domain_error if g is non-finite at any center.
double integrate(const Grid& grid, const std::function<double(const Point&)>& g);

struct UniformDensity {
    double value = 1.0;
    friend bool operator==(const UniformDensity&, const UniformDensity&) = default;
};

/// Unnormalized isotropic bump: weight * exp(-|w - center|^2 / (2 sigma^2)).
struct GaussianDensity {
    Point center;
    double sigma = 1.0;
    double weight = 1.0;
    friend bool operator==(const GaussianDensity&, const GaussianDensity&) = default;
};

struct MixtureDensity {
    std::vector<GaussianDensity> components;
    friend bool operator==(const MixtureDensity&, const MixtureDensity&) = default;
};

using DensitySpec = std::variant<UniformDensity, GaussianDensity, MixtureDensity>;

/// Nonnegative importance field f(w). Not normalized.
class DensityField {
public:
    DensityField() : DensityField(UniformDensity{}) {}
    explicit DensityField(DensitySpec spec);

    static DensityField uniform() { return DensityField(UniformDensity{}); }
    static DensityField gaussian(Point center, double sigma) { return DensityField(GaussianDensity{center, sigma, 1.0}); }

    double operator()(const Point& w) const;
    const DensitySpec& spec() const { return spec_; }

    /// Config-file form: "uniform", "gaussian cx cy sigma",
    /// or "mixture w cx cy sigma, w cx cy sigma, ...".
    std::string to_string() const;
    static DensityField parse(const std::string& text);

private:
    DensitySpec spec_;
};

/// Density sampled once per grid cell: mass[c] = f(center_c) * cell area.
struct DensityGrid {
    Grid grid;
    DensityField field;
    std::vector<double> mass;
    double total_mass = 0.0;
};

/// Throws std::domain_error if f is negative or non-finite anywhere on the
/// grid, or if the total mass is not positive.
DensityGrid sample_density(const Grid& grid, const DensityField& field);

}  // namespace mwsn
