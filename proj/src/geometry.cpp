#include "wbe/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wbe {

namespace {

constexpr double kPi = 3.14159265358979323846;

int exact_cell_count(double extent_m, double cell_size_m, const char* axis) {
    double ratio = extent_m / cell_size_m;
    double rounded = std::round(ratio);
    double tol = 1e-9 * std::max(1.0, ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > tol) {
        std::ostringstream msg;
        msg << "environment " << axis << " " << extent_m
            << " m is not a positive integer multiple of cell size "
            << cell_size_m << " m";
        throw std::domain_error(msg.str());
    }
    return static_cast<int>(rounded);
}

}  // namespace

GridEnvironment::GridEnvironment(double width_m, double height_m, double cell_size_m)
    : width_m_(width_m), height_m_(height_m), cell_size_m_(cell_size_m) {
    if (!(width_m > 0.0) || !(height_m > 0.0) || !(cell_size_m > 0.0)) {
        throw std::domain_error("environment dimensions and cell size must be positive");
    }
    cols_ = exact_cell_count(width_m, cell_size_m, "width");
    rows_ = exact_cell_count(height_m, cell_size_m, "height");
}

bool GridEnvironment::contains(const WorldPoint& p) const {
    return p.x >= 0.0 && p.x <= width_m_ && p.y >= 0.0 && p.y <= height_m_;
}

bool GridEnvironment::contains(const CellIndex& c) const {
    return c.i >= 0 && c.i < cols_ && c.j >= 0 && c.j < rows_;
}

WorldPoint heading_unit(Heading h) {
    // Exact values; diagonals share one sqrt(0.5) constant so symmetric
    // displacements compare bit-equal.
    static const double d = std::sqrt(0.5);
    switch (h) {
        case Heading::E: return {1.0, 0.0};
        case Heading::NE: return {d, d};
        case Heading::N: return {0.0, 1.0};
        case Heading::NW: return {-d, d};
        case Heading::W: return {-1.0, 0.0};
        case Heading::SW: return {-d, -d};
        case Heading::S: return {0.0, -1.0};
        case Heading::SE: return {d, -d};
    }
    throw std::domain_error("invalid heading value");
}

double heading_angle_deg(Heading h) {
    return 45.0 * static_cast<int>(h);
}

const char* heading_name(Heading h) {
    switch (h) {
        case Heading::E: return "E";
        case Heading::NE: return "NE";
        case Heading::N: return "N";
        case Heading::NW: return "NW";
        case Heading::W: return "W";
        case Heading::SW: return "SW";
        case Heading::S: return "S";
        case Heading::SE: return "SE";
    }
    throw std::domain_error("invalid heading value");
}

Heading parse_heading(const std::string& name) {
    for (Heading h : kAllHeadings) {
        if (name == heading_name(h)) {
            return h;
        }
    }
    throw std::domain_error("unknown heading '" + name + "' (expected one of E, NE, N, NW, W, SW, S, SE)");
}

Heading heading_from_angle_deg(double angle_deg) {
    if (!std::isfinite(angle_deg)) {
        throw std::domain_error("heading angle must be finite");
    }
    double wrapped = std::fmod(angle_deg, 360.0);
    if (wrapped < 0.0) {
        wrapped += 360.0;
    }
    // floor(a/45 + 1/2) sends an exact midpoint (22.5 + k*45) up to the
    // counter-clockwise neighbor.
    int idx = static_cast<int>(std::floor(wrapped / 45.0 + 0.5)) % 8;
    return static_cast<Heading>(idx);
}

SensorFootprint::SensorFootprint(double altitude_m, double fov_half_angle_deg)
    : altitude_m_(altitude_m), fov_half_angle_deg_(fov_half_angle_deg) {
    if (!(altitude_m > 0.0)) {
        throw std::domain_error("sensor altitude must be positive");
    }
    if (!(fov_half_angle_deg > 0.0) || !(fov_half_angle_deg < 90.0)) {
        throw std::domain_error("sensor FOV half angle must be in (0, 90) degrees");
    }
    // tan of 45 degrees is exactly 1; the radian conversion would lose the
    // last bit and shrink the footprint below its closed boundary.
    double tangent = fov_half_angle_deg == 45.0
                         ? 1.0
                         : std::tan(fov_half_angle_deg * kPi / 180.0);
    side_m_ = 2.0 * altitude_m * tangent;
}

bool SensorFootprint::covers(const WorldPoint& vehicle_ground, const WorldPoint& target) const {
    double half = side_m_ / 2.0;
    return std::abs(target.x - vehicle_ground.x) <= half &&
           std::abs(target.y - vehicle_ground.y) <= half;
}

CellIndex world_to_cell(const WorldPoint& p, const GridEnvironment& env) {
    if (!(p.x >= 0.0) || !(p.x <= env.width_m())) {
        std::ostringstream msg;
        msg << "x coordinate " << p.x << " outside [0, " << env.width_m() << "]";
        throw std::domain_error(msg.str());
    }
    if (!(p.y >= 0.0) || !(p.y <= env.height_m())) {
        std::ostringstream msg;
        msg << "y coordinate " << p.y << " outside [0, " << env.height_m() << "]";
        throw std::domain_error(msg.str());
    }
    int i = static_cast<int>(std::floor(p.x / env.cell_size_m()));
    int j = static_cast<int>(std::floor(p.y / env.cell_size_m()));
    // Points on the max boundary belong to the last cell.
    if (i >= env.cols()) i = env.cols() - 1;
    if (j >= env.rows()) j = env.rows() - 1;
    return {i, j};
}

WorldPoint cell_center(const CellIndex& c, const GridEnvironment& env) {
    if (!env.contains(c)) {
        std::ostringstream msg;
        msg << "cell index (" << c.i << ", " << c.j << ") outside grid "
            << env.cols() << " x " << env.rows();
        throw std::domain_error(msg.str());
    }
    return {(c.i + 0.5) * env.cell_size_m(), (c.j + 0.5) * env.cell_size_m()};
}

double euclidean_distance(const WorldPoint& a, const WorldPoint& b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace wbe
