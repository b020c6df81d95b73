#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace wbe {

// A point or displacement in world coordinates, meters.
struct WorldPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

// Column/row index into the cell grid. i grows east, j grows north.
struct CellIndex {
    int i = 0;
    int j = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Rectangular search area discretized into square cells. Width and height
// must be exact integer multiples of the cell size.
class GridEnvironment {
public:
    GridEnvironment(double width_m, double height_m, double cell_size_m);

    double width_m() const { return width_m_; }
    double height_m() const { return height_m_; }
    double cell_size_m() const { return cell_size_m_; }
    int cols() const { return cols_; }
    int rows() const { return rows_; }
    int cell_count() const { return cols_ * rows_; }

    bool contains(const WorldPoint& p) const;
    bool contains(const CellIndex& c) const;

    // Row-major flat index, j * cols + i.
    int flat_index(const CellIndex& c) const { return c.j * cols_ + c.i; }
    CellIndex from_flat(int idx) const { return {idx % cols_, idx / cols_}; }

private:
    double width_m_;
    double height_m_;
    double cell_size_m_;
    int cols_;
    int rows_;
};

// The 8 compass directions, counter-clockwise from east. The numeric value
// times 45 degrees is the direction angle.
enum class Heading : int {
    E = 0,
    NE = 1,
    N = 2,
    NW = 3,
    W = 4,
    SW = 5,
    S = 6,
    SE = 7,
};

constexpr std::array<Heading, 8> kAllHeadings = {
    Heading::E, Heading::NE, Heading::N, Heading::NW,
    Heading::W, Heading::SW, Heading::S, Heading::SE};

// Unit vector (cos, sin) of the heading. Exact for cardinals, within
// 1e-12 of unit norm for diagonals.
WorldPoint heading_unit(Heading h);

double heading_angle_deg(Heading h);

const char* heading_name(Heading h);

// Parses a compass string such as "SE". Throws std::domain_error on
// anything else.
Heading parse_heading(const std::string& name);

// Snaps a continuous direction (degrees, CCW from east) to the nearest of
// the 8 compass headings. Exact midpoints go to the counter-clockwise
// neighbor.
Heading heading_from_angle_deg(double angle_deg);

// Downward-looking square camera footprint. The ground footprint is a
// closed axis-aligned square of side 2 * altitude * tan(half angle),
// centered under the vehicle.
class SensorFootprint {
public:
    SensorFootprint(double altitude_m, double fov_half_angle_deg);

    double altitude_m() const { return altitude_m_; }
    double fov_half_angle_deg() const { return fov_half_angle_deg_; }
    double side_m() const { return side_m_; }

    // Closed-boundary containment test of a ground point relative to the
    // vehicle's ground-projected position.
    bool covers(const WorldPoint& vehicle_ground, const WorldPoint& target) const;

private:
    double altitude_m_;
    double fov_half_angle_deg_;
    double side_m_;
};

// Maps a world point to the cell containing it. Points exactly on the max
// boundary belong to the last cell. Throws std::domain_error for points
// outside [0, width] x [0, height], naming the offending coordinate.
CellIndex world_to_cell(const WorldPoint& p, const GridEnvironment& env);

// Center of an in-bounds cell. Inverse of world_to_cell on cell centers.
WorldPoint cell_center(const CellIndex& c, const GridEnvironment& env);

// Chessboard distance between two cells.
inline int chebyshev_distance(const CellIndex& a, const CellIndex& b) {
    int di = a.i > b.i ? a.i - b.i : b.i - a.i;
    int dj = a.j > b.j ? a.j - b.j : b.j - a.j;
    return di > dj ? di : dj;
}

double euclidean_distance(const WorldPoint& a, const WorldPoint& b);

}  // namespace wbe
