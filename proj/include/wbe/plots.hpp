#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "wbe/geometry.hpp"

namespace wbe {

struct PlotStyle {
    int width_px = 800;
    int height_px = 600;
};

// Parsed trajectories.csv content.
struct TrajectoryData {
    struct Row {
        double t = 0.0;
        bool uav = true;
        int id = 0;
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;
        std::string mode;
    };
    std::vector<Row> rows;
};

// Parses the t,agent_kind,agent_id,x,y,z,mode CSV. Throws
// std::invalid_argument naming a missing column; an empty file (no data
// rows) is an error.
TrajectoryData parse_trajectories_csv(std::istream& in);

// Parses a grid of integers, one CSV line per row.
struct GridData {
    int cols = 0;
    int rows = 0;
    std::vector<long long> values;  // row-major
};
GridData parse_grid_csv(std::istream& in);

// All renderers emit a single self-contained SVG document with no
// external references and no nondeterministic content.

// Per-cell color on a monotone dark-is-heavy ramp.
std::string render_weight_heatmap_svg(const GridData& grid, const PlotStyle& style = {});

// Owner regions in distinct colors, optional seed markers (world
// coordinates; cell_size scales them onto the grid).
std::string render_partition_svg(const GridData& grid,
                                 const std::vector<WorldPoint>& seeds, double cell_size_m,
                                 const PlotStyle& style = {});

// Top-down per-agent polylines with start and end markers.
std::string render_trajectory_xy_svg(const TrajectoryData& data, const PlotStyle& style = {});

// Fixed-angle isometric projection of the 3-D trajectories.
std::string render_trajectory3d_svg(const TrajectoryData& data, const PlotStyle& style = {});

// Two stacked panels: x versus time and y versus time for every agent.
std::string render_position_vs_time_svg(const TrajectoryData& data,
                                        const PlotStyle& style = {});

}  // namespace wbe
