#pragma once

#include <span>
#include <vector>

#include "wbe/geometry.hpp"

namespace wbe {

enum class SweepAxis {
    Rows,
    Cols,
};

// Serpentine coverage waypoints over an arbitrary cell set.
struct CoveragePlan {
    std::vector<CellIndex> waypoints;
    int track_spacing_cells = 1;
};

// Number of rows one sensor sweep covers: max(1, floor(side / cell size)).
int track_spacing_cells(const SensorFootprint& footprint, const GridEnvironment& env);

// Boustrophedon sweep of the cell set, sampling every spacing-th row
// anchored at the start cell's row. The sweep first runs away from the
// grid boundary nearer to the start row, then returns for the rows on the
// other side. Within the first row the sweep begins at the end of the
// start cell's run nearer to the start; subsequent non-empty rows
// alternate direction. Non-contiguous runs in a row are taken in sweep
// order. Requires a non-empty set containing the start cell.
CoveragePlan lawnmower_path(std::span<const CellIndex> cells, const CellIndex& start,
                            int spacing_cells, const GridEnvironment& env,
                            SweepAxis axis = SweepAxis::Rows);

// Same, with spacing derived from the sensor footprint.
CoveragePlan lawnmower_path(std::span<const CellIndex> cells, const CellIndex& start,
                            const SensorFootprint& footprint, const GridEnvironment& env,
                            SweepAxis axis = SweepAxis::Rows);

// The plan filtered to cells not yet visited, original order preserved.
CoveragePlan remaining_coverage(const CoveragePlan& plan,
                                std::span<const CellIndex> visited);

}  // namespace wbe
