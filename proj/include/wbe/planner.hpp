#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wbe/geometry.hpp"

namespace wbe {

// The five exploration weights for a search horizon of n cells. All five
// are exact integers with w5 > w1 > w2 > w3 > w4 = 1 and the gap
// identities w1 - w2 = n^3, w2 - w3 = n^2, w3 - w4 = n.
struct SectorWeights {
    std::int64_t n = 1;
    std::int64_t w1 = 0;  // along the reported heading
    std::int64_t w2 = 0;  // left of the heading
    std::int64_t w3 = 0;  // right of the heading
    std::int64_t w4 = 1;  // opposite the heading
    std::int64_t w5 = 0;  // the last known position itself

    friend bool operator==(const SectorWeights&, const SectorWeights&) = default;
};

// Position of a cell relative to a report: the origin cell itself or one
// of the four closed 90-degree cones around the reported heading.
// Declaration order is the fixed priority order, highest first.
enum class Sector {
    Origin,
    Forward,
    Left,
    Right,
    Rear,
};

const char* sector_name(Sector s);

// An observer's report of a survivor: last known position, heading, and
// when it was reported. survivor_id ties the report back to the simulated
// survivor (-1 when unknown).
struct SurvivorReport {
    int survivor_id = -1;
    WorldPoint last_known;
    Heading heading = Heading::E;
    double report_time_s = 0.0;
};

struct PlannerOptions {
    // When false the lateral priorities swap: the right cone takes w2 and
    // the left cone takes w3.
    bool left_before_right = true;
};

// Per-cell exploration weights for one survivor report.
class WeightMap {
public:
    WeightMap(const GridEnvironment& env, CellIndex origin, Heading heading,
              std::vector<std::int64_t> weights);

    const GridEnvironment& env() const { return env_; }
    CellIndex origin_cell() const { return origin_; }
    Heading heading() const { return heading_; }

    std::int64_t at(const CellIndex& c) const;
    const std::vector<std::int64_t>& values() const { return weights_; }

private:
    GridEnvironment env_;
    CellIndex origin_;
    Heading heading_;
    std::vector<std::int64_t> weights_;  // row-major
};

using PriorityList = std::vector<CellIndex>;

// Evaluates the weight equations for horizon n >= 1. Throws
// std::domain_error for n < 1.
SectorWeights compute_sector_weights(std::int64_t n);

// Number of cell steps from the origin cell to the farthest environment
// boundary (Chebyshev), never less than 1.
std::int64_t horizon_cells(const GridEnvironment& env, const CellIndex& origin);

// Classifies a cell relative to the report origin and heading. Cells on a
// cone boundary go to the higher-priority side. Exact for all 8 headings
// (pure integer arithmetic).
Sector classify_sector(const CellIndex& cell, const CellIndex& origin, Heading heading);

// Builds the full weight map for a report: w5 at the origin cell, then per
// sector a weight that starts at the sector base and steps down by n^2
// (forward), n (left), or 1 (right) per Chebyshev ring; the rear cone is
// flat at w4 = 1. Sector bands never overlap.
WeightMap build_weight_map(const GridEnvironment& env, const SurvivorReport& report,
                           const PlannerOptions& options = {});

// Orders a non-empty cell set for visiting: weight descending, then ring
// distance from the origin, then clockwise angle from the heading with the
// forward axis first, then row-major index. Deterministic total order; the
// result is a permutation of the input.
PriorityList prioritize_waypoints(const WeightMap& map, std::span<const CellIndex> cells);

}  // namespace wbe
