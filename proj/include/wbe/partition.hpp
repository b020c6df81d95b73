#pragma once

#include <vector>

#include "wbe/geometry.hpp"

namespace wbe {

// Assignment of every grid cell to its nearest seed (Euclidean distance
// between cell center and seed, ties to the lowest seed index).
class PartitionMap {
public:
    PartitionMap(const GridEnvironment& env, std::vector<WorldPoint> seeds,
                 std::vector<int> owners);

    const GridEnvironment& env() const { return env_; }
    const std::vector<WorldPoint>& seeds() const { return seeds_; }
    int seed_count() const { return static_cast<int>(seeds_.size()); }

    int owner(const CellIndex& c) const;
    const std::vector<int>& owners() const { return owners_; }

    // All cells owned by one seed, row-major order. Throws on a bad index.
    std::vector<CellIndex> cells_of(int seed_index) const;

    // True when the cell containing each seed is owned by that seed. Holds
    // for well-separated seeds; callers that require it (the simulator)
    // must check.
    bool seeds_own_their_cells() const;

private:
    GridEnvironment env_;
    std::vector<WorldPoint> seeds_;
    std::vector<int> owners_;  // row-major
};

// Computes the nearest-seed partition of the grid. Requires at least one
// seed, all seeds in-bounds, and no two seeds in the same cell; violations
// raise std::domain_error naming the seed.
PartitionMap voronoi_partition(const GridEnvironment& env,
                               const std::vector<WorldPoint>& seeds);

}  // namespace wbe
