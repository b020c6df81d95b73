#include "wbe/partition.hpp"

#include <sstream>
#include <stdexcept>

namespace wbe {

PartitionMap::PartitionMap(const GridEnvironment& env, std::vector<WorldPoint> seeds,
                           std::vector<int> owners)
    : env_(env), seeds_(std::move(seeds)), owners_(std::move(owners)) {
    if (static_cast<int>(owners_.size()) != env_.cell_count()) {
        throw std::domain_error("owner map size does not match the grid");
    }
}

int PartitionMap::owner(const CellIndex& c) const {
    if (!env_.contains(c)) {
        std::ostringstream msg;
        msg << "cell (" << c.i << ", " << c.j << ") outside partition grid";
        throw std::domain_error(msg.str());
    }
    return owners_[env_.flat_index(c)];
}

std::vector<CellIndex> PartitionMap::cells_of(int seed_index) const {
    if (seed_index < 0 || seed_index >= seed_count()) {
        std::ostringstream msg;
        msg << "seed index " << seed_index << " outside [0, " << seed_count() << ")";
        throw std::domain_error(msg.str());
    }
    std::vector<CellIndex> cells;
    for (int j = 0; j < env_.rows(); ++j) {
        for (int i = 0; i < env_.cols(); ++i) {
            if (owners_[j * env_.cols() + i] == seed_index) {
                cells.push_back({i, j});
            }
        }
    }
    return cells;
}

bool PartitionMap::seeds_own_their_cells() const {
    for (int k = 0; k < seed_count(); ++k) {
        if (owner(world_to_cell(seeds_[k], env_)) != k) {
            return false;
        }
    }
    return true;
}

PartitionMap voronoi_partition(const GridEnvironment& env,
                               const std::vector<WorldPoint>& seeds) {
    if (seeds.empty()) {
        throw std::domain_error("voronoi partition requires at least one seed");
    }
    std::vector<CellIndex> seed_cells;
    seed_cells.reserve(seeds.size());
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (!env.contains(seeds[k])) {
            std::ostringstream msg;
            msg << "seed " << k << " at (" << seeds[k].x << ", " << seeds[k].y
                << ") outside the environment";
            throw std::domain_error(msg.str());
        }
        CellIndex cell = world_to_cell(seeds[k], env);
        for (std::size_t m = 0; m < seed_cells.size(); ++m) {
            if (seed_cells[m] == cell) {
                std::ostringstream msg;
                msg << "seeds " << m << " and " << k << " occupy the same cell ("
                    << cell.i << ", " << cell.j << ")";
                throw std::domain_error(msg.str());
            }
        }
        seed_cells.push_back(cell);
    }

    std::vector<int> owners(env.cell_count(), 0);
    for (int j = 0; j < env.rows(); ++j) {
        for (int i = 0; i < env.cols(); ++i) {
            WorldPoint center = cell_center({i, j}, env);
            int best = 0;
            double best_d2 = 0.0;
            for (std::size_t k = 0; k < seeds.size(); ++k) {
                double dx = center.x - seeds[k].x;
                double dy = center.y - seeds[k].y;
                double d2 = dx * dx + dy * dy;
                if (k == 0 || d2 < best_d2) {
                    best = static_cast<int>(k);
                    best_d2 = d2;
                }
            }
            owners[j * env.cols() + i] = best;
        }
    }
    return PartitionMap(env, seeds, std::move(owners));
}

}  // namespace wbe
