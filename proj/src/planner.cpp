#include "wbe/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace wbe {

namespace {

// Rotates an integer displacement into the heading's frame: the result of
// applying k = heading index times the matrix [[1, 1], [-1, 1]] (a -45
// degree rotation scaled by sqrt 2). Angles relative to the heading are
// preserved, so cone membership tests stay in exact integer arithmetic.
struct FrameVec {
    std::int64_t x;
    std::int64_t y;
};

FrameVec to_heading_frame(int di, int dj, Heading heading) {
    std::int64_t x = di;
    std::int64_t y = dj;
    int k = static_cast<int>(heading);
    for (int step = 0; step < k; ++step) {
        std::int64_t nx = x + y;
        std::int64_t ny = y - x;
        x = nx;
        y = ny;
    }
    return {x, y};
}

// Rank of the clockwise angle from the heading axis: 0 on the forward
// axis, 1 in the clockwise half, 2 on the rear axis, 3 in the
// counter-clockwise half. Within ranks 1 and 3 a negative cross product
// means strictly smaller clockwise angle.
int angle_rank(const FrameVec& v) {
    if (v.x == 0 && v.y == 0) return 0;
    if (v.y == 0) return v.x > 0 ? 0 : 2;
    return v.y < 0 ? 1 : 3;
}

std::int64_t cross(const FrameVec& a, const FrameVec& b) {
    return a.x * b.y - a.y * b.x;
}

}  // namespace

const char* sector_name(Sector s) {
    switch (s) {
        case Sector::Origin: return "origin";
        case Sector::Forward: return "forward";
        case Sector::Left: return "left";
        case Sector::Right: return "right";
        case Sector::Rear: return "rear";
    }
    return "?";
}

SectorWeights compute_sector_weights(std::int64_t n) {
    if (n < 1) {
        std::ostringstream msg;
        msg << "horizon must be a positive integer, got " << n;
        throw std::domain_error(msg.str());
    }
    SectorWeights w;
    w.n = n;
    w.w4 = 1;
    w.w1 = w.w4 * n * n * n + n * n + n + 1;
    if ((w.w1 - 1) % n != 0 || (w.w1 - n - 1) % (n * n) != 0) {
        throw std::domain_error("weight equations produced a non-integer quotient");
    }
    w.w2 = (w.w1 - 1) / n;
    w.w3 = (w.w1 - n - 1) / (n * n);
    w.w5 = w.w1 * n + 1;
    return w;
}

std::int64_t horizon_cells(const GridEnvironment& env, const CellIndex& origin) {
    if (!env.contains(origin)) {
        std::ostringstream msg;
        msg << "origin cell (" << origin.i << ", " << origin.j << ") outside grid "
            << env.cols() << " x " << env.rows();
        throw std::domain_error(msg.str());
    }
    int d = std::max(std::max(origin.i, env.cols() - 1 - origin.i),
                     std::max(origin.j, env.rows() - 1 - origin.j));
    return std::max(1, d);
}

Sector classify_sector(const CellIndex& cell, const CellIndex& origin, Heading heading) {
    if (cell == origin) {
        return Sector::Origin;
    }
    FrameVec v = to_heading_frame(cell.i - origin.i, cell.j - origin.j, heading);
    std::int64_t ax = std::abs(v.x);
    std::int64_t ay = std::abs(v.y);
    // Cone boundaries (|x| == |y| in the heading frame) fall to the
    // higher-priority sector by check order.
    if (v.x >= ay) return Sector::Forward;
    if (v.y >= ax) return Sector::Left;
    if (-v.y >= ax) return Sector::Right;
    return Sector::Rear;
}

WeightMap::WeightMap(const GridEnvironment& env, CellIndex origin, Heading heading,
                     std::vector<std::int64_t> weights)
    : env_(env), origin_(origin), heading_(heading), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != env_.cell_count()) {
        throw std::domain_error("weight map size does not match the grid");
    }
}

std::int64_t WeightMap::at(const CellIndex& c) const {
    if (!env_.contains(c)) {
        std::ostringstream msg;
        msg << "cell (" << c.i << ", " << c.j << ") outside weight map grid";
        throw std::domain_error(msg.str());
    }
    return weights_[env_.flat_index(c)];
}

WeightMap build_weight_map(const GridEnvironment& env, const SurvivorReport& report,
                           const PlannerOptions& options) {
    CellIndex origin = world_to_cell(report.last_known, env);
    std::int64_t n = horizon_cells(env, origin);
    SectorWeights w = compute_sector_weights(n);

    std::int64_t left_base = options.left_before_right ? w.w2 : w.w3;
    std::int64_t right_base = options.left_before_right ? w.w3 : w.w2;
    std::int64_t left_step = options.left_before_right ? n : 1;
    std::int64_t right_step = options.left_before_right ? 1 : n;

    std::vector<std::int64_t> values(env.cell_count(), w.w4);
    for (int j = 0; j < env.rows(); ++j) {
        for (int i = 0; i < env.cols(); ++i) {
            CellIndex c{i, j};
            std::int64_t d = chebyshev_distance(c, origin);
            d = std::clamp<std::int64_t>(d, 1, n);
            std::int64_t value = w.w4;
            switch (classify_sector(c, origin, report.heading)) {
                case Sector::Origin: value = w.w5; break;
                case Sector::Forward: value = w.w1 - (d - 1) * n * n; break;
                case Sector::Left: value = left_base - (d - 1) * left_step; break;
                case Sector::Right: value = right_base - (d - 1) * right_step; break;
                case Sector::Rear: value = w.w4; break;
            }
            values[j * env.cols() + i] = value;
        }
    }
    return WeightMap(env, origin, report.heading, std::move(values));
}

PriorityList prioritize_waypoints(const WeightMap& map, std::span<const CellIndex> cells) {
    if (cells.empty()) {
        throw std::domain_error("cannot prioritize an empty cell set");
    }
    const GridEnvironment& env = map.env();
    CellIndex origin = map.origin_cell();
    Heading heading = map.heading();

    struct Key {
        std::int64_t weight;
        int ring;
        FrameVec v;
        int rank;
        int row_major;
        CellIndex cell;
    };
    std::vector<Key> keys;
    keys.reserve(cells.size());
    for (const CellIndex& c : cells) {
        FrameVec v = to_heading_frame(c.i - origin.i, c.j - origin.j, heading);
        keys.push_back({map.at(c), chebyshev_distance(c, origin), v, angle_rank(v),
                        env.flat_index(c), c});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.ring != b.ring) return a.ring < b.ring;
        if (a.rank != b.rank) return a.rank < b.rank;
        if (a.rank == 1 || a.rank == 3) {
            std::int64_t x = cross(a.v, b.v);
            if (x != 0) return x < 0;
        }
        return a.row_major < b.row_major;
    });

    PriorityList out;
    out.reserve(keys.size());
    for (const Key& k : keys) {
        out.push_back(k.cell);
    }
    return out;
}

}  // namespace wbe
