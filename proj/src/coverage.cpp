#include "wbe/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wbe {

namespace {

// Core sweep over (major, minor) coordinates: major selects the track
// (row for SweepAxis::Rows), minor is the position within a track.
struct TrackCell {
    int major;
    int minor;
};

std::vector<TrackCell> sweep(const std::vector<TrackCell>& cells, TrackCell start,
                             int spacing, int major_count) {
    std::map<int, std::vector<int>> tracks;
    for (const TrackCell& c : cells) {
        tracks[c.major].push_back(c.minor);
    }
    for (auto& [major, minors] : tracks) {
        std::sort(minors.begin(), minors.end());
    }

    // Track visit order: away from the boundary nearer to the start track,
    // then back through the tracks skipped on the other side.
    int j0 = start.major;
    int dir = (j0 <= major_count - 1 - j0) ? 1 : -1;
    std::vector<int> order;
    for (int j = j0; j >= 0 && j < major_count; j += dir * spacing) {
        order.push_back(j);
    }
    for (int j = j0 - dir * spacing; j >= 0 && j < major_count; j -= dir * spacing) {
        order.push_back(j);
    }

    // First sweep begins at the end of the start run nearer to the start.
    const std::vector<int>& first = tracks.at(j0);
    auto it = std::lower_bound(first.begin(), first.end(), start.minor);
    std::size_t pos = static_cast<std::size_t>(it - first.begin());
    std::size_t run_lo = pos;
    while (run_lo > 0 && first[run_lo - 1] == first[run_lo] - 1) {
        --run_lo;
    }
    std::size_t run_hi = pos;
    while (run_hi + 1 < first.size() && first[run_hi + 1] == first[run_hi] + 1) {
        ++run_hi;
    }
    bool ascending = (start.minor - first[run_lo]) <= (first[run_hi] - start.minor);

    std::vector<TrackCell> out;
    out.reserve(cells.size());
    for (int major : order) {
        auto found = tracks.find(major);
        if (found == tracks.end()) {
            continue;
        }
        const std::vector<int>& minors = found->second;
        if (ascending) {
            for (int m : minors) out.push_back({major, m});
        } else {
            for (auto rit = minors.rbegin(); rit != minors.rend(); ++rit) {
                out.push_back({major, *rit});
            }
        }
        ascending = !ascending;
    }
    return out;
}

}  // namespace

int track_spacing_cells(const SensorFootprint& footprint, const GridEnvironment& env) {
    int spacing = static_cast<int>(std::floor(footprint.side_m() / env.cell_size_m()));
    return std::max(1, spacing);
}

CoveragePlan lawnmower_path(std::span<const CellIndex> cells, const CellIndex& start,
                            int spacing_cells, const GridEnvironment& env, SweepAxis axis) {
    if (cells.empty()) {
        throw std::domain_error("lawnmower path requires a non-empty cell set");
    }
    if (spacing_cells < 1) {
        throw std::domain_error("track spacing must be at least 1 cell");
    }
    bool start_in_set = false;
    for (const CellIndex& c : cells) {
        if (!env.contains(c)) {
            std::ostringstream msg;
            msg << "cell (" << c.i << ", " << c.j << ") outside the environment";
            throw std::domain_error(msg.str());
        }
        if (c == start) {
            start_in_set = true;
        }
    }
    if (!start_in_set) {
        std::ostringstream msg;
        msg << "start cell (" << start.i << ", " << start.j << ") not in the cell set";
        throw std::domain_error(msg.str());
    }

    bool by_rows = (axis == SweepAxis::Rows);
    std::vector<TrackCell> track_cells;
    track_cells.reserve(cells.size());
    for (const CellIndex& c : cells) {
        track_cells.push_back(by_rows ? TrackCell{c.j, c.i} : TrackCell{c.i, c.j});
    }
    TrackCell track_start = by_rows ? TrackCell{start.j, start.i} : TrackCell{start.i, start.j};
    int major_count = by_rows ? env.rows() : env.cols();

    std::vector<TrackCell> visited = sweep(track_cells, track_start, spacing_cells, major_count);

    CoveragePlan plan;
    plan.track_spacing_cells = spacing_cells;
    plan.waypoints.reserve(visited.size());
    for (const TrackCell& c : visited) {
        plan.waypoints.push_back(by_rows ? CellIndex{c.minor, c.major}
                                         : CellIndex{c.major, c.minor});
    }
    return plan;
}

CoveragePlan lawnmower_path(std::span<const CellIndex> cells, const CellIndex& start,
                            const SensorFootprint& footprint, const GridEnvironment& env,
                            SweepAxis axis) {
    return lawnmower_path(cells, start, track_spacing_cells(footprint, env), env, axis);
}

CoveragePlan remaining_coverage(const CoveragePlan& plan,
                                std::span<const CellIndex> visited) {
    CoveragePlan out;
    out.track_spacing_cells = plan.track_spacing_cells;
    for (const CellIndex& c : plan.waypoints) {
        bool seen = false;
        for (const CellIndex& v : visited) {
            if (v == c) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            out.waypoints.push_back(c);
        }
    }
    return out;
}

}  // namespace wbe
