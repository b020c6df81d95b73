#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "wbe/coverage.hpp"
#include "wbe/geometry.hpp"
#include "wbe/partition.hpp"
#include "wbe/planner.hpp"
#include "wbe/scenario.hpp"

namespace wbe {

enum class Strategy {
    Wbe,
    LawnmowerOnly,
};

const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

enum class UavMode {
    Lawnmower,
    Wbe,
    ReturnHome,
    Done,
};

const char* uav_mode_name(UavMode m);

enum class SurvivorStatus {
    Moving,
    Located,
};

struct Survivor {
    int id = 0;
    WorldPoint position;
    Heading heading = Heading::E;
    double speed_mps = 0.0;
    SurvivorStatus status = SurvivorStatus::Moving;
    std::optional<double> located_time_s;
    std::optional<std::int64_t> located_tick;
};

struct Observer {
    int id = 0;
    WorldPoint position;
    double radius_m = 1.0;
    std::vector<char> reported;  // per-survivor once-only flags
};

struct UavAgent {
    int id = 0;
    WorldPoint start;
    WorldPoint position;
    double altitude_m = 2.0;
    double speed_mps = 2.0;
    SensorFootprint footprint{2.0, 45.0};
    UavMode mode = UavMode::Lawnmower;
    std::deque<CellIndex> waypoint_queue;
    std::vector<CellIndex> partition_cells;
    std::vector<char> partition_mask;  // row-major over the grid
    std::vector<char> visited;         // row-major over the grid
    std::optional<SurvivorReport> active_report;
    double distance_traveled_m = 0.0;
    double planning_time_s = 0.0;
    std::optional<std::int64_t> first_detection_tick;
    bool incomplete_search = false;
    bool arrived_home = false;  // set by the motion phase, consumed by transitions
};

struct Event {
    enum class Type {
        Trigger,
        Detection,
        CoverageComplete,
        Returned,
    };
    Type type;
    std::int64_t tick = 0;
    double t = 0.0;
    int uav = -1;
    int survivor = -1;
    WorldPoint position;                 // trigger payload
    Heading heading = Heading::E;        // trigger payload
    bool scripted = false;
    bool applied = false;
};

const char* event_type_name(Event::Type t);

// Full world state. time is always tick * dt, never accumulated.
struct SimState {
    ScenarioConfig config;
    Strategy strategy = Strategy::Wbe;
    PartitionMap partition;
    std::vector<UavAgent> uavs;
    std::vector<Survivor> survivors;
    std::vector<Observer> observers;
    std::vector<char> trigger_fired;  // per scripted trigger
    std::vector<Event> events;
    std::int64_t tick = 0;

    double dt() const { return config.sim.dt_s; }
    double time() const { return static_cast<double>(tick) * config.sim.dt_s; }
};

struct TrajectoryPoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    int mode = 0;  // UavMode for UAVs, SurvivorStatus for survivors
};

struct RunResult {
    double dt_s = 0.1;
    std::int64_t ticks = 0;
    bool completed = true;
    Strategy strategy = Strategy::Wbe;
    std::vector<std::vector<TrajectoryPoint>> uav_trajectories;
    std::vector<std::vector<TrajectoryPoint>> survivor_trajectories;
    std::vector<Event> events;

    struct UavMetrics {
        int id = 0;
        std::optional<std::int64_t> steps_to_locate;
        double distance_traveled_m = 0.0;
        double planning_time_s = 0.0;
        bool incomplete_search = false;
        WorldPoint final_position;
    };
    struct SurvivorMetrics {
        int id = 0;
        bool located = false;
        std::optional<double> located_time_s;
        std::optional<std::int64_t> located_tick;
    };
    std::vector<UavMetrics> uav_metrics;
    std::vector<SurvivorMetrics> survivor_metrics;
    std::optional<std::int64_t> first_trigger_tick;
};

struct RunOptions {
    Strategy strategy = Strategy::Wbe;
    bool record_trajectories = true;
};

// Builds the initial state: Voronoi partition from the UAV starts (each
// start cell must be owned by its own UAV) and one lawnmower plan per UAV
// over its partition.
SimState init_sim(const ScenarioConfig& config, Strategy strategy = Strategy::Wbe);

// Advances one tick. Fixed phase order: survivors move, triggers fire
// (observers then scripted; reports replan the routed UAV immediately),
// UAVs move one waypoint step, detections, queue/arrival mode transitions,
// event append. Runs are bit-reproducible.
void step(SimState& state);

// Emits a report for every (observer, survivor) pair within radius that
// has not reported yet, carrying the survivor's current position and
// heading, routed to the UAV owning the survivor's cell. Marks pairs
// reported.
std::vector<std::pair<int, SurvivorReport>> observer_check(
    std::vector<Observer>& observers, const std::vector<Survivor>& survivors,
    const PartitionMap& partition, double now);

// Switches the UAV to weight-based exploration for the report: the
// reported cell first (when inside the UAV's partition), then every
// unvisited partition cell in priority order. A report during Wbe replans
// the same way.
void apply_report(UavAgent& uav, const SurvivorReport& report,
                  const GridEnvironment& env, const PlannerConfig& planner);

// Ids of survivors inside the UAV's closed footprint square and still
// moving.
std::vector<int> detection_check(const UavAgent& uav,
                                 const std::vector<Survivor>& survivors);

// Runs a scenario to completion (all UAVs done) or max_steps. Identical
// config and options give identical results.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace wbe
