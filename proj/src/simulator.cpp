#include "wbe/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wbe {

namespace {

double clamp(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

class PlanTimer {
public:
    explicit PlanTimer(double& sink)
        : sink_(sink), start_(std::chrono::steady_clock::now()) {}
    ~PlanTimer() {
        auto elapsed = std::chrono::steady_clock::now() - start_;
        sink_ += std::chrono::duration<double>(elapsed).count();
    }

private:
    double& sink_;
    std::chrono::steady_clock::time_point start_;
};

// Moves an agent straight toward a target, at most speed*dt. Returns true
// when the agent snapped onto the target this tick.
bool advance_toward(WorldPoint& position, const WorldPoint& target, double step_m,
                    double& traveled) {
    double dx = target.x - position.x;
    double dy = target.y - position.y;
    double dist = std::sqrt(dx * dx + dy * dy);
    if (dist <= step_m) {
        position = target;
        traveled += dist;
        return true;
    }
    position.x += dx / dist * step_m;
    position.y += dy / dist * step_m;
    traveled += step_m;
    return false;
}

}  // namespace

const char* strategy_name(Strategy s) {
    return s == Strategy::Wbe ? "wbe" : "lawnmower";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "wbe") return Strategy::Wbe;
    if (name == "lawnmower") return Strategy::LawnmowerOnly;
    throw std::invalid_argument("unknown strategy '" + name + "' (expected wbe or lawnmower)");
}

const char* uav_mode_name(UavMode m) {
    switch (m) {
        case UavMode::Lawnmower: return "lawnmower";
        case UavMode::Wbe: return "wbe";
        case UavMode::ReturnHome: return "return_home";
        case UavMode::Done: return "done";
    }
    return "?";
}

const char* event_type_name(Event::Type t) {
    switch (t) {
        case Event::Type::Trigger: return "trigger";
        case Event::Type::Detection: return "detection";
        case Event::Type::CoverageComplete: return "coverage_complete";
        case Event::Type::Returned: return "returned";
    }
    return "?";
}

SimState init_sim(const ScenarioConfig& config, Strategy strategy) {
    validate_scenario(config);
    const GridEnvironment& env = config.env;

    std::vector<WorldPoint> seeds;
    seeds.reserve(config.uavs.size());
    for (const UavConfig& u : config.uavs) {
        seeds.push_back(u.start);
    }
    PartitionMap partition = voronoi_partition(env, seeds);
    if (!partition.seeds_own_their_cells()) {
        throw std::invalid_argument(
            "UAV starts are too close together: a start cell is owned by another UAV");
    }

    SimState state{config, strategy, partition, {}, {}, {}, {}, {}, 0};

    for (std::size_t k = 0; k < config.uavs.size(); ++k) {
        const UavConfig& cfg = config.uavs[k];
        UavAgent uav;
        uav.id = static_cast<int>(k);
        uav.start = cfg.start;
        uav.position = cfg.start;
        uav.altitude_m = cfg.altitude_m;
        uav.speed_mps = cfg.speed_mps;
        uav.footprint = uav_footprint(cfg);
        uav.mode = UavMode::Lawnmower;
        uav.partition_cells = partition.cells_of(static_cast<int>(k));
        uav.partition_mask.assign(env.cell_count(), 0);
        for (const CellIndex& c : uav.partition_cells) {
            uav.partition_mask[env.flat_index(c)] = 1;
        }
        uav.visited.assign(env.cell_count(), 0);
        {
            PlanTimer timer(uav.planning_time_s);
            CoveragePlan plan =
                lawnmower_path(uav.partition_cells, world_to_cell(cfg.start, env),
                               uav.footprint, env, config.planner.sweep_axis);
            uav.waypoint_queue.assign(plan.waypoints.begin(), plan.waypoints.end());
        }
        state.uavs.push_back(std::move(uav));
    }

    for (std::size_t k = 0; k < config.survivors.size(); ++k) {
        const SurvivorConfig& cfg = config.survivors[k];
        Survivor s;
        s.id = static_cast<int>(k);
        s.position = cfg.position;
        s.heading = cfg.heading;
        s.speed_mps = cfg.speed_mps;
        state.survivors.push_back(s);
    }

    for (std::size_t k = 0; k < config.observers.size(); ++k) {
        const ObserverConfig& cfg = config.observers[k];
        Observer o;
        o.id = static_cast<int>(k);
        o.position = cfg.position;
        o.radius_m = cfg.radius_m;
        o.reported.assign(config.survivors.size(), 0);
        state.observers.push_back(std::move(o));
    }

    state.trigger_fired.assign(config.scripted_triggers.size(), 0);
    return state;
}

std::vector<std::pair<int, SurvivorReport>> observer_check(
    std::vector<Observer>& observers, const std::vector<Survivor>& survivors,
    const PartitionMap& partition, double now) {
    std::vector<std::pair<int, SurvivorReport>> reports;
    for (Observer& obs : observers) {
        for (const Survivor& s : survivors) {
            if (obs.reported[s.id] || s.status != SurvivorStatus::Moving) {
                continue;
            }
            if (euclidean_distance(obs.position, s.position) > obs.radius_m) {
                continue;
            }
            obs.reported[s.id] = 1;
            SurvivorReport report;
            report.survivor_id = s.id;
            report.last_known = s.position;
            report.heading = s.heading;
            report.report_time_s = now;
            int uav = partition.owner(world_to_cell(s.position, partition.env()));
            reports.emplace_back(uav, report);
        }
    }
    return reports;
}

void apply_report(UavAgent& uav, const SurvivorReport& report,
                  const GridEnvironment& env, const PlannerConfig& planner) {
    PlanTimer timer(uav.planning_time_s);
    uav.mode = UavMode::Wbe;
    uav.active_report = report;

    WeightMap map = build_weight_map(env, report, {planner.left_before_right});
    CellIndex origin = map.origin_cell();

    std::vector<CellIndex> rest;
    rest.reserve(uav.partition_cells.size());
    for (const CellIndex& c : uav.partition_cells) {
        if (c == origin || uav.visited[env.flat_index(c)]) {
            continue;
        }
        rest.push_back(c);
    }

    uav.waypoint_queue.clear();
    if (uav.partition_mask[env.flat_index(origin)]) {
        uav.waypoint_queue.push_back(origin);
    }
    if (!rest.empty()) {
        PriorityList ordered = prioritize_waypoints(map, rest);
        uav.waypoint_queue.insert(uav.waypoint_queue.end(), ordered.begin(), ordered.end());
    }
}

std::vector<int> detection_check(const UavAgent& uav,
                                 const std::vector<Survivor>& survivors) {
    std::vector<int> detected;
    for (const Survivor& s : survivors) {
        if (s.status != SurvivorStatus::Moving) {
            continue;
        }
        if (uav.footprint.covers(uav.position, s.position)) {
            detected.push_back(s.id);
        }
    }
    return detected;
}

void step(SimState& state) {
    const GridEnvironment& env = state.config.env;
    double dt = state.dt();
    state.tick += 1;
    double now = state.time();

    // 1. Survivors advance (clamped to the environment).
    for (Survivor& s : state.survivors) {
        WorldPoint u = heading_unit(s.heading);
        s.position.x = clamp(s.position.x + u.x * s.speed_mps * dt, 0.0, env.width_m());
        s.position.y = clamp(s.position.y + u.y * s.speed_mps * dt, 0.0, env.height_m());
    }

    // 2. Triggers fire: physical observers first, then scripted replays.
    // Reports replan the routed UAV immediately; the lawnmower-only
    // strategy records the trigger but never applies it.
    std::vector<Event> tick_events;
    std::vector<std::pair<int, SurvivorReport>> reports =
        observer_check(state.observers, state.survivors, state.partition, now);
    std::size_t observer_count = reports.size();
    for (std::size_t k = 0; k < state.config.scripted_triggers.size(); ++k) {
        if (state.trigger_fired[k]) {
            continue;
        }
        const TriggerConfig& trig = state.config.scripted_triggers[k];
        if (trig.time_s > now) {
            continue;
        }
        state.trigger_fired[k] = 1;
        if (state.survivors[trig.survivor].status != SurvivorStatus::Moving) {
            continue;
        }
        SurvivorReport report;
        report.survivor_id = trig.survivor;
        report.last_known = trig.reported_position;
        report.heading = trig.reported_heading;
        report.report_time_s = now;
        int uav = state.partition.owner(world_to_cell(trig.reported_position, env));
        reports.emplace_back(uav, report);
    }
    for (std::size_t k = 0; k < reports.size(); ++k) {
        int uav_id = reports[k].first;
        const SurvivorReport& report = reports[k].second;
        UavAgent& uav = state.uavs[uav_id];
        bool apply = state.strategy == Strategy::Wbe &&
                     (uav.mode == UavMode::Lawnmower || uav.mode == UavMode::Wbe);
        if (apply) {
            apply_report(uav, report, env, state.config.planner);
        }
        Event e;
        e.type = Event::Type::Trigger;
        e.tick = state.tick;
        e.t = now;
        e.uav = uav_id;
        e.survivor = report.survivor_id;
        e.position = report.last_known;
        e.heading = report.heading;
        e.scripted = k >= observer_count;
        e.applied = apply;
        tick_events.push_back(e);
    }

    // 3. UAVs advance toward their current waypoint, one arrival per tick.
    for (UavAgent& uav : state.uavs) {
        if (uav.mode == UavMode::Done) {
            continue;
        }
        double step_m = uav.speed_mps * dt;
        if (uav.mode == UavMode::ReturnHome) {
            if (advance_toward(uav.position, uav.start, step_m, uav.distance_traveled_m)) {
                uav.arrived_home = true;
            }
            continue;
        }
        if (uav.waypoint_queue.empty()) {
            continue;
        }
        WorldPoint target = cell_center(uav.waypoint_queue.front(), env);
        if (advance_toward(uav.position, target, step_m, uav.distance_traveled_m)) {
            uav.visited[env.flat_index(uav.waypoint_queue.front())] = 1;
            uav.waypoint_queue.pop_front();
        }
    }

    // 4. Detections. Every airborne camera sees; opportunistic detections
    // mark the survivor located without changing the UAV's mission.
    std::vector<char> return_after_detection(state.uavs.size(), 0);
    for (UavAgent& uav : state.uavs) {
        std::vector<int> detected = detection_check(uav, state.survivors);
        for (int id : detected) {
            Survivor& s = state.survivors[id];
            s.status = SurvivorStatus::Located;
            s.located_time_s = now;
            s.located_tick = state.tick;
            if (!uav.first_detection_tick) {
                uav.first_detection_tick = state.tick;
            }
            Event e;
            e.type = Event::Type::Detection;
            e.tick = state.tick;
            e.t = now;
            e.uav = uav.id;
            e.survivor = id;
            e.position = s.position;
            tick_events.push_back(e);
            if (uav.mode == UavMode::Wbe && uav.active_report &&
                uav.active_report->survivor_id == id) {
                return_after_detection[uav.id] = 1;
            }
        }
    }

    // 5. Mode transitions.
    for (UavAgent& uav : state.uavs) {
        if (uav.mode == UavMode::Wbe) {
            if (return_after_detection[uav.id]) {
                uav.mode = UavMode::ReturnHome;
                uav.waypoint_queue.clear();
            } else if (uav.waypoint_queue.empty()) {
                // Searched every reachable cell without finding the
                // reported survivor.
                uav.mode = UavMode::ReturnHome;
                uav.incomplete_search = true;
            }
        } else if (uav.mode == UavMode::Lawnmower && uav.waypoint_queue.empty()) {
            uav.mode = UavMode::ReturnHome;
            Event e;
            e.type = Event::Type::CoverageComplete;
            e.tick = state.tick;
            e.t = now;
            e.uav = uav.id;
            tick_events.push_back(e);
        } else if (uav.mode == UavMode::ReturnHome && uav.arrived_home) {
            uav.mode = UavMode::Done;
            uav.arrived_home = false;
            Event e;
            e.type = Event::Type::Returned;
            e.tick = state.tick;
            e.t = now;
            e.uav = uav.id;
            tick_events.push_back(e);
        }
    }

    // 6. Append this tick's events.
    state.events.insert(state.events.end(), tick_events.begin(), tick_events.end());
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    SimState state = init_sim(config, options.strategy);

    RunResult result;
    result.dt_s = config.sim.dt_s;
    result.strategy = options.strategy;

    auto record = [&]() {
        if (!options.record_trajectories) {
            return;
        }
        double t = state.time();
        for (std::size_t k = 0; k < state.uavs.size(); ++k) {
            const UavAgent& u = state.uavs[k];
            result.uav_trajectories[k].push_back(
                {t, u.position.x, u.position.y, u.altitude_m, static_cast<int>(u.mode)});
        }
        for (std::size_t k = 0; k < state.survivors.size(); ++k) {
            const Survivor& s = state.survivors[k];
            result.survivor_trajectories[k].push_back(
                {t, s.position.x, s.position.y, 0.0, static_cast<int>(s.status)});
        }
    };

    if (options.record_trajectories) {
        result.uav_trajectories.resize(state.uavs.size());
        result.survivor_trajectories.resize(state.survivors.size());
    }
    record();

    auto all_done = [&]() {
        for (const UavAgent& u : state.uavs) {
            if (u.mode != UavMode::Done) {
                return false;
            }
        }
        return true;
    };

    while (state.tick < config.sim.max_steps && !all_done()) {
        step(state);
        record();
    }

    result.ticks = state.tick;
    result.completed = all_done();
    result.events = state.events;

    for (const UavAgent& u : state.uavs) {
        RunResult::UavMetrics m;
        m.id = u.id;
        m.steps_to_locate = u.first_detection_tick;
        m.distance_traveled_m = u.distance_traveled_m;
        m.planning_time_s = u.planning_time_s;
        m.incomplete_search = u.incomplete_search;
        m.final_position = u.position;
        result.uav_metrics.push_back(m);
    }
    for (const Survivor& s : state.survivors) {
        RunResult::SurvivorMetrics m;
        m.id = s.id;
        m.located = s.status == SurvivorStatus::Located;
        m.located_time_s = s.located_time_s;
        m.located_tick = s.located_tick;
        result.survivor_metrics.push_back(m);
    }
    for (const Event& e : state.events) {
        if (e.type == Event::Type::Trigger) {
            result.first_trigger_tick = e.tick;
            break;
        }
    }
    return result;
}

}  // namespace wbe
