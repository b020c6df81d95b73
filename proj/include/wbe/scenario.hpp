#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbe/coverage.hpp"
#include "wbe/geometry.hpp"
#include "wbe/planner.hpp"

namespace wbe {

struct UavConfig {
    WorldPoint start;
    double speed_mps = 2.0;
    double altitude_m = 2.0;
    double fov_half_angle_deg = 45.0;
};

struct SurvivorConfig {
    WorldPoint position;
    Heading heading = Heading::E;
    double speed_mps = 0.5;
};

struct ObserverConfig {
    WorldPoint position;
    double radius_m = 1.0;
};

// A deterministic replay of an observer report at a fixed time.
struct TriggerConfig {
    double time_s = 0.0;
    int survivor = 0;
    WorldPoint reported_position;
    Heading reported_heading = Heading::E;
};

struct SimConfig {
    double dt_s = 0.1;
    std::int64_t max_steps = 100000;
    std::uint64_t rng_seed = 0;
};

struct PlannerConfig {
    bool left_before_right = true;
    SweepAxis sweep_axis = SweepAxis::Rows;
};

struct ScenarioConfig {
    GridEnvironment env;
    std::vector<UavConfig> uavs;
    std::vector<SurvivorConfig> survivors;
    std::vector<ObserverConfig> observers;
    std::vector<TriggerConfig> scripted_triggers;
    SimConfig sim;
    PlannerConfig planner;
};

// Builds a config from a parsed JSON document. Unknown or missing keys,
// wrong types, and out-of-range values raise std::invalid_argument naming
// the key path.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

// Reads and parses a scenario file. Parse errors carry the byte offset
// reported by the JSON parser.
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Cross-field checks beyond per-key parsing: survivors, observers, and
// trigger positions in-bounds; trigger survivor indices valid; UAV starts
// in distinct cells.
void validate_scenario(const ScenarioConfig& config);

SensorFootprint uav_footprint(const UavConfig& uav);

}  // namespace wbe
