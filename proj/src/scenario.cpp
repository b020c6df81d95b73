#include "wbe/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

namespace wbe {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(path, "unknown key '" + item.key() + "'");
        }
    }
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path, std::string("missing required key '") + key + "'");
    }
    return *it;
}

double get_number(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number()) {
        fail(path + "." + key, "expected a number");
    }
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path, const char* key,
                     double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    return get_number(obj, path, key);
}

std::int64_t get_integer(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number_integer()) {
        fail(path + "." + key, "expected an integer");
    }
    return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        fail(path + "." + key, "expected a boolean");
    }
    return v.get<bool>();
}

WorldPoint get_point(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path + "." + key, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Heading get_heading(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_string()) {
        fail(path + "." + key, "expected a compass string such as \"SE\"");
    }
    try {
        return parse_heading(v.get<std::string>());
    } catch (const std::domain_error& e) {
        fail(path + "." + key, e.what());
    }
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc) {
    check_keys(doc, "scenario",
               {"environment", "uavs", "survivors", "observers", "scripted_triggers",
                "sim", "planner"});

    const json& env_obj = require(doc, "scenario", "environment");
    check_keys(env_obj, "environment", {"width_m", "height_m", "cell_size_m"});
    GridEnvironment env(get_number(env_obj, "environment", "width_m"),
                        get_number(env_obj, "environment", "height_m"),
                        get_number(env_obj, "environment", "cell_size_m"));

    ScenarioConfig config{
        env, {}, {}, {}, {}, SimConfig{}, PlannerConfig{}};

    const json& uavs = require(doc, "scenario", "uavs");
    if (!uavs.is_array() || uavs.empty()) {
        fail("uavs", "expected a non-empty array");
    }
    for (std::size_t k = 0; k < uavs.size(); ++k) {
        std::string path = "uavs[" + std::to_string(k) + "]";
        check_keys(uavs[k], path, {"start", "speed_mps", "altitude_m", "fov_half_angle_deg"});
        UavConfig u;
        u.start = get_point(uavs[k], path, "start");
        u.speed_mps = get_number(uavs[k], path, "speed_mps");
        u.altitude_m = get_number(uavs[k], path, "altitude_m");
        u.fov_half_angle_deg = get_number_or(uavs[k], path, "fov_half_angle_deg", 45.0);
        if (!(u.speed_mps > 0.0)) {
            fail(path + ".speed_mps", "must be positive");
        }
        config.uavs.push_back(u);
    }

    const json& survivors = require(doc, "scenario", "survivors");
    if (!survivors.is_array()) {
        fail("survivors", "expected an array");
    }
    for (std::size_t k = 0; k < survivors.size(); ++k) {
        std::string path = "survivors[" + std::to_string(k) + "]";
        check_keys(survivors[k], path, {"position", "heading", "speed_mps"});
        SurvivorConfig s;
        s.position = get_point(survivors[k], path, "position");
        s.heading = get_heading(survivors[k], path, "heading");
        s.speed_mps = get_number(survivors[k], path, "speed_mps");
        if (s.speed_mps < 0.0) {
            fail(path + ".speed_mps", "must be non-negative");
        }
        config.survivors.push_back(s);
    }

    if (doc.contains("observers")) {
        const json& observers = doc.at("observers");
        if (!observers.is_array()) {
            fail("observers", "expected an array");
        }
        for (std::size_t k = 0; k < observers.size(); ++k) {
            std::string path = "observers[" + std::to_string(k) + "]";
            check_keys(observers[k], path, {"position", "radius_m"});
            ObserverConfig o;
            o.position = get_point(observers[k], path, "position");
            o.radius_m = get_number(observers[k], path, "radius_m");
            if (!(o.radius_m > 0.0)) {
                fail(path + ".radius_m", "must be positive");
            }
            config.observers.push_back(o);
        }
    }

    if (doc.contains("scripted_triggers")) {
        const json& triggers = doc.at("scripted_triggers");
        if (!triggers.is_array()) {
            fail("scripted_triggers", "expected an array");
        }
        for (std::size_t k = 0; k < triggers.size(); ++k) {
            std::string path = "scripted_triggers[" + std::to_string(k) + "]";
            check_keys(triggers[k], path,
                       {"time_s", "survivor", "reported_position", "reported_heading"});
            TriggerConfig t;
            t.time_s = get_number(triggers[k], path, "time_s");
            t.survivor = static_cast<int>(get_integer(triggers[k], path, "survivor"));
            t.reported_position = get_point(triggers[k], path, "reported_position");
            t.reported_heading = get_heading(triggers[k], path, "reported_heading");
            if (t.time_s < 0.0) {
                fail(path + ".time_s", "must be non-negative");
            }
            config.scripted_triggers.push_back(t);
        }
    }

    const json& sim = require(doc, "scenario", "sim");
    check_keys(sim, "sim", {"dt_s", "max_steps", "rng_seed"});
    config.sim.dt_s = get_number(sim, "sim", "dt_s");
    config.sim.max_steps = get_integer(sim, "sim", "max_steps");
    config.sim.rng_seed = static_cast<std::uint64_t>(get_integer(sim, "sim", "rng_seed"));
    if (!(config.sim.dt_s > 0.0)) {
        fail("sim.dt_s", "must be positive");
    }
    if (config.sim.max_steps < 1) {
        fail("sim.max_steps", "must be at least 1");
    }

    if (doc.contains("planner")) {
        const json& planner = doc.at("planner");
        check_keys(planner, "planner", {"left_before_right", "sweep_axis"});
        config.planner.left_before_right =
            get_bool(planner, "planner", "left_before_right", true);
        if (planner.contains("sweep_axis")) {
            const json& axis = planner.at("sweep_axis");
            if (!axis.is_string()) {
                fail("planner.sweep_axis", "expected \"rows\" or \"cols\"");
            }
            std::string value = axis.get<std::string>();
            if (value == "rows") {
                config.planner.sweep_axis = SweepAxis::Rows;
            } else if (value == "cols") {
                config.planner.sweep_axis = SweepAxis::Cols;
            } else {
                fail("planner.sweep_axis", "expected \"rows\" or \"cols\", got '" + value + "'");
            }
        }
    }

    validate_scenario(config);
    return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open scenario file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": parse error at byte " +
                                    std::to_string(e.byte) + ": " + e.what());
    }
    try {
        return scenario_from_json(doc);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void validate_scenario(const ScenarioConfig& config) {
    const GridEnvironment& env = config.env;
    for (std::size_t k = 0; k < config.uavs.size(); ++k) {
        const UavConfig& u = config.uavs[k];
        if (!env.contains(u.start)) {
            fail("uavs[" + std::to_string(k) + "].start", "outside the environment");
        }
        uav_footprint(u);  // validates altitude and FOV
        CellIndex cell = world_to_cell(u.start, env);
        for (std::size_t m = 0; m < k; ++m) {
            if (world_to_cell(config.uavs[m].start, env) == cell) {
                fail("uavs[" + std::to_string(k) + "].start",
                     "occupies the same cell as uavs[" + std::to_string(m) + "]");
            }
        }
    }
    for (std::size_t k = 0; k < config.survivors.size(); ++k) {
        if (!env.contains(config.survivors[k].position)) {
            fail("survivors[" + std::to_string(k) + "].position", "outside the environment");
        }
    }
    for (std::size_t k = 0; k < config.observers.size(); ++k) {
        if (!env.contains(config.observers[k].position)) {
            fail("observers[" + std::to_string(k) + "].position", "outside the environment");
        }
    }
    for (std::size_t k = 0; k < config.scripted_triggers.size(); ++k) {
        const TriggerConfig& t = config.scripted_triggers[k];
        std::string path = "scripted_triggers[" + std::to_string(k) + "]";
        if (t.survivor < 0 || t.survivor >= static_cast<int>(config.survivors.size())) {
            fail(path + ".survivor", "no survivor with index " + std::to_string(t.survivor));
        }
        if (!env.contains(t.reported_position)) {
            fail(path + ".reported_position", "outside the environment");
        }
    }
}

SensorFootprint uav_footprint(const UavConfig& uav) {
    try {
        return SensorFootprint(uav.altitude_m, uav.fov_half_angle_deg);
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("uav sensor: ") + e.what());
    }
}

}  // namespace wbe
