#include "wbe/exports.hpp"

#include <cstdio>
#include <sstream>

namespace wbe {

namespace {

using nlohmann::json;

const char* survivor_status_name(int status) {
    return status == static_cast<int>(SurvivorStatus::Located) ? "located" : "moving";
}

json point_json(const WorldPoint& p) {
    return json::array({p.x, p.y});
}

json optional_tick(const std::optional<std::int64_t>& v) {
    if (v) {
        return *v;
    }
    return nullptr;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

void write_trajectories_csv(const RunResult& result, std::ostream& out) {
    out << "t,agent_kind,agent_id,x,y,z,mode\n";
    auto write_series = [&](const char* kind, std::size_t id,
                            const std::vector<TrajectoryPoint>& series, bool uav) {
        for (const TrajectoryPoint& p : series) {
            out << format_fixed(p.t, 3) << ',' << kind << ',' << id << ','
                << format_fixed(p.x, 6) << ',' << format_fixed(p.y, 6) << ','
                << format_fixed(p.z, 3) << ','
                << (uav ? uav_mode_name(static_cast<UavMode>(p.mode))
                        : survivor_status_name(p.mode))
                << '\n';
        }
    };
    for (std::size_t k = 0; k < result.uav_trajectories.size(); ++k) {
        write_series("uav", k, result.uav_trajectories[k], true);
    }
    for (std::size_t k = 0; k < result.survivor_trajectories.size(); ++k) {
        write_series("survivor", k, result.survivor_trajectories[k], false);
    }
}

void write_events_jsonl(const RunResult& result, std::ostream& out) {
    for (const Event& e : result.events) {
        json obj;
        obj["type"] = event_type_name(e.type);
        obj["t"] = e.t;
        obj["tick"] = e.tick;
        switch (e.type) {
            case Event::Type::Trigger:
                obj["uav"] = e.uav;
                obj["survivor"] = e.survivor;
                obj["position"] = point_json(e.position);
                obj["heading"] = heading_name(e.heading);
                obj["source"] = e.scripted ? "scripted" : "observer";
                obj["applied"] = e.applied;
                break;
            case Event::Type::Detection:
                obj["uav"] = e.uav;
                obj["survivor"] = e.survivor;
                obj["position"] = point_json(e.position);
                break;
            case Event::Type::CoverageComplete:
            case Event::Type::Returned:
                obj["uav"] = e.uav;
                break;
        }
        out << obj.dump() << '\n';
    }
}

json result_to_json(const RunResult& result) {
    json doc;
    doc["strategy"] = strategy_name(result.strategy);
    doc["dt_s"] = result.dt_s;
    doc["ticks"] = result.ticks;
    doc["completed"] = result.completed;
    doc["first_trigger_tick"] = optional_tick(result.first_trigger_tick);

    json uavs = json::array();
    for (const RunResult::UavMetrics& m : result.uav_metrics) {
        json u;
        u["id"] = m.id;
        u["steps_to_locate"] = optional_tick(m.steps_to_locate);
        u["distance_m"] = m.distance_traveled_m;
        u["incomplete_search"] = m.incomplete_search;
        u["final_position"] = point_json(m.final_position);
        uavs.push_back(u);
    }
    doc["uavs"] = uavs;

    json survivors = json::array();
    for (const RunResult::SurvivorMetrics& m : result.survivor_metrics) {
        json s;
        s["id"] = m.id;
        s["located"] = m.located;
        s["located_tick"] = optional_tick(m.located_tick);
        if (m.located_time_s) {
            s["located_time_s"] = *m.located_time_s;
        } else {
            s["located_time_s"] = nullptr;
        }
        survivors.push_back(s);
    }
    doc["survivors"] = survivors;

    int triggers = 0, detections = 0, coverage = 0, returned = 0;
    for (const Event& e : result.events) {
        switch (e.type) {
            case Event::Type::Trigger: triggers += 1; break;
            case Event::Type::Detection: detections += 1; break;
            case Event::Type::CoverageComplete: coverage += 1; break;
            case Event::Type::Returned: returned += 1; break;
        }
    }
    doc["event_counts"] = {{"trigger", triggers},
                           {"detection", detections},
                           {"coverage_complete", coverage},
                           {"returned", returned}};
    return doc;
}

json timing_to_json(const RunResult& result) {
    json doc;
    json uavs = json::array();
    double total = 0.0;
    for (const RunResult::UavMetrics& m : result.uav_metrics) {
        uavs.push_back({{"id", m.id}, {"planning_time_s", m.planning_time_s}});
        total += m.planning_time_s;
    }
    doc["uavs"] = uavs;
    doc["total_planning_time_s"] = total;
    doc["note"] = "wall-clock measurements; excluded from reproducibility guarantees";
    return doc;
}

void write_runs_csv(const BatchStats& stats, std::ostream& out) {
    out << "run,seed,survivors,located,ticks_to_locate,first_trigger_tick,distance_m,completed\n";
    for (const RunRecord& r : stats.records) {
        out << r.run_index << ',' << r.seed << ',' << r.ticks_to_locate.size() << ','
            << r.located_count << ',';
        if (!r.ticks_to_locate.empty() && r.ticks_to_locate.front()) {
            out << *r.ticks_to_locate.front();
        }
        out << ',';
        if (r.first_trigger_tick) {
            out << *r.first_trigger_tick;
        }
        out << ',' << format_fixed(r.total_distance_m, 3) << ',' << (r.completed ? 1 : 0)
            << '\n';
    }
}

json summary_to_json(const BatchStats& stats) {
    json doc;
    doc["strategy"] = strategy_name(stats.strategy);
    doc["n_runs"] = stats.n_runs;
    doc["master_seed"] = stats.master_seed;
    const BatchAggregates& a = stats.aggregates;
    doc["ticks_to_locate"] = {{"total", a.total},
                              {"count_located", a.count_located},
                              {"mean", a.mean},
                              {"median", a.median},
                              {"min", a.min},
                              {"max", a.max}};
    return doc;
}

json comparison_to_json(const ComparisonReport& report) {
    json doc;
    doc["n_runs"] = report.n_runs;
    doc["strategy_a"] = strategy_name(report.strategy_a);
    doc["strategy_b"] = strategy_name(report.strategy_b);
    doc["located_both"] = report.located_both;
    doc["median_a"] = report.median_a;
    doc["median_b"] = report.median_b;
    doc["ratio_of_medians"] = report.ratio_of_medians;
    doc["qualifying"] = {{"count", report.qualifying_count},
                         {"median_a", report.qualifying_median_a},
                         {"median_b", report.qualifying_median_b},
                         {"ratio_of_medians", report.qualifying_ratio}};
    json pairs = json::array();
    for (const ComparisonReport::Pair& p : report.pairs) {
        json obj;
        obj["run"] = p.run;
        obj["ticks_a"] = optional_tick(p.ticks_a);
        obj["ticks_b"] = optional_tick(p.ticks_b);
        obj["delta"] = optional_tick(p.delta);
        obj["trigger_tick"] = optional_tick(p.trigger_tick);
        obj["qualifying"] = p.qualifying;
        pairs.push_back(obj);
    }
    doc["per_run"] = pairs;
    return doc;
}

std::string comparison_to_text(const ComparisonReport& report) {
    std::ostringstream out;
    out << "paired comparison over " << report.n_runs << " runs: "
        << strategy_name(report.strategy_a) << " vs " << strategy_name(report.strategy_b)
        << "\n";
    out << "  located by both: " << report.located_both << "\n";
    out << "  median ticks-to-locate: " << format_fixed(report.median_a, 1) << " vs "
        << format_fixed(report.median_b, 1) << " (ratio "
        << format_fixed(report.ratio_of_medians, 3) << ")\n";
    out << "  runs with a trigger before " << strategy_name(report.strategy_b)
        << " detection: " << report.qualifying_count << "\n";
    out << "  qualifying median ticks-to-locate: "
        << format_fixed(report.qualifying_median_a, 1) << " vs "
        << format_fixed(report.qualifying_median_b, 1) << " (ratio "
        << format_fixed(report.qualifying_ratio, 3) << ")\n";
    return out.str();
}

void write_weights_csv(const WeightMap& map, std::ostream& out) {
    const GridEnvironment& env = map.env();
    for (int j = 0; j < env.rows(); ++j) {
        for (int i = 0; i < env.cols(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << map.values()[j * env.cols() + i];
        }
        out << '\n';
    }
}

void write_partition_csv(const PartitionMap& map, std::ostream& out) {
    const GridEnvironment& env = map.env();
    for (int j = 0; j < env.rows(); ++j) {
        for (int i = 0; i < env.cols(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << map.owners()[j * env.cols() + i];
        }
        out << '\n';
    }
}

}  // namespace wbe
