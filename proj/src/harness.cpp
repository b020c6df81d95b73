#include "wbe/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace wbe {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double median_of(std::vector<std::int64_t> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return static_cast<double>(values[mid]);
    }
    return (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t master_seed, int run_index) {
    return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(run_index)));
}

ScenarioConfig randomize_scenario(const ScenarioConfig& base, const RandomizeFlags& flags,
                                  std::uint64_t seed) {
    ScenarioConfig config = base;
    config.sim.rng_seed = seed;
    std::mt19937_64 rng(seed);
    const GridEnvironment& env = config.env;

    if (flags.survivor_position) {
        std::uniform_int_distribution<int> col(0, env.cols() - 1);
        std::uniform_int_distribution<int> row(0, env.rows() - 1);
        for (SurvivorConfig& s : config.survivors) {
            for (int attempt = 0; attempt < 10000; ++attempt) {
                WorldPoint p = cell_center({col(rng), row(rng)}, env);
                bool under_uav = false;
                for (const UavConfig& u : config.uavs) {
                    if (uav_footprint(u).covers(u.start, p)) {
                        under_uav = true;
                        break;
                    }
                }
                if (!under_uav) {
                    s.position = p;
                    break;
                }
                if (attempt == 9999) {
                    throw std::domain_error(
                        "could not place a survivor outside all initial UAV footprints");
                }
            }
        }
    }
    if (flags.survivor_heading) {
        std::uniform_int_distribution<int> dir(0, 7);
        for (SurvivorConfig& s : config.survivors) {
            s.heading = static_cast<Heading>(dir(rng));
        }
    }
    if (flags.observer_positions) {
        std::uniform_real_distribution<double> px(0.0, env.width_m());
        std::uniform_real_distribution<double> py(0.0, env.height_m());
        for (ObserverConfig& o : config.observers) {
            o.position = {px(rng), py(rng)};
        }
    }
    return config;
}

BatchStats run_batch(const BatchConfig& config) {
    if (config.n_runs < 1) {
        throw std::domain_error("batch needs at least one run");
    }
    BatchStats stats;
    stats.strategy = config.strategy;
    stats.master_seed = config.master_seed;
    stats.n_runs = config.n_runs;
    stats.records.reserve(config.n_runs);

    for (int run = 0; run < config.n_runs; ++run) {
        std::uint64_t seed = derive_run_seed(config.master_seed, run);
        RunResult result;
        try {
            ScenarioConfig scenario = randomize_scenario(config.base, config.randomize, seed);
            RunOptions options;
            options.strategy = config.strategy;
            options.record_trajectories = false;
            result = run_scenario(scenario, options);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "run " << run << ": " << e.what();
            throw std::domain_error(msg.str());
        }

        RunRecord record;
        record.run_index = run;
        record.seed = seed;
        record.completed = result.completed;
        record.first_trigger_tick = result.first_trigger_tick;
        for (const RunResult::SurvivorMetrics& s : result.survivor_metrics) {
            record.ticks_to_locate.push_back(s.located_tick);
            if (s.located) {
                record.located_count += 1;
            }
        }
        for (const RunResult::UavMetrics& u : result.uav_metrics) {
            record.total_distance_m += u.distance_traveled_m;
            record.planning_time_s += u.planning_time_s;
        }
        stats.records.push_back(std::move(record));
    }
    stats.aggregates = compute_aggregates(stats.records);
    return stats;
}

BatchAggregates compute_aggregates(const std::vector<RunRecord>& records) {
    BatchAggregates agg;
    std::vector<std::int64_t> located;
    for (const RunRecord& r : records) {
        for (const auto& ticks : r.ticks_to_locate) {
            agg.total += 1;
            if (ticks) {
                located.push_back(*ticks);
            }
        }
    }
    agg.count_located = static_cast<int>(located.size());
    if (!located.empty()) {
        double sum = 0.0;
        agg.min = located.front();
        agg.max = located.front();
        for (std::int64_t v : located) {
            sum += static_cast<double>(v);
            agg.min = std::min(agg.min, v);
            agg.max = std::max(agg.max, v);
        }
        agg.mean = sum / static_cast<double>(located.size());
        agg.median = median_of(located);
    }
    return agg;
}

ComparisonReport compare_strategies(const BatchStats& a, const BatchStats& b) {
    if (a.n_runs != b.n_runs || a.records.size() != b.records.size()) {
        throw std::domain_error("cannot compare batches with different run counts");
    }
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        if (a.records[k].seed != b.records[k].seed) {
            std::ostringstream msg;
            msg << "run " << k << " seeds differ between batches; comparison requires paired seeds";
            throw std::domain_error(msg.str());
        }
    }

    ComparisonReport report;
    report.n_runs = a.n_runs;
    report.strategy_a = a.strategy;
    report.strategy_b = b.strategy;

    std::vector<std::int64_t> both_a, both_b, qual_a, qual_b;
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        const RunRecord& ra = a.records[k];
        const RunRecord& rb = b.records[k];
        ComparisonReport::Pair pair;
        pair.run = ra.run_index;
        pair.trigger_tick = ra.first_trigger_tick;
        // First survivor's ticks; the comparison scenarios track a single
        // survivor per run.
        if (!ra.ticks_to_locate.empty()) pair.ticks_a = ra.ticks_to_locate.front();
        if (!rb.ticks_to_locate.empty()) pair.ticks_b = rb.ticks_to_locate.front();
        if (pair.ticks_a && pair.ticks_b) {
            pair.delta = *pair.ticks_b - *pair.ticks_a;
            both_a.push_back(*pair.ticks_a);
            both_b.push_back(*pair.ticks_b);
            if (pair.trigger_tick && *pair.trigger_tick < *pair.ticks_b) {
                pair.qualifying = true;
                qual_a.push_back(*pair.ticks_a);
                qual_b.push_back(*pair.ticks_b);
            }
        }
        report.pairs.push_back(pair);
    }

    report.located_both = static_cast<int>(both_a.size());
    report.median_a = median_of(both_a);
    report.median_b = median_of(both_b);
    report.ratio_of_medians = report.median_a > 0.0 ? report.median_b / report.median_a : 0.0;

    report.qualifying_count = static_cast<int>(qual_a.size());
    report.qualifying_median_a = median_of(qual_a);
    report.qualifying_median_b = median_of(qual_b);
    report.qualifying_ratio =
        report.qualifying_median_a > 0.0 ? report.qualifying_median_b / report.qualifying_median_a
                                         : 0.0;
    return report;
}

BatchConfig load_batch(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open batch file " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": parse error at byte " +
                                    std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument(path.string() + ": expected an object");
    }
    for (const auto& item : doc.items()) {
        static const char* allowed[] = {"scenario", "scenario_path", "n_runs",
                                        "master_seed", "randomize", "strategy"};
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) known = true;
        }
        if (!known) {
            throw std::invalid_argument(path.string() + ": unknown key '" + item.key() + "'");
        }
    }
    if (doc.contains("scenario") == doc.contains("scenario_path")) {
        throw std::invalid_argument(path.string() +
                                    ": exactly one of 'scenario' or 'scenario_path' required");
    }

    ScenarioConfig base = doc.contains("scenario")
        ? scenario_from_json(doc.at("scenario"))
        : load_scenario(path.parent_path() / doc.at("scenario_path").get<std::string>());

    BatchConfig config{std::move(base), 1, 0, {}, Strategy::Wbe};
    if (!doc.contains("n_runs") || !doc.at("n_runs").is_number_integer()) {
        throw std::invalid_argument(path.string() + ": n_runs: expected an integer");
    }
    config.n_runs = doc.at("n_runs").get<int>();
    if (config.n_runs < 1) {
        throw std::invalid_argument(path.string() + ": n_runs must be at least 1");
    }
    if (doc.contains("master_seed")) {
        if (!doc.at("master_seed").is_number_integer()) {
            throw std::invalid_argument(path.string() + ": master_seed: expected an integer");
        }
        config.master_seed = doc.at("master_seed").get<std::uint64_t>();
    }
    if (doc.contains("randomize")) {
        const nlohmann::json& r = doc.at("randomize");
        for (const auto& item : r.items()) {
            bool value = item.value().is_boolean() && item.value().get<bool>();
            if (item.key() == "survivor_position") {
                config.randomize.survivor_position = value;
            } else if (item.key() == "survivor_heading") {
                config.randomize.survivor_heading = value;
            } else if (item.key() == "observer_positions") {
                config.randomize.observer_positions = value;
            } else {
                throw std::invalid_argument(path.string() + ": randomize: unknown key '" +
                                            item.key() + "'");
            }
        }
    }
    if (doc.contains("strategy")) {
        if (!doc.at("strategy").is_string()) {
            throw std::invalid_argument(path.string() + ": strategy: expected a string");
        }
        config.strategy = parse_strategy(doc.at("strategy").get<std::string>());
    }
    return config;
}

}  // namespace wbe
