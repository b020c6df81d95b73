#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "wbe/scenario.hpp"
#include "wbe/simulator.hpp"

namespace wbe {

struct RandomizeFlags {
    bool survivor_position = false;
    bool survivor_heading = false;
    bool observer_positions = false;
};

struct BatchConfig {
    ScenarioConfig base;
    int n_runs = 1;
    std::uint64_t master_seed = 0;
    RandomizeFlags randomize;
    Strategy strategy = Strategy::Wbe;
};

// Per-run outcome. Wall-clock planning time is reported separately from
// the deterministic metrics.
struct RunRecord {
    int run_index = 0;
    std::uint64_t seed = 0;
    std::vector<std::optional<std::int64_t>> ticks_to_locate;  // per survivor
    int located_count = 0;
    double total_distance_m = 0.0;
    double planning_time_s = 0.0;
    std::optional<std::int64_t> first_trigger_tick;
    bool completed = true;
};

struct BatchAggregates {
    int total = 0;          // (run, survivor) pairs
    int count_located = 0;
    double mean = 0.0;      // over located ticks-to-locate
    double median = 0.0;
    std::int64_t min = 0;
    std::int64_t max = 0;
};

struct BatchStats {
    Strategy strategy = Strategy::Wbe;
    std::uint64_t master_seed = 0;
    int n_runs = 0;
    std::vector<RunRecord> records;
    BatchAggregates aggregates;
};

// Paired per-run comparison of two batches run on identical derived
// scenarios. Ratios are medians of b over medians of a, so values above 1
// favor a.
struct ComparisonReport {
    int n_runs = 0;
    Strategy strategy_a = Strategy::Wbe;
    Strategy strategy_b = Strategy::LawnmowerOnly;

    struct Pair {
        int run = 0;
        std::optional<std::int64_t> ticks_a;
        std::optional<std::int64_t> ticks_b;
        std::optional<std::int64_t> delta;  // b - a when both located
        std::optional<std::int64_t> trigger_tick;
        bool qualifying = false;  // trigger fired before b's detection, both located
    };
    std::vector<Pair> pairs;

    int located_both = 0;
    double median_a = 0.0;
    double median_b = 0.0;
    double ratio_of_medians = 0.0;

    int qualifying_count = 0;
    double qualifying_median_a = 0.0;
    double qualifying_median_b = 0.0;
    double qualifying_ratio = 0.0;
};

// Deterministic per-run seed from the batch master seed (splitmix64 over
// the pair).
std::uint64_t derive_run_seed(std::uint64_t master_seed, int run_index);

// The scenario actually executed for one run: the base with the flagged
// fields redrawn from the run seed. Survivor positions draw uniform
// in-bounds cell centers, rejecting spawns inside any UAV's initial
// footprint; headings draw uniformly from the 8 compass directions;
// observers draw uniform continuous positions.
ScenarioConfig randomize_scenario(const ScenarioConfig& base, const RandomizeFlags& flags,
                                  std::uint64_t seed);

// Runs n_runs independent scenarios with derived seeds. The lawnmower
// strategy never applies triggers. Identical config gives identical stats.
BatchStats run_batch(const BatchConfig& config);

BatchAggregates compute_aggregates(const std::vector<RunRecord>& records);

// Pairs two batches by run seed. Throws std::domain_error when run counts
// or seeds do not line up.
ComparisonReport compare_strategies(const BatchStats& a, const BatchStats& b);

// Reads a batch config file: {"scenario": {...} | "scenario_path": "...",
// "n_runs", "master_seed", "randomize": {...}, "strategy"}. scenario_path
// resolves relative to the batch file.
BatchConfig load_batch(const std::filesystem::path& path);

}  // namespace wbe
