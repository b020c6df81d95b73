#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "wbe/harness.hpp"

using namespace wbe;

namespace {

ScenarioConfig small_scenario() {
    UavConfig uav;
    uav.start = {0.0, 0.0};
    uav.speed_mps = 5.0;
    uav.altitude_m = 2.0;
    uav.fov_half_angle_deg = 45.0;

    SurvivorConfig survivor;
    survivor.position = {6.5, 6.5};
    survivor.heading = Heading::SE;
    survivor.speed_mps = 0.5;

    return ScenarioConfig{GridEnvironment(10.0, 10.0, 1.0),
                          {uav},
                          {survivor},
                          {},
                          {},
                          SimConfig{0.1, 3000, 1},
                          PlannerConfig{}};
}

bool records_match(const RunRecord& a, const RunRecord& b) {
    return a.run_index == b.run_index && a.seed == b.seed &&
           a.ticks_to_locate == b.ticks_to_locate && a.located_count == b.located_count &&
           a.total_distance_m == b.total_distance_m &&
           a.first_trigger_tick == b.first_trigger_tick && a.completed == b.completed;
}

}  // namespace

TEST_CASE("run seeds derive deterministically and spread") {
    std::set<std::uint64_t> seen;
    for (int run = 0; run < 100; ++run) {
        std::uint64_t seed = derive_run_seed(7, run);
        CHECK(seed == derive_run_seed(7, run));
        seen.insert(seed);
    }
    CHECK(seen.size() == 100);
    CHECK(derive_run_seed(7, 0) != derive_run_seed(8, 0));
}

TEST_CASE("randomize_scenario is a pure function of the seed") {
    ScenarioConfig base = small_scenario();
    base.observers = {{{1.0, 1.0}, 2.0}, {{8.0, 8.0}, 2.0}};
    RandomizeFlags flags{true, true, true};

    ScenarioConfig a = randomize_scenario(base, flags, 123);
    ScenarioConfig b = randomize_scenario(base, flags, 123);
    CHECK(a.survivors[0].position == b.survivors[0].position);
    CHECK(a.survivors[0].heading == b.survivors[0].heading);
    for (std::size_t k = 0; k < a.observers.size(); ++k) {
        CHECK(a.observers[k].position == b.observers[k].position);
    }
    ScenarioConfig c = randomize_scenario(base, flags, 124);
    CHECK((c.survivors[0].position.x != a.survivors[0].position.x ||
           c.survivors[0].position.y != a.survivors[0].position.y ||
           c.survivors[0].heading != a.survivors[0].heading));
}

TEST_CASE("randomized survivors never spawn under an initial footprint") {
    ScenarioConfig base = small_scenario();  // footprint side 4 around (0, 0)
    RandomizeFlags flags{true, false, false};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        ScenarioConfig drawn = randomize_scenario(base, flags, seed);
        const WorldPoint& p = drawn.survivors[0].position;
        bool inside = std::abs(p.x - 0.0) <= 2.0 && std::abs(p.y - 0.0) <= 2.0;
        CHECK_FALSE(inside);
        CHECK(base.env.contains(p));
    }
}

TEST_CASE("a single-run batch equals the plain scenario run") {
    ScenarioConfig base = small_scenario();
    BatchConfig batch{base, 1, 99, {}, Strategy::Wbe};
    BatchStats stats = run_batch(batch);
    REQUIRE(stats.records.size() == 1);

    ScenarioConfig derived = base;
    derived.sim.rng_seed = derive_run_seed(99, 0);
    RunOptions options;
    options.record_trajectories = false;
    RunResult result = run_scenario(derived, options);

    CHECK(stats.records[0].ticks_to_locate.size() == 1);
    CHECK(stats.records[0].ticks_to_locate[0] == result.survivor_metrics[0].located_tick);
    CHECK(stats.records[0].completed == result.completed);
}

TEST_CASE("batches repeat bit-identically") {
    ScenarioConfig base = small_scenario();
    base.observers = {{{5.0, 5.0}, 2.0}};
    BatchConfig batch{base, 8, 31, {true, true, true}, Strategy::Wbe};
    BatchStats a = run_batch(batch);
    BatchStats b = run_batch(batch);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(records_match(a.records[k], b.records[k]));
    }
    CHECK(a.aggregates.count_located == b.aggregates.count_located);
    CHECK(a.aggregates.mean == b.aggregates.mean);
    CHECK(a.aggregates.median == b.aggregates.median);
}

TEST_CASE("each record is a pure function of its own run seed") {
    ScenarioConfig base = small_scenario();
    base.observers = {{{5.0, 5.0}, 2.0}};
    RandomizeFlags flags{true, true, true};
    BatchConfig batch{base, 4, 11, flags, Strategy::Wbe};
    BatchStats stats = run_batch(batch);

    for (int run = 0; run < 4; ++run) {
        std::uint64_t seed = derive_run_seed(11, run);
        ScenarioConfig scenario = randomize_scenario(base, flags, seed);
        RunOptions options;
        options.record_trajectories = false;
        RunResult result = run_scenario(scenario, options);
        CHECK(stats.records[run].seed == seed);
        CHECK(stats.records[run].ticks_to_locate[0] ==
              result.survivor_metrics[0].located_tick);
        CHECK(stats.records[run].located_count ==
              (result.survivor_metrics[0].located ? 1 : 0));
    }
}

TEST_CASE("without observers or triggers the strategies coincide") {
    ScenarioConfig base = small_scenario();
    RandomizeFlags flags{true, true, false};
    BatchConfig wbe_batch{base, 10, 5, flags, Strategy::Wbe};
    BatchConfig lawn_batch{base, 10, 5, flags, Strategy::LawnmowerOnly};
    BatchStats a = run_batch(wbe_batch);
    BatchStats b = run_batch(lawn_batch);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(a.records[k].ticks_to_locate == b.records[k].ticks_to_locate);
        CHECK(a.records[k].located_count == b.records[k].located_count);
        CHECK(a.records[k].total_distance_m == b.records[k].total_distance_m);
    }
}

TEST_CASE("aggregates are recomputable from the records") {
    ScenarioConfig base = small_scenario();
    base.observers = {{{5.0, 5.0}, 3.0}};
    BatchConfig batch{base, 12, 17, {true, true, true}, Strategy::Wbe};
    BatchStats stats = run_batch(batch);
    BatchAggregates again = compute_aggregates(stats.records);
    CHECK(again.total == stats.aggregates.total);
    CHECK(again.count_located == stats.aggregates.count_located);
    CHECK(again.mean == stats.aggregates.mean);
    CHECK(again.median == stats.aggregates.median);
    CHECK(again.min == stats.aggregates.min);
    CHECK(again.max == stats.aggregates.max);
}

TEST_CASE("comparing a batch against itself is the identity") {
    ScenarioConfig base = small_scenario();
    BatchConfig batch{base, 5, 21, {true, true, false}, Strategy::Wbe};
    BatchStats stats = run_batch(batch);
    ComparisonReport report = compare_strategies(stats, stats);
    CHECK(report.n_runs == 5);
    CHECK(report.ratio_of_medians == doctest::Approx(1.0));
    for (const ComparisonReport::Pair& p : report.pairs) {
        if (p.delta) {
            CHECK(*p.delta == 0);
        }
    }
}

TEST_CASE("comparison requires paired seeds") {
    ScenarioConfig base = small_scenario();
    BatchStats a = run_batch({base, 5, 21, {}, Strategy::Wbe});
    BatchStats b = run_batch({base, 5, 22, {}, Strategy::LawnmowerOnly});
    CHECK_THROWS_AS(compare_strategies(a, b), std::domain_error);
    BatchStats c = run_batch({base, 4, 21, {}, Strategy::LawnmowerOnly});
    CHECK_THROWS_AS(compare_strategies(a, c), std::domain_error);
}

TEST_CASE("load_batch parses inline scenarios and rejects junk") {
    std::string path = "test_batch_config.json";
    {
        std::ofstream out(path);
        out << R"({
            "scenario": {
                "environment": {"width_m": 10.0, "height_m": 10.0, "cell_size_m": 1.0},
                "uavs": [{"start": [0.0, 0.0], "speed_mps": 5.0, "altitude_m": 2.0,
                          "fov_half_angle_deg": 45.0}],
                "survivors": [{"position": [6.0, 6.0], "heading": "SE", "speed_mps": 0.5}],
                "sim": {"dt_s": 0.1, "max_steps": 3000, "rng_seed": 1}
            },
            "n_runs": 3,
            "master_seed": 9,
            "randomize": {"survivor_position": true},
            "strategy": "lawnmower"
        })";
    }
    BatchConfig config = load_batch(path);
    CHECK(config.n_runs == 3);
    CHECK(config.master_seed == 9);
    CHECK(config.randomize.survivor_position);
    CHECK_FALSE(config.randomize.survivor_heading);
    CHECK(config.strategy == Strategy::LawnmowerOnly);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << R"({"n_runs": 3})";
    }
    CHECK_THROWS_WITH_AS(load_batch(path), doctest::Contains("scenario"),
                         std::invalid_argument);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << R"({"scenario_path": "x.json", "n_runs": 1, "walltime": 5})";
    }
    CHECK_THROWS_WITH_AS(load_batch(path), doctest::Contains("walltime"),
                         std::invalid_argument);
    std::remove(path.c_str());
}
