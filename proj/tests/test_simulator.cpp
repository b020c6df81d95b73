#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wbe/simulator.hpp"

using namespace wbe;

namespace {

UavConfig uav_at(double x, double y, double speed = 2.0, double altitude = 2.0) {
    UavConfig u;
    u.start = {x, y};
    u.speed_mps = speed;
    u.altitude_m = altitude;
    u.fov_half_angle_deg = 45.0;
    return u;
}

SurvivorConfig survivor_at(double x, double y, Heading h, double speed = 0.5) {
    SurvivorConfig s;
    s.position = {x, y};
    s.heading = h;
    s.speed_mps = speed;
    return s;
}

ScenarioConfig base_config(double size = 20.0) {
    return ScenarioConfig{GridEnvironment(size, size, 1.0),
                          {uav_at(0.0, 0.0)},
                          {},
                          {},
                          {},
                          SimConfig{0.1, 20000, 1},
                          PlannerConfig{}};
}

bool same_trajectories(const std::vector<std::vector<TrajectoryPoint>>& a,
                       const std::vector<std::vector<TrajectoryPoint>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].size() != b[k].size()) return false;
        for (std::size_t m = 0; m < a[k].size(); ++m) {
            const TrajectoryPoint& p = a[k][m];
            const TrajectoryPoint& q = b[k][m];
            if (p.t != q.t || p.x != q.x || p.y != q.y || p.z != q.z || p.mode != q.mode) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("survivors advance along their heading and clamp at walls") {
    ScenarioConfig config = base_config();
    config.survivors = {survivor_at(5.0, 5.0, Heading::NE, 0.5)};
    SimState state = init_sim(config);
    step(state);
    double d = 0.5 * 0.1 * std::sqrt(0.5);
    CHECK(state.survivors[0].position.x == doctest::Approx(5.0 + d).epsilon(1e-12));
    CHECK(state.survivors[0].position.y == doctest::Approx(5.0 + d).epsilon(1e-12));

    ScenarioConfig edge = base_config();
    edge.survivors = {survivor_at(19.95, 5.0, Heading::E, 10.0)};
    SimState wall = init_sim(edge);
    step(wall);
    CHECK(wall.survivors[0].position.x == 20.0);
    step(wall);
    CHECK(wall.survivors[0].position.x == 20.0);
    CHECK(wall.survivors[0].status == SurvivorStatus::Moving);
}

TEST_CASE("a UAV advances straight toward its waypoint") {
    ScenarioConfig config = base_config();
    SimState state = init_sim(config);
    state.uavs[0].position = {0.5, 0.5};
    state.uavs[0].waypoint_queue.clear();
    state.uavs[0].waypoint_queue.push_back({1, 0});  // center (1.5, 0.5)
    step(state);
    CHECK(state.uavs[0].position.x == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(state.uavs[0].position.y == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("waypoint arrival snaps, pops, and marks visited") {
    ScenarioConfig config = base_config();
    SimState state = init_sim(config);
    state.uavs[0].position = {1.4, 0.5};
    state.uavs[0].waypoint_queue.clear();
    state.uavs[0].waypoint_queue.push_back({1, 0});
    state.uavs[0].waypoint_queue.push_back({2, 0});
    step(state);
    CHECK(state.uavs[0].position == WorldPoint{1.5, 0.5});
    CHECK(state.uavs[0].waypoint_queue.front() == CellIndex{2, 0});
    CHECK(state.uavs[0].visited[config.env.flat_index({1, 0})] == 1);
    CHECK(state.uavs[0].visited[config.env.flat_index({2, 0})] == 0);
}

TEST_CASE("coverage completion walks the state machine home") {
    ScenarioConfig config{GridEnvironment(1.0, 1.0, 1.0),
                          {uav_at(0.0, 0.0, 10.0)},
                          {},
                          {},
                          {},
                          SimConfig{0.1, 100, 1},
                          PlannerConfig{}};
    SimState state = init_sim(config);
    CHECK(state.uavs[0].mode == UavMode::Lawnmower);

    step(state);  // reaches (0.5, 0.5), finishes coverage
    CHECK(state.uavs[0].mode == UavMode::ReturnHome);
    step(state);  // reaches home
    CHECK(state.uavs[0].mode == UavMode::Done);
    CHECK(state.uavs[0].position == WorldPoint{0.0, 0.0});

    REQUIRE(state.events.size() == 2);
    CHECK(state.events[0].type == Event::Type::CoverageComplete);
    CHECK(state.events[1].type == Event::Type::Returned);
}

TEST_CASE("observer_check fires once per pair within range") {
    GridEnvironment env(20.0, 20.0, 1.0);
    PartitionMap partition = voronoi_partition(env, {{0.0, 0.0}});
    std::vector<Observer> observers(1);
    observers[0].id = 0;
    observers[0].position = {5.0, 5.0};
    observers[0].radius_m = 3.0;
    observers[0].reported.assign(2, 0);

    std::vector<Survivor> survivors(2);
    survivors[0].id = 0;
    survivors[0].position = {7.0, 7.0};  // distance 2.83
    survivors[0].heading = Heading::SE;
    survivors[1].id = 1;
    survivors[1].position = {12.0, 12.0};  // out of range

    auto reports = observer_check(observers, survivors, partition, 1.5);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].first == 0);
    CHECK(reports[0].second.survivor_id == 0);
    CHECK(reports[0].second.last_known == WorldPoint{7.0, 7.0});
    CHECK(reports[0].second.heading == Heading::SE);
    CHECK(reports[0].second.report_time_s == 1.5);

    // Once only.
    CHECK(observer_check(observers, survivors, partition, 1.6).empty());

    // A located survivor is never reported.
    observers[0].reported.assign(2, 0);
    survivors[0].status = SurvivorStatus::Located;
    CHECK(observer_check(observers, survivors, partition, 1.7).empty());

    // Exactly at the radius counts.
    survivors[1].position = {8.0, 5.0};
    auto boundary = observer_check(observers, survivors, partition, 1.8);
    REQUIRE(boundary.size() == 1);
    CHECK(boundary[0].second.survivor_id == 1);
}

TEST_CASE("survivors move before observer checks within a tick") {
    // The survivor enters the observer's radius only through this tick's
    // own movement, so the report must carry the post-move position.
    ScenarioConfig config = base_config();
    config.survivors = {survivor_at(4.95, 5.0, Heading::E, 1.0)};
    config.observers = {{{6.0, 5.0}, 1.0}};
    SimState state = init_sim(config);
    step(state);
    REQUIRE(state.events.size() == 1);
    CHECK(state.events[0].type == Event::Type::Trigger);
    CHECK(state.events[0].tick == 1);
    CHECK(state.events[0].position.x == doctest::Approx(5.05).epsilon(1e-12));
    CHECK(state.events[0].position.y == doctest::Approx(5.0));
}

TEST_CASE("triggers replan before the UAV moves within a tick") {
    ScenarioConfig config = base_config();
    config.survivors = {survivor_at(10.5, 0.5, Heading::E, 0.0)};
    config.scripted_triggers = {{0.1, 0, {10.5, 0.5}, Heading::E}};
    SimState state = init_sim(config);
    step(state);
    // The first motion step already points at the reported cell's center
    // (10.5, 0.5), not at the first lawnmower waypoint (0.5, 0.5).
    CHECK(state.uavs[0].mode == UavMode::Wbe);
    double norm = std::hypot(10.5, 0.5);
    CHECK(state.uavs[0].position.x == doctest::Approx(0.2 * 10.5 / norm).epsilon(1e-12));
    CHECK(state.uavs[0].position.y == doctest::Approx(0.2 * 0.5 / norm).epsilon(1e-12));
}

TEST_CASE("detection_check uses the closed footprint square") {
    UavAgent uav;
    uav.position = {5.0, 5.0};
    uav.footprint = SensorFootprint(2.0, 45.0);  // side 4

    std::vector<Survivor> survivors(3);
    survivors[0].id = 0;
    survivors[0].position = {6.5, 6.5};
    survivors[1].id = 1;
    survivors[1].position = {7.5, 5.0};
    survivors[2].id = 2;
    survivors[2].position = {7.0, 5.0};

    std::vector<int> hits = detection_check(uav, survivors);
    CHECK(hits == std::vector<int>{0, 2});

    survivors[0].status = SurvivorStatus::Located;
    CHECK(detection_check(uav, survivors) == std::vector<int>{2});
}

TEST_CASE("apply_report rebuilds the queue over the whole partition") {
    ScenarioConfig config = base_config();
    SimState state = init_sim(config);
    UavAgent& uav = state.uavs[0];

    SurvivorReport report;
    report.survivor_id = 0;
    report.last_known = {9.5, 9.5};
    report.heading = Heading::SE;
    apply_report(uav, report, config.env, config.planner);

    CHECK(uav.mode == UavMode::Wbe);
    REQUIRE(uav.active_report.has_value());
    CHECK(uav.waypoint_queue.size() == 400);
    CHECK(uav.waypoint_queue.front() == CellIndex{9, 9});
    for (const CellIndex& c : uav.waypoint_queue) {
        CHECK(uav.partition_mask[config.env.flat_index(c)] == 1);
    }
}

TEST_CASE("apply_report with everything visited degenerates to the origin") {
    ScenarioConfig config = base_config();
    SimState state = init_sim(config);
    UavAgent& uav = state.uavs[0];
    uav.visited.assign(config.env.cell_count(), 1);

    SurvivorReport report;
    report.last_known = {9.5, 9.5};
    report.heading = Heading::N;
    apply_report(uav, report, config.env, config.planner);
    REQUIRE(uav.waypoint_queue.size() == 1);
    CHECK(uav.waypoint_queue.front() == CellIndex{9, 9});
}

TEST_CASE("a report outside the partition plans over own cells only") {
    ScenarioConfig config = base_config();
    config.uavs = {uav_at(0.0, 0.0), uav_at(19.0, 19.0)};
    SimState state = init_sim(config);
    UavAgent& uav = state.uavs[0];
    std::size_t own = uav.partition_cells.size();

    SurvivorReport report;
    report.last_known = {15.0, 15.0};  // inside UAV 1's region
    report.heading = Heading::N;
    apply_report(uav, report, config.env, config.planner);

    CHECK(uav.waypoint_queue.size() == own);
    for (const CellIndex& c : uav.waypoint_queue) {
        CHECK(uav.partition_mask[config.env.flat_index(c)] == 1);
        CHECK_FALSE(c == CellIndex{15, 15});
    }
}

TEST_CASE("a second report replans against the current visited set") {
    ScenarioConfig config = base_config();
    SimState state = init_sim(config);
    UavAgent& uav = state.uavs[0];

    SurvivorReport first;
    first.last_known = {9.5, 9.5};
    first.heading = Heading::E;
    apply_report(uav, first, config.env, config.planner);

    // Visit four cells away from the next origin.
    int marked = 0;
    for (const CellIndex& c : uav.waypoint_queue) {
        if (marked == 4) break;
        if (c.i < 5 && c.j < 5) {
            uav.visited[config.env.flat_index(c)] = 1;
            marked += 1;
        }
    }
    REQUIRE(marked == 4);

    SurvivorReport second;
    second.last_known = {12.5, 12.5};
    second.heading = Heading::W;
    apply_report(uav, second, config.env, config.planner);
    CHECK(uav.mode == UavMode::Wbe);
    CHECK(uav.waypoint_queue.size() == 400 - 4);
    CHECK(uav.waypoint_queue.front() == CellIndex{12, 12});
}

TEST_CASE("scripted triggers route by reported position and switch the UAV to WBE") {
    ScenarioConfig config = base_config();
    config.uavs = {uav_at(0.0, 0.0), uav_at(19.0, 19.0)};
    config.survivors = {survivor_at(15.0, 15.0, Heading::N)};
    config.scripted_triggers = {{1.0, 0, {15.0, 15.0}, Heading::N}};
    SimState state = init_sim(config);

    for (int k = 0; k < 10; ++k) {
        step(state);
    }
    CHECK(state.uavs[0].mode == UavMode::Lawnmower);
    CHECK(state.uavs[1].mode == UavMode::Wbe);
    REQUIRE(state.uavs[1].active_report.has_value());
    CHECK(state.uavs[1].active_report->survivor_id == 0);

    REQUIRE(!state.events.empty());
    CHECK(state.events[0].type == Event::Type::Trigger);
    CHECK(state.events[0].uav == 1);
    CHECK(state.events[0].scripted);
    CHECK(state.events[0].applied);
}

TEST_CASE("detecting the reported survivor sends the UAV home") {
    ScenarioConfig config = base_config();
    config.survivors = {survivor_at(5.0, 5.0, Heading::S)};
    config.scripted_triggers = {{0.5, 0, {5.0, 5.0}, Heading::S}};
    SimState state = init_sim(config);

    bool saw_return = false;
    while (state.tick < config.sim.max_steps) {
        step(state);
        if (state.survivors[0].status == SurvivorStatus::Located) {
            break;
        }
    }
    CHECK(state.survivors[0].status == SurvivorStatus::Located);
    CHECK(state.uavs[0].mode == UavMode::ReturnHome);
    CHECK(state.uavs[0].waypoint_queue.empty());

    WorldPoint at_detection = state.survivors[0].position;
    while (state.tick < config.sim.max_steps && state.uavs[0].mode != UavMode::Done) {
        step(state);
        saw_return = true;
    }
    CHECK(saw_return);
    CHECK(state.uavs[0].mode == UavMode::Done);
    CHECK(state.uavs[0].position == WorldPoint{0.0, 0.0});
    // Survivors keep walking after being located.
    CHECK(state.survivors[0].position.y < at_detection.y);
}

TEST_CASE("the lawnmower-only strategy records triggers without applying them") {
    ScenarioConfig config = base_config();
    config.survivors = {survivor_at(5.0, 5.0, Heading::S)};
    config.scripted_triggers = {{0.5, 0, {5.0, 5.0}, Heading::S}};

    RunOptions options;
    options.strategy = Strategy::LawnmowerOnly;
    RunResult result = run_scenario(config, options);

    bool saw_trigger = false;
    for (const Event& e : result.events) {
        if (e.type == Event::Type::Trigger) {
            saw_trigger = true;
            CHECK_FALSE(e.applied);
        }
    }
    CHECK(saw_trigger);
    for (const auto& series : result.uav_trajectories) {
        for (const TrajectoryPoint& p : series) {
            CHECK(p.mode != static_cast<int>(UavMode::Wbe));
        }
    }
}

TEST_CASE("an exhausted search returns home flagged incomplete") {
    ScenarioConfig config{GridEnvironment(3.0, 3.0, 1.0),
                          {uav_at(0.0, 0.0, 5.0, 0.1)},  // footprint side 0.2
                          {survivor_at(2.9, 2.9, Heading::NE, 0.0)},
                          {},
                          {{0.1, 0, {0.5, 0.5}, Heading::NE}},
                          SimConfig{0.1, 2000, 1},
                          PlannerConfig{}};
    RunResult result = run_scenario(config);
    CHECK(result.completed);
    CHECK(result.uav_metrics[0].incomplete_search);
    CHECK_FALSE(result.survivor_metrics[0].located);
    CHECK(result.uav_metrics[0].final_position == WorldPoint{0.0, 0.0});
}

TEST_CASE("runs are deterministic") {
    ScenarioConfig config = base_config();
    config.survivors = {survivor_at(5.0, 5.0, Heading::S), survivor_at(15.0, 15.0, Heading::N)};
    config.scripted_triggers = {{0.5, 0, {5.0, 5.0}, Heading::S}};

    RunResult a = run_scenario(config);
    RunResult b = run_scenario(config);
    CHECK(same_trajectories(a.uav_trajectories, b.uav_trajectories));
    CHECK(same_trajectories(a.survivor_trajectories, b.survivor_trajectories));
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t k = 0; k < a.events.size(); ++k) {
        CHECK(a.events[k].type == b.events[k].type);
        CHECK(a.events[k].tick == b.events[k].tick);
        CHECK(a.events[k].uav == b.events[k].uav);
        CHECK(a.events[k].survivor == b.events[k].survivor);
    }
    // Event times never decrease.
    for (std::size_t k = 1; k < a.events.size(); ++k) {
        CHECK(a.events[k].t >= a.events[k - 1].t);
    }
    // A located survivor has exactly one detection event.
    for (const RunResult::SurvivorMetrics& s : a.survivor_metrics) {
        int detections = 0;
        for (const Event& e : a.events) {
            if (e.type == Event::Type::Detection && e.survivor == s.id) {
                detections += 1;
            }
        }
        CHECK(detections == (s.located ? 1 : 0));
    }
}

TEST_CASE("removing an untriggered UAV's survivor leaves other trajectories identical") {
    ScenarioConfig config = base_config();
    config.uavs = {uav_at(0.0, 0.0), uav_at(19.0, 19.0)};
    config.survivors = {survivor_at(5.0, 5.0, Heading::S), survivor_at(15.0, 15.0, Heading::N)};
    config.scripted_triggers = {{0.5, 0, {5.0, 5.0}, Heading::S}};

    RunResult base = run_scenario(config);

    ScenarioConfig trimmed = config;
    trimmed.survivors.pop_back();  // UAV 1 never gets a trigger for it
    RunResult cut = run_scenario(trimmed);

    CHECK(same_trajectories(base.uav_trajectories, cut.uav_trajectories));
}

TEST_CASE("zero survivors still completes coverage and returns") {
    ScenarioConfig config = base_config(8.0);
    config.uavs = {uav_at(0.0, 0.0, 4.0)};
    RunResult result = run_scenario(config);
    CHECK(result.completed);
    CHECK_FALSE(result.uav_metrics[0].steps_to_locate.has_value());
    int coverage = 0, returned = 0;
    for (const Event& e : result.events) {
        if (e.type == Event::Type::CoverageComplete) coverage += 1;
        if (e.type == Event::Type::Returned) returned += 1;
    }
    CHECK(coverage == 1);
    CHECK(returned == 1);
    CHECK(result.uav_metrics[0].final_position == WorldPoint{0.0, 0.0});
}

TEST_CASE("hitting max_steps flags the run incomplete") {
    ScenarioConfig config = base_config();
    config.sim.max_steps = 5;
    RunResult result = run_scenario(config);
    CHECK_FALSE(result.completed);
    CHECK(result.ticks == 5);
}

TEST_CASE("overlapping UAV starts are rejected") {
    ScenarioConfig config = base_config();
    config.uavs = {uav_at(0.0, 0.0), uav_at(0.4, 0.4)};
    CHECK_THROWS_AS(init_sim(config), std::invalid_argument);
}
