#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wbe/exports.hpp"
#include "wbe/harness.hpp"
#include "wbe/plots.hpp"
#include "wbe/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Every failure path prints one JSON object to stderr and exits nonzero.
[[noreturn]] void die(const std::string& kind, const std::string& message) {
    json err;
    err["kind"] = kind;
    err["message"] = message;
    std::cerr << err.dump() << std::endl;
    std::exit(1);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        die("io_error", "cannot write " + path.string());
    }
    out << content;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        die("io_error", "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

wbe::ScenarioConfig load_scenario_or_die(const std::string& path) {
    try {
        return wbe::load_scenario(path);
    } catch (const std::invalid_argument& e) {
        die("invalid_config", e.what());
    } catch (const std::domain_error& e) {
        die("invalid_config", e.what());
    } catch (const std::runtime_error& e) {
        die("io_error", e.what());
    }
}

void write_run_outputs(const wbe::RunResult& result, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    std::ostringstream trajectories;
    wbe::write_trajectories_csv(result, trajectories);
    write_file(out_dir / "trajectories.csv", trajectories.str());

    std::ostringstream events;
    wbe::write_events_jsonl(result, events);
    write_file(out_dir / "events.jsonl", events.str());

    write_file(out_dir / "result.json", wbe::result_to_json(result).dump(2) + "\n");
    write_file(out_dir / "timing.json", wbe::timing_to_json(result).dump(2) + "\n");
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::int64_t> seed, const std::string& strategy) {
    wbe::ScenarioConfig config = load_scenario_or_die(scenario_path);
    if (seed) {
        config.sim.rng_seed = static_cast<std::uint64_t>(*seed);
    }
    wbe::RunOptions options;
    try {
        options.strategy = wbe::parse_strategy(strategy);
    } catch (const std::invalid_argument& e) {
        die("invalid_argument", e.what());
    }
    wbe::RunResult result;
    try {
        result = wbe::run_scenario(config, options);
    } catch (const std::exception& e) {
        die("run_error", e.what());
    }
    write_run_outputs(result, out_dir);
    std::cout << "wrote " << (fs::path(out_dir) / "trajectories.csv").string() << ", "
              << (fs::path(out_dir) / "events.jsonl").string() << ", "
              << (fs::path(out_dir) / "result.json").string() << "\n";
    return 0;
}

wbe::BatchConfig load_batch_or_die(const std::string& path) {
    try {
        return wbe::load_batch(path);
    } catch (const std::invalid_argument& e) {
        die("invalid_config", e.what());
    } catch (const std::domain_error& e) {
        die("invalid_config", e.what());
    } catch (const std::runtime_error& e) {
        die("io_error", e.what());
    }
}

int cmd_batch(const std::string& batch_path, const std::string& out_dir,
              std::optional<std::int64_t> seed, std::optional<std::string> strategy,
              bool paired) {
    wbe::BatchConfig config = load_batch_or_die(batch_path);
    if (seed) {
        config.master_seed = static_cast<std::uint64_t>(*seed);
    }
    if (strategy) {
        try {
            config.strategy = wbe::parse_strategy(*strategy);
        } catch (const std::invalid_argument& e) {
            die("invalid_argument", e.what());
        }
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    try {
        wbe::BatchStats stats = wbe::run_batch(config);

        std::ostringstream runs;
        wbe::write_runs_csv(stats, runs);
        write_file(fs::path(out_dir) / "runs.csv", runs.str());
        write_file(fs::path(out_dir) / "summary.json",
                   wbe::summary_to_json(stats).dump(2) + "\n");

        if (paired) {
            wbe::BatchConfig other = config;
            other.strategy = config.strategy == wbe::Strategy::Wbe
                                 ? wbe::Strategy::LawnmowerOnly
                                 : wbe::Strategy::Wbe;
            wbe::BatchStats other_stats = wbe::run_batch(other);
            const wbe::BatchStats& wbe_stats =
                config.strategy == wbe::Strategy::Wbe ? stats : other_stats;
            const wbe::BatchStats& lawn_stats =
                config.strategy == wbe::Strategy::Wbe ? other_stats : stats;
            wbe::ComparisonReport report = wbe::compare_strategies(wbe_stats, lawn_stats);
            write_file(fs::path(out_dir) / "comparison.json",
                       wbe::comparison_to_json(report).dump(2) + "\n");
            std::cout << wbe::comparison_to_text(report);
        }
    } catch (const std::exception& e) {
        die("batch_error", e.what());
    }
    std::cout << "wrote " << (fs::path(out_dir) / "runs.csv").string() << ", "
              << (fs::path(out_dir) / "summary.json").string() << "\n";
    return 0;
}

int cmd_plot(const std::string& kind, const std::string& input,
             const std::string& scenario_path, const std::string& output,
             const wbe::PlotStyle& style) {
    std::string svg;
    try {
        if (kind == "weight_heatmap" || kind == "partition_map") {
            std::istringstream in(slurp(input));
            wbe::GridData grid = wbe::parse_grid_csv(in);
            if (kind == "weight_heatmap") {
                svg = wbe::render_weight_heatmap_svg(grid, style);
            } else {
                std::vector<wbe::WorldPoint> seeds;
                double cell = 1.0;
                if (!scenario_path.empty()) {
                    wbe::ScenarioConfig config = load_scenario_or_die(scenario_path);
                    for (const wbe::UavConfig& u : config.uavs) {
                        seeds.push_back(u.start);
                    }
                    cell = config.env.cell_size_m();
                }
                svg = wbe::render_partition_svg(grid, seeds, cell, style);
            }
        } else {
            std::istringstream in(slurp(input));
            wbe::TrajectoryData data = wbe::parse_trajectories_csv(in);
            if (kind == "trajectory_xy") {
                svg = wbe::render_trajectory_xy_svg(data, style);
            } else if (kind == "trajectory3d") {
                svg = wbe::render_trajectory3d_svg(data, style);
            } else if (kind == "position_vs_time") {
                svg = wbe::render_position_vs_time_svg(data, style);
            } else {
                die("invalid_argument", "unknown plot kind '" + kind + "'");
            }
        }
    } catch (const std::invalid_argument& e) {
        die("invalid_input", e.what());
    }
    write_file(output, svg);
    std::cout << "wrote " << output << "\n";
    return 0;
}

int cmd_inspect(const std::string& scenario_path) {
    wbe::ScenarioConfig config = load_scenario_or_die(scenario_path);
    const wbe::GridEnvironment& env = config.env;
    std::cout << "environment: " << env.width_m() << " m x " << env.height_m()
              << " m, cell " << env.cell_size_m() << " m (" << env.cols() << " x "
              << env.rows() << " cells)\n";

    std::vector<wbe::WorldPoint> seeds;
    for (const wbe::UavConfig& u : config.uavs) {
        seeds.push_back(u.start);
    }
    try {
        wbe::PartitionMap partition = wbe::voronoi_partition(env, seeds);
        int total = 0;
        for (int k = 0; k < partition.seed_count(); ++k) {
            int size = static_cast<int>(partition.cells_of(k).size());
            total += size;
            const wbe::UavConfig& u = config.uavs[k];
            wbe::SensorFootprint fp = wbe::uav_footprint(u);
            std::cout << "uav " << k << ": start (" << u.start.x << ", " << u.start.y
                      << "), partition " << size << " cells, footprint side "
                      << wbe::format_fixed(fp.side_m(), 1) << " m, track spacing "
                      << wbe::track_spacing_cells(fp, env) << " cells\n";
        }
        std::cout << "partition total: " << total << " cells\n";
    } catch (const std::domain_error& e) {
        die("invalid_config", e.what());
    }

    for (std::size_t k = 0; k < config.survivors.size(); ++k) {
        const wbe::SurvivorConfig& s = config.survivors[k];
        wbe::CellIndex origin = wbe::world_to_cell(s.position, env);
        std::int64_t n = wbe::horizon_cells(env, origin);
        wbe::SectorWeights w = wbe::compute_sector_weights(n);
        std::cout << "survivor " << k << ": (" << s.position.x << ", " << s.position.y
                  << ") heading " << wbe::heading_name(s.heading) << ", horizon n=" << n
                  << ", weights w1=" << w.w1 << " w2=" << w.w2 << " w3=" << w.w3
                  << " w4=" << w.w4 << " w5=" << w.w5 << "\n";
    }
    return 0;
}

int cmd_partition_dump(const std::string& scenario_path, const std::string& output) {
    wbe::ScenarioConfig config = load_scenario_or_die(scenario_path);
    std::vector<wbe::WorldPoint> seeds;
    for (const wbe::UavConfig& u : config.uavs) {
        seeds.push_back(u.start);
    }
    try {
        wbe::PartitionMap partition = wbe::voronoi_partition(config.env, seeds);
        std::ostringstream out;
        wbe::write_partition_csv(partition, out);
        write_file(output, out.str());
    } catch (const std::domain_error& e) {
        die("invalid_config", e.what());
    }
    std::cout << "wrote " << output << "\n";
    return 0;
}

int cmd_weights_dump(const std::string& scenario_path, int survivor,
                     const std::vector<double>& position, const std::string& heading,
                     const std::string& output) {
    wbe::ScenarioConfig config = load_scenario_or_die(scenario_path);
    wbe::SurvivorReport report;
    if (!position.empty()) {
        report.last_known = {position[0], position[1]};
        try {
            report.heading = wbe::parse_heading(heading.empty() ? "E" : heading);
        } catch (const std::domain_error& e) {
            die("invalid_argument", e.what());
        }
    } else {
        if (survivor < 0 || survivor >= static_cast<int>(config.survivors.size())) {
            die("invalid_argument",
                "no survivor with index " + std::to_string(survivor) + " in the scenario");
        }
        report.survivor_id = survivor;
        report.last_known = config.survivors[survivor].position;
        report.heading = config.survivors[survivor].heading;
    }
    try {
        wbe::WeightMap map = wbe::build_weight_map(
            config.env, report, {config.planner.left_before_right});
        std::ostringstream out;
        wbe::write_weights_csv(map, out);
        write_file(output, out.str());
    } catch (const std::domain_error& e) {
        die("invalid_config", e.what());
    }
    std::cout << "wrote " << output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-UAV search-and-rescue planner and simulator"};
    app.require_subcommand(1);

    std::string scenario_path, batch_path, out_dir = "out", strategy = "wbe";
    std::optional<std::int64_t> seed;
    std::optional<std::string> batch_strategy;
    bool paired = false;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario and export results");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out-dir", out_dir, "output directory");
    run->add_option("--seed", seed, "override sim.rng_seed");
    run->add_option("--strategy", strategy, "wbe or lawnmower");

    CLI::App* batch = app.add_subcommand("batch", "run a seeded Monte-Carlo batch");
    batch->add_option("batch", batch_path, "batch JSON file")->required();
    batch->add_option("--out-dir", out_dir, "output directory");
    batch->add_option("--seed", seed, "override master_seed");
    batch->add_option("--strategy", batch_strategy, "wbe or lawnmower");
    batch->add_flag("--paired", paired, "also run the opposite strategy and compare");

    std::string plot_kind, plot_input, plot_scenario, plot_output;
    wbe::PlotStyle style;
    CLI::App* plot = app.add_subcommand("plot", "render an SVG figure from exported data");
    plot->add_option("--kind", plot_kind,
                     "trajectory3d | trajectory_xy | position_vs_time | weight_heatmap | "
                     "partition_map")
        ->required();
    plot->add_option("--input", plot_input, "input CSV file")->required();
    plot->add_option("--scenario", plot_scenario, "scenario JSON (seed markers)");
    plot->add_option("--output", plot_output, "output SVG file")->required();
    plot->add_option("--width", style.width_px, "SVG width in px");
    plot->add_option("--height", style.height_px, "SVG height in px");

    CLI::App* inspect = app.add_subcommand("inspect", "print derived quantities");
    inspect->add_option("scenario", scenario_path, "scenario JSON file")->required();

    std::string dump_output;
    CLI::App* partition_dump =
        app.add_subcommand("partition-dump", "write the Voronoi owner grid as CSV");
    partition_dump->add_option("scenario", scenario_path, "scenario JSON file")->required();
    partition_dump->add_option("--output", dump_output, "output CSV file")->required();

    int weights_survivor = 0;
    std::vector<double> weights_position;
    std::string weights_heading;
    CLI::App* weights_dump =
        app.add_subcommand("weights-dump", "write a report's weight grid as CSV");
    weights_dump->add_option("scenario", scenario_path, "scenario JSON file")->required();
    weights_dump->add_option("--survivor", weights_survivor,
                             "survivor index for the hypothetical report");
    weights_dump->add_option("--position", weights_position, "report position x y")
        ->expected(2);
    weights_dump->add_option("--heading", weights_heading, "report heading (with --position)");
    weights_dump->add_option("--output", dump_output, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        die("usage_error", e.what());
    }

    if (run->parsed()) {
        return cmd_run(scenario_path, out_dir, seed, strategy);
    }
    if (batch->parsed()) {
        return cmd_batch(batch_path, out_dir, seed, batch_strategy, paired);
    }
    if (plot->parsed()) {
        return cmd_plot(plot_kind, plot_input, plot_scenario, plot_output, style);
    }
    if (inspect->parsed()) {
        return cmd_inspect(scenario_path);
    }
    if (partition_dump->parsed()) {
        return cmd_partition_dump(scenario_path, dump_output);
    }
    if (weights_dump->parsed()) {
        return cmd_weights_dump(scenario_path, weights_survivor, weights_position,
                                weights_heading, dump_output);
    }
    return 0;
}
