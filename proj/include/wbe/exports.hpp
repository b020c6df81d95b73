#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "wbe/harness.hpp"
#include "wbe/partition.hpp"
#include "wbe/planner.hpp"
#include "wbe/simulator.hpp"

namespace wbe {

// Fixed-precision decimal formatting so identical values always serialize
// to identical bytes.
std::string format_fixed(double value, int decimals = 6);

// One sample per line: t,agent_kind,agent_id,x,y,z,mode.
void write_trajectories_csv(const RunResult& result, std::ostream& out);

// One event object per line with type, t, and type-specific fields.
void write_events_jsonl(const RunResult& result, std::ostream& out);

// Deterministic run summary. Wall-clock planning time is excluded; see
// timing_to_json.
nlohmann::json result_to_json(const RunResult& result);

// Wall-clock planning time per UAV. Not reproducible across runs, so kept
// out of the deterministic outputs.
nlohmann::json timing_to_json(const RunResult& result);

// One row per run: run,seed,survivors,located,ticks_to_locate,
// first_trigger_tick,distance_m,completed. ticks_to_locate is the first
// survivor's; empty when never located.
void write_runs_csv(const BatchStats& stats, std::ostream& out);

nlohmann::json summary_to_json(const BatchStats& stats);

nlohmann::json comparison_to_json(const ComparisonReport& report);

std::string comparison_to_text(const ComparisonReport& report);

// Row-major weight grid, one CSV line per row (j ascending), one integer
// per cell.
void write_weights_csv(const WeightMap& map, std::ostream& out);

// Row-major owner grid, same layout as write_weights_csv.
void write_partition_csv(const PartitionMap& map, std::ostream& out);

}  // namespace wbe
