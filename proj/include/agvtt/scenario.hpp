/*
 * Copyright (C) 2026 The agvtt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#ifndef AGVTT__SCENARIO_HPP
#define AGVTT__SCENARIO_HPP

#include <agvtt/rng.hpp>
#include <agvtt/scheduler.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace agvtt {

//==============================================================================
/// Either a generated grid or an explicit base graph, plus the subdivision
/// level and link radius applied on top of it.
struct GraphSpec
{
  std::optional<int> grid_n;
  Ticks grid_weight = 5000;
  std::optional<ResourceGraph> base;
  std::uint32_t subdivisions = 1;
  std::uint32_t link_radius = 1;
};

struct BuiltGraph
{
  ResourceGraph graph;
  GeoLinks links;
};

/// Throws InvalidParameter for a malformed spec.
BuiltGraph build_graph(const GraphSpec& spec);

//==============================================================================
struct Scenario
{
  GraphSpec graph;
  /// Resource ids refer to the subdivided graph.
  Placement placement;
  std::vector<Demand> demands;
  std::uint64_t seed = 0;
  Preset preset = Preset::full_manhattan;
  Anchoriser anchoriser = Anchoriser::greedy;
  Ticks stop_pickup = 0;
  Ticks stop_dropoff = 0;
  /// Reservations added to the time graph once the timetable is built.
  ReservationSet extra_reservations;
};

nlohmann::json to_json(const Scenario& s);
/// Throws InvalidParameter or nlohmann::json::exception on malformed input.
Scenario scenario_from_json(const nlohmann::json& j);

//==============================================================================
struct GenerateParams
{
  int grid = 10;
  Ticks weight = 5000;
  std::uint32_t subdivisions = 1;
  std::uint32_t link_radius = 1;
  std::size_t agvs = 4;
  std::size_t demands = 10;
  std::uint64_t seed = 0;
  Preset preset = Preset::full_manhattan;
  Anchoriser anchoriser = Anchoriser::greedy;
  Ticks stop_pickup = 0;
  Ticks stop_dropoff = 0;
  /// Demand horizons are drawn uniformly from [0, horizon_max].
  Ticks horizon_max = 0;
};

/// Placement of `count` AGVs on resources whose footprints are pairwise
/// disjoint, i.e. further apart than twice the link radius. Throws
/// InvalidParameter if the graph is too crowded for the draw to succeed.
Placement random_placement(const ResourceGraph& g, const GeoLinks& links,
  std::size_t count, Rng& rng);

/// Demands between distinct non-anchor, non-subdivision nodes.
std::vector<Demand> random_demands(const ResourceGraph& g, std::size_t count,
  Ticks horizon_max, Rng& rng);

Scenario generate_scenario(const GenerateParams& params);

//==============================================================================
/// Returns a description of the first AGV that does not end parked forever
/// on an anchor of its own.
std::optional<std::string> check_anchored(
  const Timetable& tt, const ResourceGraph& g);

struct RunReport
{
  /// Empty on success, otherwise one of validate, anchorise, timetable,
  /// audit.
  std::string failed_stage;
  std::string detail;
  std::optional<Timetable> timetable;
  Metrics metrics;

  bool ok() const { return failed_stage.empty(); }
};

/// validate, anchorise, build the timetable, audit it and collect metrics.
/// Faults are reported rather than thrown.
RunReport run_scenario(const Scenario& s);

/// Same, on an already built graph.
RunReport run_scenario(const Scenario& s, const BuiltGraph& built);

nlohmann::json timetable_json(const Timetable& tt, const Metrics& m);
nlohmann::json fault_json(const RunReport& r);

/// "suite,param,algorithm,runtime_ms,makespan,total_distance"
std::string metrics_csv_header();
std::string metrics_csv_row(std::string_view suite, std::string_view param,
  std::string_view algorithm, const Metrics& m);

} // namespace agvtt

#endif // AGVTT__SCENARIO_HPP
