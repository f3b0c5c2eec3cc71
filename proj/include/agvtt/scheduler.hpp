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

#ifndef AGVTT__SCHEDULER_HPP
#define AGVTT__SCHEDULER_HPP

#include <agvtt/anchorisation.hpp>
#include <agvtt/path.hpp>
#include <agvtt/resource_graph.hpp>
#include <agvtt/time_graph.hpp>
#include <agvtt/time_pathing.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace agvtt {

/// A transport request that becomes known at its horizon time.
struct Demand
{
  std::uint32_t id = 0;
  NodeId pickup = 0;
  NodeId dropoff = 0;
  TimePoint horizon{0};
};

/// Throws InvalidParameter if a demand endpoint is an anchor, a synthetic
/// subdivision node, or not a node of g.
void check_demands(const ResourceGraph& g, std::span<const Demand> demands);

//==============================================================================
/// Search configuration used to plan routes.
///   full_zero          whole graph, no guidance
///   full_manhattan     whole graph, manhattan guidance
///   partial_dijkstras  chain subgraph from unguided spatial searches
///   partial_manhattan  chain subgraph from manhattan-guided spatial searches
/// On graphs without positions, manhattan guidance falls back to an
/// all-pairs distance table.
enum class Preset
{
  full_zero,
  full_manhattan,
  partial_dijkstras,
  partial_manhattan
};

std::string_view to_string(Preset p);
std::optional<Preset> parse_preset(std::string_view name);
std::string_view to_string(Anchoriser a);
std::optional<Anchoriser> parse_anchoriser(std::string_view name);

inline constexpr Preset AllPresets[] = {Preset::full_zero,
  Preset::full_manhattan, Preset::partial_dijkstras,
  Preset::partial_manhattan};

struct ScheduleConfig
{
  Preset preset = Preset::full_manhattan;
  Anchoriser anchoriser = Anchoriser::greedy;
  Ticks stop_pickup = 0;
  Ticks stop_dropoff = 0;
  std::uint64_t seed = 0;
  Topology topology = Topology::chain;

  /// Called with the time graph as it stands just before each horizon batch
  /// is planned.
  std::function<void(TimePoint, const TimeGraph&)> before_batch;
};

//==============================================================================
struct AgvSchedule
{
  AgvId agv = 0;
  /// Committed time-paths in order; the first is the anchoring path. Each
  /// path's final step is cut short where the next one departs.
  std::vector<TimePath> paths;
  /// Demand ids served, in the order their routes were planned.
  std::vector<std::uint32_t> demands;

  /// All steps in order with touching occupations of one resource merged.
  std::vector<Step> flattened_steps() const;
};

struct Timetable
{
  std::vector<AgvSchedule> agvs;
  TimeGraph time_graph;
  /// Resources below this id are nodes, the rest are edges.
  std::size_t node_count = 0;
  std::size_t anchorisation_attempts = 0;
  std::size_t time_path_failures = 0;
  double runtime_ms = 0.0;

  std::vector<TimePath> all_paths() const;
};

/// Anchorise the fleet, then plan every demand with the conservative myopic
/// strategy: demands are taken in horizon batches; within a batch each demand
/// goes to a uniformly random AGV, routes are planned in a random order and
/// each ends on a uniformly random anchor not parked on by another AGV.
/// Earlier reservations are never altered except the tail of an AGV's own
/// parking, which is cut where its next route departs.
///
/// Throws InvalidParameter for an invalid graph or demand set, and
/// AnchorisationStalled or PlanningFault if the fleet cannot be anchored or a
/// route cannot be planned.
Timetable build_timetable(const ResourceGraph& g, const GeoLinks& links,
  const Placement& placement, std::span<const Demand> demands,
  const ScheduleConfig& config);

/// Raised when anchorisation cannot park every AGV.
class AnchorisationStalled : public PlanningFault
{
public:
  using PlanningFault::PlanningFault;
};

struct Metrics
{
  /// Latest final-anchor arrival over the fleet.
  TimePoint makespan{0};
  /// Sum of traversed edge weights.
  Ticks total_distance = 0;
  double runtime_ms = 0.0;
};

Metrics metrics(const Timetable& tt);

} // namespace agvtt

#endif // AGVTT__SCHEDULER_HPP
