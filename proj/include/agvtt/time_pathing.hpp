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

#ifndef AGVTT__TIME_PATHING_HPP
#define AGVTT__TIME_PATHING_HPP

#include <agvtt/path.hpp>
#include <agvtt/resource_graph.hpp>
#include <agvtt/time_graph.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agvtt {

//==============================================================================
/// Where and when an AGV may start a search. An AGV on an edge is moving
/// towards the edge's head (endpoint b) and has already covered `elapsed`
/// ticks of it.
struct SourceSpec
{
  AgvId agv = 0;
  NodeId node = 0;
  std::optional<EdgeId> edge;
  Ticks elapsed = 0;
  TimePoint earliest;

  static SourceSpec at_node(AgvId agv, NodeId node, TimePoint earliest)
  {
    return SourceSpec{agv, node, std::nullopt, 0, earliest};
  }

  static SourceSpec on_edge(
    AgvId agv, EdgeId edge, Ticks elapsed, TimePoint earliest)
  {
    return SourceSpec{agv, 0, edge, elapsed, earliest};
  }
};

/// A set of parallel destinations, one of which must be occupied for at
/// least min_stop ticks inside a single free window. Only the final stage of
/// a route may have an infinite stop.
struct Stage
{
  std::vector<NodeId> targets;
  TimePoint min_stop{0};
};

struct Route
{
  std::vector<Stage> stages;
};

/// Throws InvalidParameter if the route cannot be searched on g.
void check_route(const ResourceGraph& g, const Route& route);

//==============================================================================
/// Admissible estimate of the time still needed to finish a route from a
/// node at a given stage: travel to the nearest target of that stage, the
/// cheapest hops between the targets of each later pair of stages, and all
/// finite stop durations still ahead.
class LowerBound
{
public:
  LowerBound(const ResourceGraph& g, const Route& route, Guide guide);

  Ticks operator()(NodeId at, std::size_t stage) const;

private:
  const ResourceGraph& _graph;
  const Route& _route;
  Guide _guide;
  std::vector<Ticks> _suffix;
  mutable std::vector<std::vector<Ticks>> _to_stage;
};

/// One-shot form of LowerBound for a label at `at` with `remaining` stages
/// ahead (the first of which is the one currently being pursued).
Ticks lower_bound(const ResourceGraph& g, const Guide& guide, NodeId at,
  std::span<const Stage> remaining);

//==============================================================================
struct SearchOptions
{
  Guide guide;

  /// When set, only resources flagged here may be used.
  const ResourceMask* subgraph = nullptr;
};

struct SearchStats
{
  std::size_t labels_created = 0;
  std::size_t labels_expanded = 0;
};

/// Earliest-arrival time-path from any of the sources through every stage of
/// the route, in order, using only time each source's AGV sees as free.
///
/// AGVs may wait on nodes within a free window but cross edges without
/// stopping, taking exactly the edge weight. When several sources are given,
/// the path belongs to whichever source reaches the final stage first (ties
/// go to the lower AGV id). Returns nullopt only when no feasible time-path
/// exists.
std::optional<TimePath> time_path(const TimeGraph& tg, const ResourceGraph& g,
  std::span<const SourceSpec> sources, const Route& route,
  const SearchOptions& options = {}, SearchStats* stats = nullptr);

/// Re-checks a path against the time graph: contiguity, adjacency of
/// consecutive resources, and that every occupation lies inside a window free
/// for the path's AGV. Returns a description of the first problem.
std::optional<std::string> check_time_path(
  const TimeGraph& tg, const ResourceGraph& g, const TimePath& path);

//==============================================================================
enum class Topology
{
  star,
  chain
};

/// Resources for a partial search of an anchored route.
///
/// The subgraph holds every resource of the AGV's previous anchoring path
/// (whose last resource is the anchor it is parked on) plus spatial paths
/// linking that anchor to the route's destinations. Star links the anchor to
/// each destination; chain links the anchor to the first destination and
/// each destination to the next. Spatial paths never pass through anchors
/// other than their own endpoints. Every route stage must be a single node.
///
/// Throws PlanningFault if a spatial path does not exist.
ResourceMask build_partial_subgraph(const ResourceGraph& g,
  std::span<const ResourceId> anchor_path, const Route& route,
  Topology topology, const Guide& spatial_guide);

/// Raised when a search that is guaranteed to succeed does not.
class PlanningFault : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace agvtt

#endif // AGVTT__TIME_PATHING_HPP
