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

#include <agvtt/scheduler.hpp>

#include <agvtt/geo_reservations.hpp>
#include <agvtt/rng.hpp>

#include <algorithm>
#include <chrono>
#include <memory>

namespace agvtt {

//==============================================================================
void check_demands(const ResourceGraph& g, std::span<const Demand> demands)
{
  for (const auto& d : demands)
  {
    for (const NodeId n : {d.pickup, d.dropoff})
    {
      const std::string where = "demand " + std::to_string(d.id) + " endpoint "
        + std::to_string(n);
      if (n >= g.node_count())
        throw InvalidParameter(where + " is not a node");
      if (g.is_anchor(n))
        throw InvalidParameter(where + " is an anchor");
      if (g.node(n).synthetic)
        throw InvalidParameter(where + " is a subdivision node");
    }
    if (d.horizon.is_infinite())
      throw InvalidParameter(
        "demand " + std::to_string(d.id) + " has an infinite horizon");
  }
}

//==============================================================================
std::string_view to_string(Preset p)
{
  switch (p)
  {
    case Preset::full_zero: return "full-zero";
    case Preset::full_manhattan: return "full-manhattan";
    case Preset::partial_dijkstras: return "partial-dijkstras";
    case Preset::partial_manhattan: return "partial-manhattan";
  }
  return "unknown";
}

//==============================================================================
std::optional<Preset> parse_preset(std::string_view name)
{
  for (const auto p : AllPresets)
  {
    if (to_string(p) == name)
      return p;
  }
  return std::nullopt;
}

//==============================================================================
std::string_view to_string(Anchoriser a)
{
  return a == Anchoriser::naive ? "naive" : "greedy";
}

//==============================================================================
std::optional<Anchoriser> parse_anchoriser(std::string_view name)
{
  if (name == "naive")
    return Anchoriser::naive;
  if (name == "greedy")
    return Anchoriser::greedy;
  return std::nullopt;
}

//==============================================================================
std::vector<Step> AgvSchedule::flattened_steps() const
{
  std::vector<Step> out;
  for (const auto& path : paths)
  {
    for (const auto& step : path.steps)
    {
      if (!out.empty() && out.back().resource == step.resource
        && out.back().end == step.start)
      {
        out.back().end = step.end;
        continue;
      }
      out.push_back(step);
    }
  }
  return out;
}

//==============================================================================
std::vector<TimePath> Timetable::all_paths() const
{
  std::vector<TimePath> out;
  for (const auto& a : agvs)
    out.insert(out.end(), a.paths.begin(), a.paths.end());
  return out;
}

namespace {

//==============================================================================
class Planner
{
public:
  Planner(const ResourceGraph& g, const ScheduleConfig& config)
  : _g(g),
    _config(config)
  {
    // Do nothing
  }

  /// Guidance for searches that want manhattan distance, falling back to a
  /// distance table when the graph has no positions.
  Guide informed()
  {
    if (_g.embedded())
      return Guide::manhattan();
    if (!_table)
      _table = std::make_unique<DistanceTable>(_g);
    return Guide::from_table(*_table);
  }

  Guide anchoring_guide()
  {
    switch (_config.preset)
    {
      case Preset::full_manhattan:
      case Preset::partial_manhattan:
        return informed();
      default:
        return Guide::zero();
    }
  }

  std::optional<TimePath> plan(const TimeGraph& tg, const AgvSchedule& sched,
    const SourceSpec& source, const Route& route)
  {
    SearchOptions options;
    ResourceMask mask;
    switch (_config.preset)
    {
      case Preset::full_zero:
        break;
      case Preset::full_manhattan:
        options.guide = informed();
        break;
      case Preset::partial_dijkstras:
      case Preset::partial_manhattan:
      {
        std::vector<ResourceId> previous;
        for (const auto& step : sched.paths.back().steps)
          previous.push_back(step.resource);

        const Guide spatial = _config.preset == Preset::partial_manhattan
          ? informed() : Guide::zero();
        mask = build_partial_subgraph(
          _g, previous, route, _config.topology, spatial);
        options.subgraph = &mask;
        break;
      }
    }

    return time_path(tg, _g, std::span(&source, 1), route, options);
  }

private:
  const ResourceGraph& _g;
  const ScheduleConfig& _config;
  std::unique_ptr<DistanceTable> _table;
};

} // anonymous namespace

//==============================================================================
Timetable build_timetable(const ResourceGraph& g, const GeoLinks& links,
  const Placement& placement, std::span<const Demand> demands,
  const ScheduleConfig& config)
{
  const auto clock_start = std::chrono::steady_clock::now();

  const auto report = validate(g, placement.size());
  if (!report.ok())
  {
    throw InvalidParameter("graph violates assumption "
      + std::to_string(*report.violated) + ": " + report.detail);
  }
  check_placement(g, placement);
  check_demands(g, demands);
  if (links.resource_count() != g.resource_count())
    throw InvalidParameter("geographic links do not match the graph");

  Timetable tt;
  tt.time_graph = TimeGraph(g.resource_count());
  tt.node_count = g.node_count();
  Rng rng(config.seed);
  Planner planner(g, config);

  initialise_reservations(tt.time_graph, placement, links);
  auto anchored = anchorise(config.anchoriser, tt.time_graph, g, links,
      placement, rng, planner.anchoring_guide());
  tt.anchorisation_attempts = anchored.attempts;
  if (anchored.stalled)
    throw AnchorisationStalled(
      "anchorisation stalled before every AGV was anchored");

  std::vector<std::optional<NodeId>> parked;
  for (const auto& [agv, start] : placement)
  {
    AgvSchedule sched;
    sched.agv = agv;
    sched.paths.push_back(std::move(anchored.paths.at(agv)));
    parked.push_back(g.node_of(sched.paths.back().steps.back().resource));
    tt.agvs.push_back(std::move(sched));
  }

  std::vector<Demand> queue(demands.begin(), demands.end());
  std::stable_sort(queue.begin(), queue.end(),
    [](const Demand& a, const Demand& b) { return a.horizon < b.horizon; });

  const auto anchors = g.anchors();
  std::size_t next = 0;
  while (next < queue.size())
  {
    const TimePoint horizon = queue[next].horizon;
    std::size_t batch_end = next;
    while (batch_end < queue.size() && queue[batch_end].horizon == horizon)
      ++batch_end;

    if (config.before_batch)
      config.before_batch(horizon, tt.time_graph);

    // (demand index, fleet index)
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t i = next; i < batch_end; ++i)
      order.emplace_back(i, rng.below(tt.agvs.size()));
    rng.shuffle(order);

    for (const auto& [di, fi] : order)
    {
      const Demand& demand = queue[di];
      AgvSchedule& sched = tt.agvs[fi];
      Step& parking = sched.paths.back().steps.back();
      const NodeId from = g.node_of(parking.resource);
      const TimePoint depart = std::max(horizon, parking.start);

      std::vector<NodeId> free;
      for (const NodeId a : anchors)
      {
        bool taken = false;
        for (std::size_t j = 0; j < parked.size(); ++j)
          taken = taken || (j != fi && parked[j] == a);
        if (!taken)
          free.push_back(a);
      }
      const NodeId destination = rng.pick(free);

      const Route route{{
          Stage{{demand.pickup}, TimePoint(config.stop_pickup)},
          Stage{{demand.dropoff}, TimePoint(config.stop_dropoff)},
          Stage{{destination}, Infinity}}};
      const auto source = SourceSpec::at_node(sched.agv, from, depart);

      auto path = planner.plan(tt.time_graph, sched, source, route);
      if (!path)
      {
        ++tt.time_path_failures;
        throw PlanningFault("no time-path for demand "
          + std::to_string(demand.id) + " on AGV " + std::to_string(sched.agv));
      }

      tt.time_graph.remove_all(footprint_reservations(parking.resource,
          sched.agv, Interval{depart, Infinity}, links));
      parking.end = depart;
      tt.time_graph.reserve_all(boundary_reservations(*path, links));

      sched.paths.push_back(std::move(*path));
      sched.demands.push_back(demand.id);
      parked[fi] = destination;
    }

    next = batch_end;
  }

  tt.runtime_ms = std::chrono::duration<double, std::milli>(
    std::chrono::steady_clock::now() - clock_start).count();
  return tt;
}

//==============================================================================
Metrics metrics(const Timetable& tt)
{
  Metrics m;
  m.runtime_ms = tt.runtime_ms;
  for (const auto& sched : tt.agvs)
  {
    if (!sched.paths.empty())
      m.makespan = std::max(m.makespan, sched.paths.back().arrival);
    for (const auto& path : sched.paths)
    {
      for (const auto& step : path.steps)
      {
        if (step.resource.value >= tt.node_count)
          m.total_distance += (step.end - step.start).ticks();
      }
    }
  }
  return m;
}

} // namespace agvtt
