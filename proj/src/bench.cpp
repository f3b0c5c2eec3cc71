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

#include <agvtt/bench.hpp>

#include <agvtt/geo_reservations.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace agvtt {

namespace {

//==============================================================================
double elapsed_ms(std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double, std::milli>(
    std::chrono::steady_clock::now() - since).count();
}

} // anonymous namespace

//==============================================================================
TimePath timed_walk(const ResourceGraph& g, AgvId agv, const SpatialPath& path,
  TimePoint start)
{
  TimePath out;
  out.agv = agv;
  TimePoint t = start;
  const auto& rs = path.resources;
  for (std::size_t i = 0; i < rs.size(); ++i)
  {
    const bool endpoint = i == 0 || i + 1 == rs.size();
    TimePoint end = t;
    if (g.is_edge(rs[i]))
      end = t + g.edge(g.edge_of(rs[i])).weight;
    else if (endpoint)
      end = t + 1;

    if (i + 1 == rs.size())
      out.arrival = t;
    out.steps.push_back(Step{rs[i], t, end});
    t = end;
  }
  out.stage_arrivals.push_back(out.arrival);
  return out;
}

//==============================================================================
SpatialPath corner_to_corner(const ResourceGraph& g)
{
  const auto anchors = g.anchors();
  if (anchors.size() < 2)
    throw InvalidParameter("graph needs two anchors");

  const NodeId from = anchors.front();
  const NodeId to = anchors.back();
  std::vector<bool> forbidden(g.node_count(), false);
  for (const NodeId a : anchors)
    forbidden[a] = a != from && a != to;

  auto path = spatial_path(g, from, to, forbidden, Guide::zero());
  if (!path)
    throw PlanningFault("no path between the outermost anchors");
  return *path;
}

//==============================================================================
std::string bench_csv_header()
{
  return metrics_csv_header() + ",check";
}

//==============================================================================
std::string bench_csv_row(const BenchRow& row)
{
  return metrics_csv_row(row.suite, row.param, row.algorithm, row.metrics)
    + "," + row.check;
}

//==============================================================================
std::vector<BenchRow> bench_anchorisers(int n, Ticks weight,
  std::span<const std::size_t> agv_counts, std::uint32_t link_radius,
  std::uint64_t seed)
{
  GraphSpec spec;
  spec.grid_n = n;
  spec.grid_weight = weight;
  spec.link_radius = link_radius;
  const auto built = build_graph(spec);
  const auto& g = built.graph;

  std::vector<BenchRow> rows;
  for (const std::size_t count : agv_counts)
  {
    Rng placement_rng(seed + count);
    const auto placement =
      random_placement(g, built.links, count, placement_rng);

    for (const auto which : {Anchoriser::naive, Anchoriser::greedy})
    {
      BenchRow row{"anchorisers", std::to_string(count),
        std::string(to_string(which)), {}, "ok"};

      TimeGraph tg(g.resource_count());
      Rng rng(seed);
      const auto start = std::chrono::steady_clock::now();
      initialise_reservations(tg, placement, built.links);
      const auto result = anchorise(which, tg, g, built.links, placement, rng);
      row.metrics.runtime_ms = elapsed_ms(start);

      std::vector<TimePath> paths;
      for (const auto& [agv, path] : result.paths)
      {
        paths.push_back(path);
        row.metrics.makespan = std::max(row.metrics.makespan, path.arrival);
        for (const auto& step : path.steps)
        {
          if (g.is_edge(step.resource))
            row.metrics.total_distance += (step.end - step.start).ticks();
        }
      }

      if (result.stalled)
        row.check = "stalled";
      else if (const auto conflict = audit_safety(tg, paths))
        row.check = conflict->describe();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

//==============================================================================
std::vector<BenchRow> bench_presets(std::span<const int> sizes, Ticks weight,
  std::size_t agvs, std::size_t demands, std::uint64_t seed)
{
  std::vector<BenchRow> rows;
  for (const int n : sizes)
  {
    GenerateParams params;
    params.grid = n;
    params.weight = weight;
    params.agvs = agvs;
    params.demands = demands;
    params.seed = seed;
    auto scenario = generate_scenario(params);
    const auto built = build_graph(scenario.graph);

    for (const auto preset : AllPresets)
    {
      scenario.preset = preset;
      const auto report = run_scenario(scenario, built);
      BenchRow row{"presets", std::to_string(n),
        std::string(to_string(preset)), report.metrics, "ok"};
      if (!report.ok())
        row.check = report.failed_stage + ": " + report.detail;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

//==============================================================================
std::vector<BenchRow> bench_reservers(int n, Ticks weight,
  std::span<const std::uint32_t> levels, std::size_t repeats)
{
  std::vector<BenchRow> rows;
  for (const std::uint32_t s : levels)
  {
    GraphSpec spec;
    spec.grid_n = n;
    spec.grid_weight = weight;
    spec.subdivisions = s;
    spec.link_radius = s;
    const auto built = build_graph(spec);
    const auto route = corner_to_corner(built.graph);
    const auto path = timed_walk(built.graph, 0, route, TimePoint(0));

    ReservationSet naive;
    ReservationSet boundary;
    double naive_ms = 0.0;
    double boundary_ms = 0.0;
    // Single calls take microseconds, so each sample averages a batch.
    constexpr int Batch = 20;
    for (std::size_t i = 0; i < std::max<std::size_t>(repeats, 1); ++i)
    {
      auto start = std::chrono::steady_clock::now();
      for (int k = 0; k < Batch; ++k)
        naive = naive_reservations(path, built.links);
      const double a = elapsed_ms(start) / Batch;

      start = std::chrono::steady_clock::now();
      for (int k = 0; k < Batch; ++k)
        boundary = boundary_reservations(path, built.links);
      const double b = elapsed_ms(start) / Batch;

      naive_ms = i == 0 ? a : std::min(naive_ms, a);
      boundary_ms = i == 0 ? b : std::min(boundary_ms, b);
    }

    const std::string check =
      normalise(naive) == normalise(boundary) ? "equal" : "differ";
    const Metrics m{path.arrival, route.cost, 0.0};

    rows.push_back(BenchRow{"reservers", std::to_string(s), "naive", m, check});
    rows.back().metrics.runtime_ms = naive_ms;
    rows.push_back(
      BenchRow{"reservers", std::to_string(s), "boundary", m, check});
    rows.back().metrics.runtime_ms = boundary_ms;
  }
  return rows;
}

} // namespace agvtt
