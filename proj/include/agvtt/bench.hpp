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

#ifndef AGVTT__BENCH_HPP
#define AGVTT__BENCH_HPP

#include <agvtt/scenario.hpp>

#include <string>
#include <vector>

namespace agvtt {

/// Follow a spatial path at full speed starting at `start`: the first node is
/// held for one tick, nodes in between are passed instantly, edges take their
/// weight, and the last node is held for one tick.
TimePath timed_walk(const ResourceGraph& g, AgvId agv, const SpatialPath& path,
  TimePoint start);

/// Spatial path between the first and last anchor of a grid, avoiding every
/// other anchor.
SpatialPath corner_to_corner(const ResourceGraph& g);

struct BenchRow
{
  std::string suite;
  std::string param;
  std::string algorithm;
  Metrics metrics;
  /// "ok", "equal", or a description of what went wrong.
  std::string check;
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

/// Naive and greedy anchorisation time for each fleet size on an n x n grid.
std::vector<BenchRow> bench_anchorisers(int n, Ticks weight,
  std::span<const std::size_t> agv_counts, std::uint32_t link_radius,
  std::uint64_t seed);

/// Full pipeline under every preset for each grid size.
std::vector<BenchRow> bench_presets(std::span<const int> sizes, Ticks weight,
  std::size_t agvs, std::size_t demands, std::uint64_t seed);

/// Naive and boundary reservation time for a corner-to-corner path on an
/// n x n grid at each subdivision level, with link radius equal to the level.
/// Each timing is the minimum over `repeats` runs.
std::vector<BenchRow> bench_reservers(int n, Ticks weight,
  std::span<const std::uint32_t> levels, std::size_t repeats);

} // namespace agvtt

#endif // AGVTT__BENCH_HPP
