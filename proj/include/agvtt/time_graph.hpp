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

#ifndef AGVTT__TIME_GRAPH_HPP
#define AGVTT__TIME_GRAPH_HPP

#include <agvtt/gap_tree.hpp>
#include <agvtt/path.hpp>
#include <agvtt/resource_graph.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agvtt {

struct Reservation
{
  ResourceId resource;
  AgvId agv = 0;
  Interval interval;

  friend bool operator==(const Reservation&, const Reservation&) = default;
};

using ReservationSet = std::vector<Reservation>;

//==============================================================================
/// One gap tree per resource of a bound graph.
class TimeGraph
{
public:
  TimeGraph() = default;
  explicit TimeGraph(std::size_t resource_count)
  : _trees(resource_count)
  {
    // Do nothing
  }

  std::size_t resource_count() const { return _trees.size(); }

  const GapTree& tree(ResourceId r) const { return _trees.at(r.value); }
  GapTree& tree(ResourceId r) { return _trees.at(r.value); }

  /// Insert every reservation. Throws std::out_of_range before touching
  /// anything if a resource is unknown.
  void reserve_all(std::span<const Reservation> rs);

  /// Inverse of reserve_all.
  void remove_all(std::span<const Reservation> rs);

  /// CSV "resource,agv,start,end", one row per maximal reservation of each
  /// AGV on each resource, ordered by resource then AGV then start.
  std::string dump_csv() const;

private:
  void check_resources(std::span<const Reservation> rs) const;

  std::vector<GapTree> _trees;
};

//==============================================================================
struct SafetyConflict
{
  ResourceId resource;
  AgvId agv = 0;
  AgvId other = 0;
  Interval occupation;

  std::string describe() const;
};

/// Checks that during every occupation of every path no other AGV holds a
/// reservation on the occupied resource. Instantaneous passages are checked
/// over their single tick. Returns the first violation found.
std::optional<SafetyConflict> audit_safety(
  const TimeGraph& tg, std::span<const TimePath> paths);

} // namespace agvtt

#endif // AGVTT__TIME_GRAPH_HPP
