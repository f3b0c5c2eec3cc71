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

#include <agvtt/time_graph.hpp>

#include <map>
#include <sstream>

namespace agvtt {

//==============================================================================
void TimeGraph::check_resources(std::span<const Reservation> rs) const
{
  for (const auto& r : rs)
  {
    if (r.resource.value >= _trees.size())
    {
      throw std::out_of_range(
        "reservation on unknown resource " + std::to_string(r.resource.value));
    }
  }
}

//==============================================================================
void TimeGraph::reserve_all(std::span<const Reservation> rs)
{
  check_resources(rs);
  for (const auto& r : rs)
    _trees[r.resource.value].insert(r.agv, r.interval);
}

//==============================================================================
void TimeGraph::remove_all(std::span<const Reservation> rs)
{
  check_resources(rs);
  for (const auto& r : rs)
    _trees[r.resource.value].remove(r.agv, r.interval);
}

//==============================================================================
std::string TimeGraph::dump_csv() const
{
  std::ostringstream out;
  out << "resource,agv,start,end\n";
  for (std::size_t i = 0; i < _trees.size(); ++i)
  {
    // Stored intervals are fragmented by other AGVs' boundaries, so coalesce
    // each AGV's pieces before printing.
    std::map<AgvId, std::vector<Interval>> per_agv;
    for (const auto& entry : _trees[i].entries())
    {
      entry.agvs.for_each([&](AgvId id)
        {
          auto& list = per_agv[id];
          if (!list.empty() && list.back().end == entry.interval.start)
            list.back().end = entry.interval.end;
          else
            list.push_back(entry.interval);
        });
    }

    for (const auto& [agv, list] : per_agv)
    {
      for (const auto& ivl : list)
      {
        out << i << ',' << agv << ',' << to_string(ivl.start) << ','
            << to_string(ivl.end) << '\n';
      }
    }
  }
  return out.str();
}

//==============================================================================
std::string SafetyConflict::describe() const
{
  std::ostringstream out;
  out << "AGV " << agv << " occupies resource " << resource.value << " during "
      << occupation << " while AGV " << other << " holds a reservation on it";
  return out.str();
}

//==============================================================================
std::optional<SafetyConflict> audit_safety(
  const TimeGraph& tg, std::span<const TimePath> paths)
{
  for (const auto& path : paths)
  {
    for (const auto& step : path.steps)
    {
      const Interval occupation = step.held();

      std::optional<SafetyConflict> conflict;
      tg.tree(step.resource).for_each_overlapping(occupation,
        [&](const GapTree::Entry& entry)
        {
          if (conflict || entry.agvs.only(path.agv))
            return;
          entry.agvs.for_each([&](AgvId id)
            {
              if (!conflict && id != path.agv)
              {
                conflict = SafetyConflict{
                  step.resource, path.agv, id, occupation};
              }
            });
        });

      if (conflict)
        return conflict;
    }
  }
  return std::nullopt;
}

} // namespace agvtt
