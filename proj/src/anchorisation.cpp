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

#include <agvtt/anchorisation.hpp>

#include <agvtt/geo_reservations.hpp>
#include <agvtt/time_pathing.hpp>

#include <set>

namespace agvtt {

//==============================================================================
void check_placement(const ResourceGraph& g, const Placement& placement)
{
  std::set<ResourceId> used;
  for (const auto& [agv, r] : placement)
  {
    if (r.value >= g.resource_count())
    {
      throw InvalidParameter("AGV " + std::to_string(agv)
        + " starts on unknown resource " + std::to_string(r.value));
    }
    if (!used.insert(r).second)
    {
      throw InvalidParameter("AGV " + std::to_string(agv)
        + " shares its starting resource " + std::to_string(r.value));
    }
  }
}

//==============================================================================
void initialise_reservations(
  TimeGraph& tg, const Placement& placement, const GeoLinks& links)
{
  for (const auto& [agv, r] : placement)
  {
    const auto rs = footprint_reservations(
      r, agv, Interval{TimePoint(0), Infinity}, links);
    tg.reserve_all(rs);
  }
}

namespace {

SourceSpec source_for(const ResourceGraph& g, AgvId agv, ResourceId r)
{
  if (g.is_node(r))
    return SourceSpec::at_node(agv, g.node_of(r), TimePoint(0));
  return SourceSpec::on_edge(agv, g.edge_of(r), 0, TimePoint(0));
}

/// Anchors that one of the searching AGVs could still park on: either nobody
/// holds them indefinitely, or only a searching AGV does.
template<typename Searching>
std::vector<NodeId> open_anchors(
  const TimeGraph& tg, const ResourceGraph& g, Searching searching)
{
  std::vector<NodeId> out;
  for (const NodeId a : g.anchors())
  {
    const auto last = tg.tree(g.resource_of_node(a)).last();
    if (last && last->interval.end.is_infinite())
    {
      const auto holders = last->agvs.to_vector();
      if (holders.size() != 1 || !searching(holders.front()))
        continue;
    }
    out.push_back(a);
  }
  return out;
}

void commit(TimeGraph& tg, const GeoLinks& links, ResourceId start,
  const TimePath& path)
{
  tg.remove_all(footprint_reservations(
      start, path.agv, Interval{TimePoint(0), Infinity}, links));
  tg.reserve_all(boundary_reservations(path, links));
}

} // anonymous namespace

//==============================================================================
AnchorisationResult naive_anchorise(TimeGraph& tg, const ResourceGraph& g,
  const GeoLinks& links, const Placement& placement, Rng& rng,
  const Guide& guide)
{
  check_placement(g, placement);

  AnchorisationResult result;
  std::vector<AgvId> pending;
  for (const auto& [agv, r] : placement)
    pending.push_back(agv);

  while (!pending.empty())
  {
    rng.shuffle(pending);
    std::vector<AgvId> still_pending;
    for (const AgvId agv : pending)
    {
      const ResourceId start = placement.at(agv);
      const auto targets = open_anchors(
        tg, g, [agv](AgvId holder) { return holder == agv; });
      ++result.attempts;
      if (targets.empty())
      {
        still_pending.push_back(agv);
        continue;
      }

      const Route route{{Stage{targets, Infinity}}};
      const SourceSpec source = source_for(g, agv, start);
      auto path = time_path(tg, g, std::span(&source, 1), route,
          SearchOptions{guide, nullptr});
      if (!path)
      {
        still_pending.push_back(agv);
        continue;
      }

      commit(tg, links, start, *path);
      result.paths.emplace(agv, std::move(*path));
    }

    if (still_pending.size() == pending.size())
    {
      result.stalled = true;
      break;
    }
    pending = std::move(still_pending);
  }

  return result;
}

//==============================================================================
AnchorisationResult greedy_anchorise(TimeGraph& tg, const ResourceGraph& g,
  const GeoLinks& links, const Placement& placement, Rng&,
  const Guide& guide)
{
  check_placement(g, placement);

  AnchorisationResult result;
  std::map<AgvId, ResourceId> pending = placement;
  while (!pending.empty())
  {
    const auto targets = open_anchors(
      tg, g, [&](AgvId holder) { return pending.count(holder) > 0; });
    ++result.attempts;
    if (targets.empty())
    {
      result.stalled = true;
      break;
    }

    std::vector<SourceSpec> sources;
    for (const auto& [agv, r] : pending)
      sources.push_back(source_for(g, agv, r));

    const Route route{{Stage{targets, Infinity}}};
    auto path = time_path(tg, g, sources, route, SearchOptions{guide, nullptr});
    if (!path)
    {
      result.stalled = true;
      break;
    }

    commit(tg, links, pending.at(path->agv), *path);
    pending.erase(path->agv);
    const AgvId agv = path->agv;
    result.paths.emplace(agv, std::move(*path));
  }

  return result;
}

//==============================================================================
AnchorisationResult anchorise(Anchoriser which, TimeGraph& tg,
  const ResourceGraph& g, const GeoLinks& links, const Placement& placement,
  Rng& rng, const Guide& guide)
{
  if (which == Anchoriser::naive)
    return naive_anchorise(tg, g, links, placement, rng, guide);
  return greedy_anchorise(tg, g, links, placement, rng, guide);
}

} // namespace agvtt
