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

#ifndef AGVTT__ANCHORISATION_HPP
#define AGVTT__ANCHORISATION_HPP

#include <agvtt/path.hpp>
#include <agvtt/resource_graph.hpp>
#include <agvtt/rng.hpp>
#include <agvtt/time_graph.hpp>

#include <map>
#include <optional>

namespace agvtt {

/// Starting resource of every AGV. Resources must be pairwise distinct.
using Placement = std::map<AgvId, ResourceId>;

/// Throws InvalidParameter if two AGVs share a resource or a resource does
/// not exist in g.
void check_placement(const ResourceGraph& g, const Placement& placement);

enum class Anchoriser
{
  naive,
  greedy
};

struct AnchorisationResult
{
  /// The anchoring time-path of every anchored AGV.
  std::map<AgvId, TimePath> paths;

  /// True if some AGVs could not be anchored.
  bool stalled = false;

  /// Number of time-path searches performed.
  std::size_t attempts = 0;
};

/// Reserve every AGV's starting resource and its footprint from tick 0 to
/// infinity.
void initialise_reservations(
  TimeGraph& tg, const Placement& placement, const GeoLinks& links);

/// Sweep the unanchored AGVs in a freshly shuffled order each pass, trying to
/// time-path each one to any anchor still free, with an infinite final stop.
/// Stops when everyone is anchored or a whole pass anchors nobody.
///
/// Expects initialise_reservations to have been applied.
AnchorisationResult naive_anchorise(TimeGraph& tg, const ResourceGraph& g,
  const GeoLinks& links, const Placement& placement, Rng& rng,
  const Guide& guide = {});

/// Repeatedly run one search seeded from every unanchored AGV at once and
/// anchor whichever AGV reaches a free anchor first.
///
/// Expects initialise_reservations to have been applied.
AnchorisationResult greedy_anchorise(TimeGraph& tg, const ResourceGraph& g,
  const GeoLinks& links, const Placement& placement, Rng& rng,
  const Guide& guide = {});

AnchorisationResult anchorise(Anchoriser which, TimeGraph& tg,
  const ResourceGraph& g, const GeoLinks& links, const Placement& placement,
  Rng& rng, const Guide& guide = {});

} // namespace agvtt

#endif // AGVTT__ANCHORISATION_HPP
