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

#ifndef AGVTT__GEO_RESERVATIONS_HPP
#define AGVTT__GEO_RESERVATIONS_HPP

#include <agvtt/path.hpp>
#include <agvtt/resource_graph.hpp>
#include <agvtt/time_graph.hpp>

namespace agvtt {

/// Instrumentation for comparing the two expansion algorithms.
struct GeoWork
{
  /// Resources visited in the per-step inner loops.
  std::size_t touched = 0;
};

/// Reservations for a time-path and its geographic footprint, produced by
/// duplicating every occupation onto every linked resource. A node passed
/// instantly is held for one tick.
ReservationSet naive_reservations(
  const TimePath& path, const GeoLinks& links, GeoWork* work = nullptr);

/// The same reservations as naive_reservations, already merged, produced by
/// tracking only when the footprint enters and leaves each resource. A
/// resource can only leave the footprint through the boundary links of the
/// resource being left, and only join through the boundary of the resource
/// being entered, so only boundary resources are examined per step.
///
/// The resource itself is treated as part of both its linked and boundary
/// sets so the base occupation flows through the same bookkeeping.
///
/// Throws std::invalid_argument if the path is not contiguous.
ReservationSet boundary_reservations(
  const TimePath& path, const GeoLinks& links, GeoWork* work = nullptr);

/// Per (resource, agv): sort and coalesce touching or overlapping intervals.
ReservationSet normalise(ReservationSet rs);

/// Reservations holding r and every resource linked to it over ivl.
ReservationSet footprint_reservations(
  ResourceId r, AgvId agv, Interval ivl, const GeoLinks& links);

} // namespace agvtt

#endif // AGVTT__GEO_RESERVATIONS_HPP
