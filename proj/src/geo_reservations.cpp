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

#include <agvtt/geo_reservations.hpp>

#include <algorithm>
#include <span>
#include <tuple>

namespace agvtt {

//==============================================================================
ReservationSet naive_reservations(
  const TimePath& path, const GeoLinks& links, GeoWork* work)
{
  ReservationSet out;
  for (const auto& step : path.steps)
  {
    const Interval ivl = step.held();
    out.push_back(Reservation{step.resource, path.agv, ivl});
    for (const auto p : links.linked(step.resource))
      out.push_back(Reservation{p, path.agv, ivl});

    if (work)
      work->touched += 1 + links.linked(step.resource).size();
  }
  return out;
}

namespace {

//==============================================================================
/// Per-resource scratch reused across calls on one thread. Entries are
/// stamped with the call's epoch so stale ones never need clearing.
struct Scratch
{
  struct Slot
  {
    std::uint64_t swallowed_epoch = 0;
    std::uint64_t emitted_epoch = 0;
    TimePoint swallowed_start;
    TimePoint entered;
    std::size_t emitted = 0;
  };

  std::vector<Slot> slots;
  std::vector<ResourceId> swallowed;
  std::uint64_t epoch = 0;

  void begin(std::size_t resource_count)
  {
    if (slots.size() < resource_count)
      slots.resize(resource_count);
    swallowed.clear();
    ++epoch;
  }

  bool is_swallowed(ResourceId r) const
  {
    return slots[r.value].swallowed_epoch == epoch;
  }

  void swallow(ResourceId r, TimePoint t)
  {
    Slot& s = slots[r.value];
    if (s.swallowed_epoch != epoch)
    {
      s.swallowed_epoch = epoch;
      swallowed.push_back(r);
    }
    s.swallowed_start = t;
  }

  TimePoint take(ResourceId r)
  {
    Slot& s = slots[r.value];
    s.swallowed_epoch = 0;
    return s.swallowed_start;
  }

  /// Appends, extending the previous reservation of r when the two touch.
  void emit(ReservationSet& out, ResourceId r, AgvId agv, TimePoint start,
    TimePoint end)
  {
    if (!(start < end))
      return;
    Slot& s = slots[r.value];
    if (s.emitted_epoch == epoch && out[s.emitted].interval.end == start)
    {
      out[s.emitted].interval.end = end;
      return;
    }
    s.emitted_epoch = epoch;
    s.emitted = out.size();
    out.push_back(Reservation{r, agv, Interval{start, end}});
  }
};

} // anonymous namespace

//==============================================================================
ReservationSet boundary_reservations(
  const TimePath& path, const GeoLinks& links, GeoWork* work)
{
  ReservationSet out;
  if (path.steps.empty())
    return out;
  if (!path.contiguous())
    throw std::invalid_argument("boundary reservations need a contiguous path");

  thread_local Scratch scratch_tls;
  auto& scratch = scratch_tls;
  scratch.begin(links.resource_count());

  // The footprint of the previous step is `prev` plus `ring`, every member
  // of which was entered at slots[..].entered and is held until prev_end.
  const auto& first = path.steps.front();
  ResourceId prev = first.resource;
  std::span<const ResourceId> ring = links.linked(first.resource);
  TimePoint prev_end = first.held().end;
  scratch.slots[prev.value].entered = first.start;
  for (const auto p : ring)
    scratch.slots[p.value].entered = first.start;

  for (std::size_t i = 1; i < path.steps.size(); ++i)
  {
    const Step& step = path.steps[i];
    const auto linked = links.linked(step.resource);
    const auto boundary = links.boundary(step.resource);

    const auto leave = [&](ResourceId m)
      {
        const TimePoint since = scratch.slots[m.value].entered;
        if (m == step.resource
          || std::binary_search(linked.begin(), linked.end(), m))
        {
          scratch.swallow(m, since);
        }
        else
        {
          scratch.emit(out, m, path.agv, since, prev_end);
        }
      };
    leave(prev);
    for (const auto m : ring)
      leave(m);

    const auto enter = [&](ResourceId b)
      {
        scratch.slots[b.value].entered = scratch.is_swallowed(b)
          ? scratch.take(b) : step.start;
      };
    enter(step.resource);
    for (const auto b : boundary)
      enter(b);

    if (work)
      work->touched += ring.size() + boundary.size() + 2;

    prev = step.resource;
    ring = boundary;
    prev_end = step.held().end;
  }

  const TimePoint end = path.steps.back().held().end;
  for (const auto r : scratch.swallowed)
  {
    if (scratch.is_swallowed(r))
      scratch.emit(out, r, path.agv, scratch.take(r), end);
  }
  scratch.emit(out, prev, path.agv, scratch.slots[prev.value].entered,
    prev_end);
  for (const auto m : ring)
    scratch.emit(out, m, path.agv, scratch.slots[m.value].entered, prev_end);

  if (work)
    work->touched += scratch.swallowed.size() + ring.size() + 1;

  return out;
}

//==============================================================================
ReservationSet normalise(ReservationSet rs)
{
  std::sort(rs.begin(), rs.end(), [](const Reservation& a, const Reservation& b)
    {
      return std::tie(a.resource, a.agv, a.interval.start, a.interval.end)
        < std::tie(b.resource, b.agv, b.interval.start, b.interval.end);
    });

  ReservationSet out;
  for (const auto& r : rs)
  {
    if (!out.empty() && out.back().resource == r.resource
      && out.back().agv == r.agv && r.interval.start <= out.back().interval.end)
    {
      out.back().interval.end = std::max(out.back().interval.end,
          r.interval.end);
      continue;
    }
    out.push_back(r);
  }
  return out;
}

//==============================================================================
ReservationSet footprint_reservations(
  ResourceId r, AgvId agv, Interval ivl, const GeoLinks& links)
{
  ReservationSet out{Reservation{r, agv, ivl}};
  for (const auto p : links.linked(r))
    out.push_back(Reservation{p, agv, ivl});
  return out;
}

} // namespace agvtt
