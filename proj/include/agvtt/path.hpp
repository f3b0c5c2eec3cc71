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

#ifndef AGVTT__TIME_PATH_TYPES_HPP
#define AGVTT__TIME_PATH_TYPES_HPP

#include <agvtt/resource_graph.hpp>
#include <agvtt/time.hpp>

#include <vector>

namespace agvtt {

/// One resource occupation of a time-path. A node passed through without
/// stopping has start == end; every other step has start < end.
struct Step
{
  ResourceId resource;
  TimePoint start;
  TimePoint end;

  bool instantaneous() const { return start == end; }

  /// Time the resource is held for: a passage holds it for one tick.
  Interval held() const
  {
    return instantaneous() ? Interval{start, start + 1} : Interval{start, end};
  }

  friend bool operator==(const Step&, const Step&) = default;
};

/// Contiguous sequence of occupations for one AGV: each step starts exactly
/// when the previous one ends.
struct TimePath
{
  AgvId agv = 0;
  std::vector<Step> steps;

  /// Arrival at the final stage's target.
  TimePoint arrival;

  /// Arrival time at the target of each stage, in route order.
  std::vector<TimePoint> stage_arrivals;

  bool contiguous() const
  {
    for (std::size_t i = 1; i < steps.size(); ++i)
    {
      if (steps[i - 1].end != steps[i].start)
        return false;
    }
    return true;
  }
};

} // namespace agvtt

#endif // AGVTT__TIME_PATH_TYPES_HPP
