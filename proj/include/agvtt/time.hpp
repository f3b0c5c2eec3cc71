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

#ifndef AGVTT__TIME_HPP
#define AGVTT__TIME_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace agvtt {

/// Durations that can never be infinite (edge weights, stop lengths).
using Ticks = std::uint64_t;

using AgvId = std::uint32_t;

//==============================================================================
/// An instant on the integer tick timeline, or the distinguished value
/// infinity which compares greater than every finite instant. Addition
/// saturates at infinity.
class TimePoint
{
public:
  static constexpr std::uint64_t InfiniteTicks =
    std::numeric_limits<std::uint64_t>::max();

  constexpr TimePoint() = default;
  constexpr explicit TimePoint(std::uint64_t ticks)
  : _ticks(ticks)
  {
    // Do nothing
  }

  static constexpr TimePoint infinity() { return TimePoint(InfiniteTicks); }

  constexpr std::uint64_t ticks() const { return _ticks; }
  constexpr bool is_infinite() const { return _ticks == InfiniteTicks; }
  constexpr bool is_finite() const { return _ticks != InfiniteTicks; }

  friend constexpr auto operator<=>(TimePoint, TimePoint) = default;

  friend constexpr TimePoint operator+(TimePoint t, Ticks d)
  {
    if (t.is_infinite() || d >= InfiniteTicks - t._ticks)
      return infinity();
    return TimePoint(t._ticks + d);
  }

  friend constexpr TimePoint operator+(TimePoint a, TimePoint b)
  {
    if (b.is_infinite())
      return infinity();
    return a + b._ticks;
  }

  /// Difference of two instants. Infinity minus a finite instant stays
  /// infinite; subtracting a later instant is a logic error.
  friend constexpr TimePoint operator-(TimePoint a, TimePoint b)
  {
    if (a.is_infinite())
      return infinity();
    if (b > a)
      throw std::logic_error("TimePoint subtraction underflow");
    return TimePoint(a._ticks - b._ticks);
  }

  TimePoint& operator+=(Ticks d) { return *this = *this + d; }

private:
  std::uint64_t _ticks = 0;
};

inline constexpr TimePoint Infinity = TimePoint::infinity();

std::string to_string(TimePoint t);
std::ostream& operator<<(std::ostream& os, TimePoint t);

//==============================================================================
/// Half-open interval [start, end). A valid interval has a finite start and
/// start < end.
struct Interval
{
  TimePoint start;
  TimePoint end;

  constexpr bool valid() const { return start.is_finite() && start < end; }
  constexpr bool contains(TimePoint t) const { return start <= t && t < end; }
  constexpr bool covers(const Interval& o) const
  {
    return start <= o.start && o.end <= end;
  }
  constexpr bool overlaps(const Interval& o) const
  {
    return start < o.end && o.start < end;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

/// Builds an interval, throwing std::invalid_argument if it is not valid.
Interval make_interval(TimePoint start, TimePoint end);
inline Interval make_interval(std::uint64_t start, std::uint64_t end)
{
  return make_interval(TimePoint(start), TimePoint(end));
}

std::ostream& operator<<(std::ostream& os, const Interval& ivl);

} // namespace agvtt

#endif // AGVTT__TIME_HPP
