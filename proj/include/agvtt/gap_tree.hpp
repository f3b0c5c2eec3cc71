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

#ifndef AGVTT__GAP_TREE_HPP
#define AGVTT__GAP_TREE_HPP

#include <agvtt/agv_set.hpp>
#include <agvtt/time.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agvtt {

//==============================================================================
/// Reservation store for a single resource.
///
/// Every AGV's reservations live in one ordered sequence of non-overlapping
/// stored intervals. Each stored interval carries the set of AGVs holding it,
/// so different AGVs may overlap while one AGV's reservations never overlap
/// themselves. After every mutation no two touching neighbours carry equal
/// sets, which keeps the representation canonical.
///
/// Gap queries are answered relative to one AGV: time held only by that AGV
/// counts as free, since an AGV cannot collide with itself.
///
/// Insert, remove and gap queries cost O(log n + k) where k is the number of
/// stored intervals overlapping the argument. The touched() counter records
/// how many stored intervals each operation visited.
class GapTree
{
public:
  struct Entry
  {
    Interval interval;
    AgvSet agvs;
  };

  /// Reserve ivl for agv. Re-inserting over the AGV's own reservation is
  /// idempotent on the overlap.
  void insert(AgvId agv, Interval ivl);

  /// Release agv's reservation over ivl. Releasing time the AGV does not
  /// hold is a no-op.
  void remove(AgvId agv, Interval ivl);

  /// Maximal sub-intervals of window that are free for agv, clipped to
  /// window, sorted ascending.
  std::vector<Interval> gap_query(AgvId agv, Interval window) const;

  /// Same as gap_query but the returned gaps are not clipped: each one is
  /// the full free interval that intersects window.
  std::vector<Interval> maximal_gaps(AgvId agv, Interval window) const;

  /// The maximal free interval for agv containing t, if t is free.
  std::optional<Interval> gap_containing(AgvId agv, TimePoint t) const;

  /// Visit every stored interval that overlaps window, in ascending order.
  template<typename F>
  void for_each_overlapping(Interval window, F&& f) const;

  std::vector<Entry> entries() const;
  std::size_t size() const { return _nodes.size(); }
  bool empty() const { return _nodes.empty(); }

  /// The latest stored interval, if any.
  std::optional<Entry> last() const;

  /// One line per stored interval: "start end id,id,...".
  std::string dump() const;

  /// Full scan of the structural invariants (sorted, disjoint, non-empty
  /// sets, no touching neighbours with equal sets).
  bool check_invariants() const;

  std::size_t touched() const { return _touched; }
  void reset_touched() const { _touched = 0; }

private:
  struct Node
  {
    TimePoint end;
    AgvSet agvs;
  };
  using Map = std::map<std::uint64_t, Node>;

  void split_at(TimePoint t);
  void merge_around(TimePoint lo, TimePoint hi);

  Map _nodes;
  mutable std::size_t _touched = 0;
};

//==============================================================================
template<typename F>
void GapTree::for_each_overlapping(Interval window, F&& f) const
{
  auto it = _nodes.upper_bound(window.start.ticks());
  if (it != _nodes.begin())
  {
    auto prev = std::prev(it);
    if (prev->second.end > window.start)
      it = prev;
  }

  for (; it != _nodes.end() && TimePoint(it->first) < window.end; ++it)
  {
    ++_touched;
    f(Entry{Interval{TimePoint(it->first), it->second.end}, it->second.agvs});
  }
}

} // namespace agvtt

#endif // AGVTT__GAP_TREE_HPP
