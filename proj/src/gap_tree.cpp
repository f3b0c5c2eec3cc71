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

#include <agvtt/gap_tree.hpp>

#include <algorithm>
#include <sstream>

namespace agvtt {

//==============================================================================
std::string to_string(TimePoint t)
{
  if (t.is_infinite())
    return "inf";
  return std::to_string(t.ticks());
}

//==============================================================================
std::ostream& operator<<(std::ostream& os, TimePoint t)
{
  return os << to_string(t);
}

//==============================================================================
Interval make_interval(TimePoint start, TimePoint end)
{
  const Interval ivl{start, end};
  if (!ivl.valid())
  {
    throw std::invalid_argument(
      "invalid interval [" + to_string(start) + ", " + to_string(end) + ")");
  }
  return ivl;
}

//==============================================================================
std::ostream& operator<<(std::ostream& os, const Interval& ivl)
{
  return os << "[" << ivl.start << ", " << ivl.end << ")";
}

namespace {

void require_valid(const Interval& ivl)
{
  if (!ivl.valid())
    make_interval(ivl.start, ivl.end);
}

} // anonymous namespace

//==============================================================================
void GapTree::split_at(TimePoint t)
{
  if (t.is_infinite())
    return;

  auto it = _nodes.upper_bound(t.ticks());
  if (it == _nodes.begin())
    return;

  --it;
  ++_touched;
  if (TimePoint(it->first) < t && t < it->second.end)
  {
    Node tail{it->second.end, it->second.agvs};
    it->second.end = t;
    _nodes.emplace_hint(std::next(it), t.ticks(), std::move(tail));
  }
}

//==============================================================================
void GapTree::merge_around(TimePoint lo, TimePoint hi)
{
  auto it = _nodes.lower_bound(lo.ticks());
  if (it != _nodes.begin())
    --it;

  while (it != _nodes.end())
  {
    auto next = std::next(it);
    if (next == _nodes.end() || TimePoint(next->first) > hi)
      break;

    ++_touched;
    if (it->second.end == TimePoint(next->first)
      && it->second.agvs == next->second.agvs)
    {
      it->second.end = next->second.end;
      _nodes.erase(next);
    }
    else
    {
      it = next;
    }
  }
}

//==============================================================================
void GapTree::insert(AgvId agv, Interval ivl)
{
  require_valid(ivl);
  split_at(ivl.start);
  split_at(ivl.end);

  auto it = _nodes.lower_bound(ivl.start.ticks());
  TimePoint cursor = ivl.start;
  while (cursor < ivl.end)
  {
    ++_touched;
    if (it == _nodes.end() || TimePoint(it->first) >= ivl.end)
    {
      _nodes.emplace_hint(it, cursor.ticks(), Node{ivl.end, AgvSet(agv)});
      break;
    }

    if (cursor < TimePoint(it->first))
    {
      _nodes.emplace_hint(
        it, cursor.ticks(), Node{TimePoint(it->first), AgvSet(agv)});
    }

    it->second.agvs.insert(agv);
    cursor = it->second.end;
    ++it;
  }

  merge_around(ivl.start, ivl.end);
}

//==============================================================================
void GapTree::remove(AgvId agv, Interval ivl)
{
  require_valid(ivl);
  split_at(ivl.start);
  split_at(ivl.end);

  auto it = _nodes.lower_bound(ivl.start.ticks());
  while (it != _nodes.end() && TimePoint(it->first) < ivl.end)
  {
    ++_touched;
    it->second.agvs.erase(agv);
    if (it->second.agvs.empty())
      it = _nodes.erase(it);
    else
      ++it;
  }

  merge_around(ivl.start, ivl.end);
}

//==============================================================================
std::vector<Interval> GapTree::maximal_gaps(AgvId agv, Interval window) const
{
  require_valid(window);
  const auto blocking = [agv](const Node& n) { return !n.agvs.only(agv); };

  // The first node starting strictly after the window start. Everything
  // before it is scanned backwards to find where the current gap begins.
  const auto first_after = _nodes.upper_bound(window.start.ticks());

  TimePoint gap_start(0);
  for (auto back = first_after; back != _nodes.begin();)
  {
    --back;
    ++_touched;
    if (blocking(back->second))
    {
      gap_start = back->second.end;
      break;
    }
  }

  std::vector<Interval> gaps;
  for (auto it = first_after; it != _nodes.end(); ++it)
  {
    if (gap_start >= window.end)
      return gaps;

    ++_touched;
    if (!blocking(it->second))
      continue;

    const TimePoint block_start(it->first);
    if (gap_start < block_start)
      gaps.push_back(Interval{gap_start, block_start});

    gap_start = std::max(gap_start, it->second.end);
  }

  if (gap_start < window.end)
    gaps.push_back(Interval{gap_start, Infinity});

  return gaps;
}

//==============================================================================
std::vector<Interval> GapTree::gap_query(AgvId agv, Interval window) const
{
  auto gaps = maximal_gaps(agv, window);
  for (auto& g : gaps)
  {
    g.start = std::max(g.start, window.start);
    g.end = std::min(g.end, window.end);
  }
  return gaps;
}

//==============================================================================
std::optional<Interval> GapTree::gap_containing(AgvId agv, TimePoint t) const
{
  if (t.is_infinite())
    return std::nullopt;

  const auto gaps = maximal_gaps(agv, Interval{t, t + 1});
  if (gaps.empty() || !gaps.front().contains(t))
    return std::nullopt;

  return gaps.front();
}

//==============================================================================
std::vector<GapTree::Entry> GapTree::entries() const
{
  std::vector<Entry> out;
  out.reserve(_nodes.size());
  for (const auto& [start, node] : _nodes)
    out.push_back(Entry{Interval{TimePoint(start), node.end}, node.agvs});
  return out;
}

//==============================================================================
std::optional<GapTree::Entry> GapTree::last() const
{
  if (_nodes.empty())
    return std::nullopt;

  const auto& [start, node] = *_nodes.rbegin();
  return Entry{Interval{TimePoint(start), node.end}, node.agvs};
}

//==============================================================================
std::string GapTree::dump() const
{
  std::ostringstream out;
  for (const auto& [start, node] : _nodes)
  {
    out << start << ' ' << to_string(node.end) << ' ';
    bool first = true;
    node.agvs.for_each([&](AgvId id)
      {
        if (!first)
          out << ',';
        out << id;
        first = false;
      });
    out << '\n';
  }
  return out.str();
}

//==============================================================================
bool GapTree::check_invariants() const
{
  const Node* prev = nullptr;
  for (const auto& [start, node] : _nodes)
  {
    const TimePoint s(start);
    if (!(s < node.end) || node.agvs.empty())
      return false;

    if (prev)
    {
      if (prev->end > s)
        return false;
      if (prev->end == s && prev->agvs == node.agvs)
        return false;
    }

    prev = &node;
  }
  return true;
}

} // namespace agvtt
