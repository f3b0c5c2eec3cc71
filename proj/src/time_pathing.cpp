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

#include <agvtt/time_pathing.hpp>

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace agvtt {

namespace {

constexpr Ticks Unbounded = std::numeric_limits<Ticks>::max();

Ticks saturating_add(Ticks a, Ticks b)
{
  return b > Unbounded - a ? Unbounded : a + b;
}

} // anonymous namespace

//==============================================================================
void check_route(const ResourceGraph& g, const Route& route)
{
  if (route.stages.empty())
    throw InvalidParameter("route has no stages");

  for (std::size_t k = 0; k < route.stages.size(); ++k)
  {
    const auto& stage = route.stages[k];
    if (stage.targets.empty())
      throw InvalidParameter("stage " + std::to_string(k) + " has no targets");
    for (const NodeId n : stage.targets)
    {
      if (n >= g.node_count())
        throw InvalidParameter("stage target " + std::to_string(n)
          + " is not a node");
    }
    if (stage.min_stop.is_infinite() && k + 1 != route.stages.size())
    {
      throw InvalidParameter(
        "only the final stage may have an infinite stop duration");
    }
  }
}

//==============================================================================
LowerBound::LowerBound(const ResourceGraph& g, const Route& route, Guide guide)
: _graph(g),
  _route(route),
  _guide(guide)
{
  if (_guide.kind == GuideKind::zero)
    return;

  if (_guide.kind == GuideKind::manhattan)
    _graph.manhattan_unit();

  const std::size_t k = route.stages.size();
  _suffix.assign(k + 1, 0);
  for (std::size_t i = k; i-- > 0;)
  {
    Ticks hop = 0;
    if (i + 1 < k)
    {
      hop = Unbounded;
      for (const NodeId a : route.stages[i].targets)
      {
        for (const NodeId b : route.stages[i + 1].targets)
          hop = std::min(hop, estimate(_graph, _guide, a, b));
      }
    }

    const auto stop = route.stages[i].min_stop;
    const Ticks stop_ticks = stop.is_finite() ? stop.ticks() : 0;
    _suffix[i] = saturating_add(saturating_add(_suffix[i + 1], hop),
        stop_ticks);
  }

  _to_stage.resize(k);
}

//==============================================================================
Ticks LowerBound::operator()(NodeId at, std::size_t stage) const
{
  if (_guide.kind == GuideKind::zero)
    return 0;

  auto& cache = _to_stage[stage];
  if (cache.empty())
    cache.assign(_graph.node_count(), Unbounded);

  Ticks& travel = cache[at];
  if (travel == Unbounded)
  {
    Ticks best = Unbounded;
    for (const NodeId t : _route.stages[stage].targets)
      best = std::min(best, estimate(_graph, _guide, at, t));
    travel = best;
    if (best == Unbounded)
      return Unbounded;
  }

  return saturating_add(travel, _suffix[stage]);
}

//==============================================================================
Ticks lower_bound(const ResourceGraph& g, const Guide& guide, NodeId at,
  std::span<const Stage> remaining)
{
  if (remaining.empty())
    return 0;
  const Route route{std::vector<Stage>(remaining.begin(), remaining.end())};
  return LowerBound(g, route, guide)(at, 0);
}

namespace {

//==============================================================================
enum class Via : std::uint8_t
{
  source,
  edge_source,
  edge,
  stage
};

struct Label
{
  NodeId node;
  std::uint32_t stage;
  AgvId agv;
  std::int32_t parent;
  EdgeId edge;
  Via via;
  /// The free window on node that this label lives in.
  Interval window;
  TimePoint entry;
  /// Departure from the parent's node, or the start time on a source edge.
  TimePoint depart;
};

struct Key
{
  NodeId node;
  std::uint64_t window_start;
  std::uint32_t stage;
  AgvId agv;

  bool operator==(const Key&) const = default;
};

struct KeyHash
{
  std::size_t operator()(const Key& k) const
  {
    std::uint64_t h = k.window_start * 0x9E3779B97F4A7C15ull;
    h ^= (std::uint64_t{k.node} << 32 | k.stage) + 0x632BE59BD9B4E019ull
      + (h << 6) + (h >> 2);
    h ^= std::uint64_t{k.agv} * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct Seen
{
  TimePoint best;
  bool closed = false;
};

struct QueueItem
{
  TimePoint priority;
  TimePoint entry;
  std::uint32_t stage;
  AgvId agv;
  NodeId node;
  std::uint64_t seq;
  std::uint32_t index;
};

/// Lowest priority first, then earliest entry, later stage, lower AGV id,
/// lower resource id, and finally insertion order.
struct QueueOrder
{
  bool operator()(const QueueItem& a, const QueueItem& b) const
  {
    if (a.priority != b.priority)
      return a.priority > b.priority;
    if (a.entry != b.entry)
      return a.entry > b.entry;
    if (a.stage != b.stage)
      return a.stage < b.stage;
    if (a.agv != b.agv)
      return a.agv > b.agv;
    if (a.node != b.node)
      return a.node > b.node;
    return a.seq > b.seq;
  }
};

//==============================================================================
class Search
{
public:
  Search(const TimeGraph& tg, const ResourceGraph& g, const Route& route,
    const SearchOptions& options, SearchStats* stats)
  : _tg(tg),
    _g(g),
    _route(route),
    _subgraph(options.subgraph),
    _bound(g, route, options.guide),
    _stats(stats)
  {
    _is_target.resize(route.stages.size());
    for (std::size_t k = 0; k < route.stages.size(); ++k)
    {
      _is_target[k].assign(g.node_count(), 0);
      for (const NodeId n : route.stages[k].targets)
        _is_target[k][n] = 1;
    }
  }

  std::optional<TimePath> run(std::span<const SourceSpec> sources)
  {
    for (const auto& src : sources)
      seed(src);

    const std::uint32_t last = static_cast<std::uint32_t>(
      _route.stages.size() - 1);

    while (!_open.empty())
    {
      const QueueItem item = _open.top();
      _open.pop();

      const Label label = _labels[item.index];
      auto& seen = _seen[key_of(label)];
      if (seen.closed || label.entry > seen.best)
        continue;
      seen.closed = true;

      if (_stats)
        ++_stats->labels_expanded;

      if (_is_target[label.stage][label.node])
      {
        const TimePoint stop = _route.stages[label.stage].min_stop;
        if (label.stage == last)
        {
          const bool holds = stop.is_infinite()
            ? label.window.end.is_infinite()
            : label.entry + stop <= label.window.end;
          if (holds)
            return reconstruct(item.index);
        }
        else
        {
          const TimePoint next = label.entry + stop;
          if (next < label.window.end)
          {
            Label spawn = label;
            spawn.stage = label.stage + 1;
            spawn.parent = static_cast<std::int32_t>(item.index);
            spawn.via = Via::stage;
            spawn.entry = next;
            spawn.depart = next;
            push(spawn);
          }
        }
      }

      expand(item.index);
    }

    return std::nullopt;
  }

private:
  bool allowed(ResourceId r) const
  {
    return !_subgraph || (*_subgraph)[r.value];
  }

  static Key key_of(const Label& l)
  {
    return Key{l.node, l.window.start.ticks(), l.stage, l.agv};
  }

  void push(const Label& label)
  {
    auto [it, inserted] = _seen.try_emplace(key_of(label), Seen{label.entry});
    if (!inserted)
    {
      if (it->second.closed || it->second.best <= label.entry)
        return;
      it->second.best = label.entry;
    }

    const auto index = static_cast<std::uint32_t>(_labels.size());
    _labels.push_back(label);
    if (_stats)
      ++_stats->labels_created;

    const Ticks h = _bound(label.node, label.stage);
    _open.push(QueueItem{label.entry + h, label.entry, label.stage, label.agv,
        label.node, _seq++, index});
  }

  void seed(const SourceSpec& src)
  {
    if (src.earliest.is_infinite())
      throw InvalidParameter("source earliest time must be finite");

    if (!src.edge)
    {
      if (src.node >= _g.node_count())
        throw InvalidParameter("source node out of range");
      const auto r = _g.resource_of_node(src.node);
      if (!allowed(r))
        return;
      const auto gap = _tg.tree(r).gap_containing(src.agv, src.earliest);
      if (!gap)
        return;
      push(Label{src.node, 0, src.agv, -1, 0, Via::source, *gap,
          src.earliest, src.earliest});
      return;
    }

    const EdgeId e = *src.edge;
    if (e >= _g.edge_count())
      throw InvalidParameter("source edge out of range");
    const auto& edge = _g.edge(e);
    if (src.elapsed >= edge.weight)
      throw InvalidParameter("source elapsed time must be below edge weight");

    const auto er = _g.resource_of_edge(e);
    const auto hr = _g.resource_of_node(edge.b);
    if (!allowed(er) || !allowed(hr))
      return;

    const TimePoint arrival = src.earliest + (edge.weight - src.elapsed);
    const auto edge_gap = _tg.tree(er).gap_containing(src.agv, src.earliest);
    if (!edge_gap || edge_gap->end < arrival)
      return;
    const auto head_gap = _tg.tree(hr).gap_containing(src.agv, arrival);
    if (!head_gap)
      return;

    push(Label{edge.b, 0, src.agv, -1, e, Via::edge_source, *head_gap, arrival,
        src.earliest});
  }

  void expand(std::uint32_t index)
  {
    const Label from = _labels[index];
    const TimePoint latest_depart = from.window.end;

    for (const auto& arc : _g.out_arcs(from.node))
    {
      const auto er = _g.resource_of_edge(arc.edge);
      const auto vr = _g.resource_of_node(arc.to);
      if (!allowed(er) || !allowed(vr))
        continue;

      const Ticks w = _g.edge(arc.edge).weight;
      const Interval edge_window{from.entry, latest_depart + w};
      for (const auto& eg : _tg.tree(er).gap_query(from.agv, edge_window))
      {
        const TimePoint depart = std::max(from.entry, eg.start);
        if (depart > latest_depart)
          break;
        if (depart + w > eg.end)
          continue;

        // Any departure in [depart, depart_max] keeps the AGV inside this
        // edge window and leaves the node before its own window closes.
        const TimePoint earliest_arrival = depart + w;
        const TimePoint latest_arrival = std::min(eg.end, latest_depart + w);
        const Interval arrivals{earliest_arrival, latest_arrival + 1};

        for (const auto& vg : _tg.tree(vr).maximal_gaps(from.agv, arrivals))
        {
          const TimePoint arrival = std::max(earliest_arrival, vg.start);
          push(Label{arc.to, from.stage, from.agv,
              static_cast<std::int32_t>(index), arc.edge, Via::edge, vg,
              arrival, arrival - TimePoint(w)});
        }
      }
    }
  }

  TimePath reconstruct(std::uint32_t goal) const
  {
    std::vector<std::uint32_t> chain;
    for (std::int32_t i = static_cast<std::int32_t>(goal); i >= 0;
      i = _labels[static_cast<std::size_t>(i)].parent)
    {
      chain.push_back(static_cast<std::uint32_t>(i));
    }
    std::reverse(chain.begin(), chain.end());

    const Label& root = _labels[chain.front()];
    const Label& end = _labels[goal];

    TimePath path;
    path.agv = root.agv;
    if (root.via == Via::edge_source)
    {
      path.steps.push_back(Step{_g.resource_of_edge(root.edge), root.depart,
          root.entry});
    }

    NodeId node = root.node;
    TimePoint since = root.entry;
    for (std::size_t i = 1; i < chain.size(); ++i)
    {
      const Label& l = _labels[chain[i]];
      if (l.via == Via::stage)
      {
        path.stage_arrivals.push_back(_labels[chain[i - 1]].entry);
        continue;
      }

      path.steps.push_back(Step{_g.resource_of_node(node), since, l.depart});
      path.steps.push_back(Step{_g.resource_of_edge(l.edge), l.depart,
          l.entry});
      node = l.node;
      since = l.entry;
    }

    const TimePoint stop = _route.stages.back().min_stop;
    path.steps.push_back(Step{_g.resource_of_node(node), since,
        end.entry + stop});
    path.stage_arrivals.push_back(end.entry);
    path.arrival = end.entry;
    return path;
  }

  const TimeGraph& _tg;
  const ResourceGraph& _g;
  const Route& _route;
  const ResourceMask* _subgraph;
  LowerBound _bound;
  SearchStats* _stats;

  std::vector<std::vector<char>> _is_target;
  std::vector<Label> _labels;
  std::unordered_map<Key, Seen, KeyHash> _seen;
  std::priority_queue<QueueItem, std::vector<QueueItem>, QueueOrder> _open;
  std::uint64_t _seq = 0;
};

} // anonymous namespace

//==============================================================================
std::optional<TimePath> time_path(const TimeGraph& tg, const ResourceGraph& g,
  std::span<const SourceSpec> sources, const Route& route,
  const SearchOptions& options, SearchStats* stats)
{
  check_route(g, route);
  if (tg.resource_count() != g.resource_count())
    throw InvalidParameter("time graph is not bound to this resource graph");
  if (options.subgraph && options.subgraph->size() != g.resource_count())
    throw InvalidParameter("subgraph mask size does not match the graph");

  Search search(tg, g, route, options, stats);
  return search.run(sources);
}

//==============================================================================
std::optional<std::string> check_time_path(
  const TimeGraph& tg, const ResourceGraph& g, const TimePath& path)
{
  const auto adjacent = [&g](ResourceId a, ResourceId b)
    {
      if (a == b)
        return true;
      if (g.is_node(a) && g.is_edge(b))
        std::swap(a, b);
      if (!g.is_edge(a) || !g.is_node(b))
        return false;
      const auto& e = g.edge(g.edge_of(a));
      return e.a == g.node_of(b) || e.b == g.node_of(b);
    };

  for (std::size_t i = 0; i < path.steps.size(); ++i)
  {
    const Step& step = path.steps[i];
    const std::string where = "step " + std::to_string(i) + " on "
      + g.describe(step.resource);

    if (step.resource.value >= g.resource_count())
      return where + ": unknown resource";
    if (step.end < step.start)
      return where + ": ends before it starts";

    if (i > 0)
    {
      if (path.steps[i - 1].end != step.start)
        return where + ": not contiguous with the previous step";
      if (!adjacent(path.steps[i - 1].resource, step.resource))
        return where + ": not adjacent to the previous step";
    }

    if (step.instantaneous())
    {
      if (!g.is_node(step.resource))
        return where + ": edges cannot be crossed instantly";
      if (!tg.tree(step.resource).gap_containing(path.agv, step.start))
        return where + ": passage instant is reserved by another AGV";
      continue;
    }

    const Interval occupation{step.start, step.end};
    const auto gaps = tg.tree(step.resource).gap_query(path.agv, occupation);
    if (gaps.size() != 1 || gaps.front() != occupation)
      return where + ": occupation is not inside a free window";

    if (g.is_edge(step.resource))
    {
      const auto& e = g.edge(g.edge_of(step.resource));
      const bool last = i + 1 == path.steps.size();
      const bool first = i == 0;
      if (!first && !last && step.end - step.start != TimePoint(e.weight))
        return where + ": edge traversal does not take the edge weight";
    }
  }

  return std::nullopt;
}

//==============================================================================
ResourceMask build_partial_subgraph(const ResourceGraph& g,
  std::span<const ResourceId> anchor_path, const Route& route,
  Topology topology, const Guide& spatial_guide)
{
  check_route(g, route);
  if (anchor_path.empty() || !g.is_node(anchor_path.back()))
    throw InvalidParameter("anchoring path must end on a node");

  for (const auto& stage : route.stages)
  {
    if (stage.targets.size() != 1)
      throw InvalidParameter("partial search needs single-target stages");
  }

  ResourceMask mask(g.resource_count(), false);
  for (const auto r : anchor_path)
    mask.at(r.value) = true;

  const NodeId anchor = g.node_of(anchor_path.back());
  std::vector<bool> forbidden(g.node_count(), false);
  for (const NodeId a : g.anchors())
    forbidden[a] = true;

  const auto link = [&](NodeId from, NodeId to)
    {
      const bool from_banned = forbidden[from];
      const bool to_banned = forbidden[to];
      forbidden[from] = false;
      forbidden[to] = false;
      const auto path = spatial_path(g, from, to, forbidden, spatial_guide);
      forbidden[from] = from_banned;
      forbidden[to] = to_banned;

      if (!path)
      {
        throw PlanningFault("no spatial path from node " + std::to_string(from)
          + " to node " + std::to_string(to) + " avoiding other anchors");
      }
      for (const auto r : path->resources)
        mask[r.value] = true;
    };

  NodeId previous = anchor;
  for (const auto& stage : route.stages)
  {
    const NodeId target = stage.targets.front();
    if (topology == Topology::star)
      link(anchor, target);
    else
      link(previous, target);
    previous = target;
  }

  return mask;
}

} // namespace agvtt
