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

#include <agvtt/resource_graph.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <tuple>

namespace agvtt {

//==============================================================================
NodeId ResourceGraph::add_node(
  bool anchor, std::optional<Point> position, bool synthetic)
{
  if (anchor && synthetic)
    throw InvalidParameter("synthetic nodes cannot be anchors");

  _nodes.push_back(GraphNode{anchor, synthetic, position});
  _out.emplace_back();
  _in.emplace_back();
  _incident.emplace_back();
  _manhattan_unit.reset();
  return static_cast<NodeId>(_nodes.size() - 1);
}

//==============================================================================
EdgeId ResourceGraph::add_edge(NodeId a, NodeId b, Ticks weight, bool directed)
{
  if (a >= _nodes.size() || b >= _nodes.size())
    throw InvalidParameter("edge endpoint out of range");
  if (a == b)
    throw InvalidParameter("self-loop edges are not supported");
  if (weight < 1)
    throw InvalidParameter("edge weight must be at least 1");

  const auto e = static_cast<EdgeId>(_edges.size());
  _edges.push_back(GraphEdge{a, b, weight, directed});
  _out[a].push_back(Arc{e, b});
  _in[b].push_back(Arc{e, a});
  if (!directed)
  {
    _out[b].push_back(Arc{e, a});
    _in[a].push_back(Arc{e, b});
  }
  _incident[a].push_back(e);
  _incident[b].push_back(e);
  _manhattan_unit.reset();
  return e;
}

//==============================================================================
NodeId ResourceGraph::node_of(ResourceId r) const
{
  if (!is_node(r))
    throw std::out_of_range("resource " + std::to_string(r.value)
      + " is not a node");
  return r.value;
}

//==============================================================================
EdgeId ResourceGraph::edge_of(ResourceId r) const
{
  if (!is_edge(r))
    throw std::out_of_range("resource " + std::to_string(r.value)
      + " is not an edge");
  return static_cast<EdgeId>(r.value - _nodes.size());
}

//==============================================================================
std::vector<NodeId> ResourceGraph::anchors() const
{
  std::vector<NodeId> out;
  for (NodeId n = 0; n < _nodes.size(); ++n)
  {
    if (_nodes[n].anchor)
      out.push_back(n);
  }
  return out;
}

//==============================================================================
bool ResourceGraph::embedded() const
{
  return std::all_of(_nodes.begin(), _nodes.end(),
    [](const GraphNode& n) { return n.position.has_value(); });
}

//==============================================================================
Ticks ResourceGraph::manhattan(NodeId u, NodeId v) const
{
  const auto& pu = _nodes.at(u).position;
  const auto& pv = _nodes.at(v).position;
  if (!pu || !pv)
    throw InvalidParameter("manhattan distance needs node positions");

  const auto dx = pu->x > pv->x ? pu->x - pv->x : pv->x - pu->x;
  const auto dy = pu->y > pv->y ? pu->y - pv->y : pv->y - pu->y;
  return static_cast<Ticks>(dx + dy);
}

//==============================================================================
Ticks ResourceGraph::manhattan_unit() const
{
  if (_manhattan_unit)
    return *_manhattan_unit;

  if (!embedded())
    throw InvalidParameter("manhattan guidance needs an embedded graph");

  std::optional<Ticks> unit;
  for (const auto& e : _edges)
  {
    const Ticks len = manhattan(e.a, e.b);
    if (len == 0)
      continue;
    const Ticks k = e.weight / len;
    unit = unit ? std::min(*unit, k) : k;
  }

  _manhattan_unit = unit.value_or(0);
  return *_manhattan_unit;
}

//==============================================================================
std::string ResourceGraph::describe(ResourceId r) const
{
  if (is_node(r))
    return "node " + std::to_string(r.value);
  if (is_edge(r))
  {
    const auto e = edge_of(r);
    return "edge " + std::to_string(e) + " (" + std::to_string(_edges[e].a)
      + "-" + std::to_string(_edges[e].b) + ")";
  }
  return "resource " + std::to_string(r.value);
}

//==============================================================================
ResourceGraph build_grid(int n, Ticks weight)
{
  if (n < 4)
    throw InvalidParameter("grid size must be at least 4");
  if (weight < 1)
    throw InvalidParameter("edge weight must be at least 1");

  const auto corner = [n](int x, int y)
    {
      return (x == 0 || x == n - 1) && (y == 0 || y == n - 1);
    };
  const auto perimeter = [n](int x, int y)
    {
      return x == 0 || y == 0 || x == n - 1 || y == n - 1;
    };

  ResourceGraph g;
  std::vector<std::optional<NodeId>> id(static_cast<std::size_t>(n * n));
  for (int y = 0; y < n; ++y)
  {
    for (int x = 0; x < n; ++x)
    {
      if (corner(x, y))
        continue;
      id[static_cast<std::size_t>(y * n + x)] =
        g.add_node(perimeter(x, y), Point{x, y});
    }
  }

  const auto connect = [&](int x0, int y0, int x1, int y1)
    {
      const auto a = id[static_cast<std::size_t>(y0 * n + x0)];
      const auto b = id[static_cast<std::size_t>(y1 * n + x1)];
      if (!a || !b)
        return;
      if (g.is_anchor(*a) && g.is_anchor(*b))
        return;
      g.add_edge(*a, *b, weight);
    };

  for (int y = 0; y < n; ++y)
  {
    for (int x = 0; x + 1 < n; ++x)
      connect(x, y, x + 1, y);
  }
  for (int y = 0; y + 1 < n; ++y)
  {
    for (int x = 0; x < n; ++x)
      connect(x, y, x, y + 1);
  }

  return g;
}

namespace {

//==============================================================================
/// Strong connectivity of the nodes selected by keep.
bool strongly_connected(
  const ResourceGraph& g, const std::function<bool(NodeId)>& keep)
{
  std::optional<NodeId> root;
  std::size_t kept = 0;
  for (NodeId n = 0; n < g.node_count(); ++n)
  {
    if (!keep(n))
      continue;
    ++kept;
    if (!root)
      root = n;
  }
  if (!root)
    return true;

  const auto reach = [&](bool forward)
    {
      std::vector<bool> seen(g.node_count(), false);
      std::deque<NodeId> queue{*root};
      seen[*root] = true;
      std::size_t count = 1;
      while (!queue.empty())
      {
        const NodeId u = queue.front();
        queue.pop_front();
        const auto arcs = forward ? g.out_arcs(u) : g.in_arcs(u);
        for (const auto& arc : arcs)
        {
          if (seen[arc.to] || !keep(arc.to))
            continue;
          seen[arc.to] = true;
          ++count;
          queue.push_back(arc.to);
        }
      }
      return count;
    };

  return reach(true) == kept && reach(false) == kept;
}

} // anonymous namespace

//==============================================================================
ValidationReport validate(const ResourceGraph& g, std::size_t num_agvs)
{
  if (!strongly_connected(g, [](NodeId) { return true; }))
    return {1, "graph is not strongly connected"};

  const auto anchors = g.anchors();
  if (anchors.size() < num_agvs)
  {
    return {2, std::to_string(anchors.size()) + " anchors for "
        + std::to_string(num_agvs) + " AGVs"};
  }

  if (!strongly_connected(g, [&g](NodeId n) { return !g.is_anchor(n); }))
    return {3, "graph without anchors is not strongly connected"};

  for (EdgeId e = 0; e < g.edge_count(); ++e)
  {
    const auto& edge = g.edge(e);
    if (g.is_anchor(edge.a) && g.is_anchor(edge.b))
    {
      return {4, "edge " + std::to_string(e) + " joins anchors "
          + std::to_string(edge.a) + " and " + std::to_string(edge.b)};
    }
  }

  return {};
}

//==============================================================================
ResourceGraph subdivide(const ResourceGraph& g, std::uint32_t s)
{
  if (s < 1)
    throw InvalidParameter("subdivision count must be at least 1");

  for (EdgeId e = 0; e < g.edge_count(); ++e)
  {
    if (g.edge(e).weight % s != 0)
    {
      throw InvalidParameter("edge " + std::to_string(e) + " weight "
        + std::to_string(g.edge(e).weight) + " is not divisible by "
        + std::to_string(s));
    }
  }

  const bool embedded = g.embedded();
  const auto scaled = [&](NodeId n) -> std::optional<Point>
    {
      if (!embedded)
        return std::nullopt;
      const Point p = *g.node(n).position;
      return Point{p.x * s, p.y * s};
    };

  ResourceGraph out;
  for (NodeId n = 0; n < g.node_count(); ++n)
    out.add_node(g.node(n).anchor, scaled(n), g.node(n).synthetic);

  // Create the synthetic nodes first so edge resource ids are final.
  std::vector<std::vector<NodeId>> chain(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
  {
    const auto& edge = g.edge(e);
    chain[e].push_back(edge.a);
    for (std::uint32_t i = 1; i < s; ++i)
    {
      std::optional<Point> pos;
      if (embedded)
      {
        const Point a = *g.node(edge.a).position;
        const Point b = *g.node(edge.b).position;
        pos = Point{a.x * s + i * (b.x - a.x), a.y * s + i * (b.y - a.y)};
      }
      chain[e].push_back(out.add_node(false, pos, true));
    }
    chain[e].push_back(edge.b);
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e)
  {
    const auto& edge = g.edge(e);
    for (std::uint32_t i = 0; i < s; ++i)
    {
      out.add_edge(
        chain[e][i], chain[e][i + 1], edge.weight / s, edge.directed);
    }
  }

  out.set_subdivisions(g.subdivisions() * s);
  return out;
}

//==============================================================================
GeoLinks GeoLinks::none(std::size_t resource_count)
{
  return GeoLinks(0, std::vector<std::vector<ResourceId>>(resource_count),
    std::vector<std::vector<ResourceId>>(resource_count));
}

//==============================================================================
GeoLinks::GeoLinks(std::uint32_t radius,
  std::vector<std::vector<ResourceId>> linked,
  std::vector<std::vector<ResourceId>> boundary)
: _radius(radius),
  _linked(std::move(linked)),
  _boundary(std::move(boundary))
{
  if (_linked.size() != _boundary.size())
    throw InvalidParameter("linked and boundary tables differ in size");

  for (auto& l : _linked)
    std::sort(l.begin(), l.end());
  for (auto& b : _boundary)
    std::sort(b.begin(), b.end());
}

//==============================================================================
bool GeoLinks::covers(ResourceId r, ResourceId q) const
{
  if (r == q)
    return true;
  const auto& l = _linked[r.value];
  return std::binary_search(l.begin(), l.end(), q);
}

namespace {

//==============================================================================
template<typename F>
void for_each_adjacent(const ResourceGraph& g, ResourceId r, F&& f)
{
  if (g.is_node(r))
  {
    for (const EdgeId e : g.incident_edges(g.node_of(r)))
      f(g.resource_of_edge(e));
  }
  else
  {
    const auto& edge = g.edge(g.edge_of(r));
    f(g.resource_of_node(edge.a));
    f(g.resource_of_node(edge.b));
  }
}

} // anonymous namespace

//==============================================================================
GeoLinks build_adjacency_links(const ResourceGraph& g, std::uint32_t s)
{
  if (s < 1)
    throw InvalidParameter("link radius must be at least 1");

  const std::size_t count = g.resource_count();
  std::vector<std::vector<ResourceId>> linked(count);
  std::vector<std::vector<ResourceId>> boundary(count);

  std::vector<std::uint32_t> stamp(count, 0);
  std::vector<std::uint32_t> dist(count, 0);
  std::vector<ResourceId> frontier;
  std::vector<ResourceId> next;

  for (std::uint32_t i = 0; i < count; ++i)
  {
    const ResourceId root{i};
    const std::uint32_t mark = i + 1;
    stamp[i] = mark;
    dist[i] = 0;
    frontier.assign(1, root);

    for (std::uint32_t depth = 1; depth <= s && !frontier.empty(); ++depth)
    {
      next.clear();
      for (const auto r : frontier)
      {
        for_each_adjacent(g, r, [&](ResourceId q)
          {
            if (stamp[q.value] == mark)
              return;
            stamp[q.value] = mark;
            dist[q.value] = depth;
            next.push_back(q);
            linked[i].push_back(q);
            if (depth == s)
              boundary[i].push_back(q);
          });
      }
      frontier.swap(next);
    }
  }

  return GeoLinks(s, std::move(linked), std::move(boundary));
}

//==============================================================================
std::optional<std::uint32_t> resource_distance(
  const ResourceGraph& g, ResourceId from, ResourceId to)
{
  if (from == to)
    return 0;

  std::vector<std::uint32_t> dist(g.resource_count(), 0);
  std::vector<bool> seen(g.resource_count(), false);
  std::deque<ResourceId> queue{from};
  seen[from.value] = true;
  while (!queue.empty())
  {
    const auto r = queue.front();
    queue.pop_front();
    std::optional<std::uint32_t> found;
    for_each_adjacent(g, r, [&](ResourceId q)
      {
        if (seen[q.value])
          return;
        seen[q.value] = true;
        dist[q.value] = dist[r.value] + 1;
        if (q == to)
          found = dist[q.value];
        queue.push_back(q);
      });
    if (found)
      return found;
  }
  return std::nullopt;
}

//==============================================================================
std::optional<std::string> check_footprint_confinement(
  const ResourceGraph& g, const GeoLinks& links)
{
  for (const NodeId a : g.anchors())
  {
    for (const auto q : links.linked(g.resource_of_node(a)))
    {
      if (g.is_node(q) && !g.node(g.node_of(q)).synthetic)
      {
        return "anchor " + std::to_string(a) + " is linked to node "
          + std::to_string(q.value)
          + "; a parked AGV would block it indefinitely";
      }
    }
  }
  return std::nullopt;
}

//==============================================================================
DistanceTable::DistanceTable(const ResourceGraph& g)
: _n(g.node_count()),
  _d(_n * _n, Unreachable)
{
  using Item = std::pair<Ticks, NodeId>;
  for (NodeId src = 0; src < _n; ++src)
  {
    Ticks* row = _d.data() + src * _n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    row[src] = 0;
    open.push({0, src});
    while (!open.empty())
    {
      const auto [d, u] = open.top();
      open.pop();
      if (d > row[u])
        continue;
      for (const auto& arc : g.out_arcs(u))
      {
        const Ticks nd = d + g.edge(arc.edge).weight;
        if (nd < row[arc.to])
        {
          row[arc.to] = nd;
          open.push({nd, arc.to});
        }
      }
    }
  }
}

//==============================================================================
DistanceTable distance_table(const ResourceGraph& g)
{
  return DistanceTable(g);
}

//==============================================================================
Ticks estimate(const ResourceGraph& g, const Guide& guide, NodeId u, NodeId v)
{
  switch (guide.kind)
  {
    case GuideKind::zero:
      return 0;
    case GuideKind::manhattan:
      return g.manhattan_unit() * g.manhattan(u, v);
    case GuideKind::table:
      if (!guide.table)
        throw InvalidParameter("table guide without a distance table");
      return guide.table->at(u, v);
  }
  return 0;
}

//==============================================================================
std::optional<SpatialPath> spatial_path(const ResourceGraph& g, NodeId from,
  NodeId to, const std::vector<bool>& forbidden, const Guide& guide)
{
  const auto banned = [&](NodeId n)
    {
      return !forbidden.empty() && forbidden[n];
    };
  if (from >= g.node_count() || to >= g.node_count())
    throw InvalidParameter("spatial path endpoint out of range");
  if (banned(from) || banned(to))
    throw InvalidParameter("spatial path endpoints must not be forbidden");

  if (from == to)
    return SpatialPath{{g.resource_of_node(from)}, 0};

  if (guide.kind == GuideKind::manhattan)
    g.manhattan_unit();

  const auto saturating_add = [](Ticks a, Ticks b)
    {
      return b > DistanceTable::Unreachable - a ? DistanceTable::Unreachable
                                                : a + b;
    };

  constexpr Ticks Unset = DistanceTable::Unreachable;
  std::vector<Ticks> cost(g.node_count(), Unset);
  std::vector<std::optional<Arc>> via(g.node_count());
  std::vector<bool> closed(g.node_count(), false);

  // (f, g, node): ties resolve toward deeper labels, then lower node ids.
  using Item = std::tuple<Ticks, Ticks, NodeId>;
  const auto order = [](const Item& a, const Item& b)
    {
      if (std::get<0>(a) != std::get<0>(b))
        return std::get<0>(a) > std::get<0>(b);
      if (std::get<1>(a) != std::get<1>(b))
        return std::get<1>(a) < std::get<1>(b);
      return std::get<2>(a) > std::get<2>(b);
    };
  std::priority_queue<Item, std::vector<Item>, decltype(order)> open(order);

  cost[from] = 0;
  open.push({estimate(g, guide, from, to), 0, from});
  while (!open.empty())
  {
    const auto [f, d, u] = open.top();
    open.pop();
    if (closed[u] || d > cost[u])
      continue;
    closed[u] = true;

    if (u == to)
      break;

    for (const auto& arc : g.out_arcs(u))
    {
      if (closed[arc.to] || banned(arc.to))
        continue;
      const Ticks nd = d + g.edge(arc.edge).weight;
      if (nd < cost[arc.to])
      {
        cost[arc.to] = nd;
        via[arc.to] = Arc{arc.edge, u};
        open.push({saturating_add(nd, estimate(g, guide, arc.to, to)), nd,
            arc.to});
      }
    }
  }

  if (!closed[to])
    return std::nullopt;

  SpatialPath path;
  path.cost = cost[to];
  NodeId cur = to;
  path.resources.push_back(g.resource_of_node(cur));
  while (cur != from)
  {
    const Arc back = *via[cur];
    path.resources.push_back(g.resource_of_edge(back.edge));
    path.resources.push_back(g.resource_of_node(back.to));
    cur = back.to;
  }
  std::reverse(path.resources.begin(), path.resources.end());
  return path;
}

} // namespace agvtt
