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

#ifndef AGVTT_TESTS__FIXTURES_HPP
#define AGVTT_TESTS__FIXTURES_HPP

#include <agvtt/path.hpp>
#include <agvtt/resource_graph.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

namespace agvtt::test {

inline NodeId at(const ResourceGraph& g, std::int64_t x, std::int64_t y)
{
  for (NodeId n = 0; n < g.node_count(); ++n)
  {
    if (g.node(n).position == Point{x, y})
      return n;
  }
  throw std::out_of_range("no node at that position");
}

inline Interval ivl(Ticks s, Ticks e)
{
  return Interval{TimePoint(s), TimePoint(e)};
}

/// Straight chain of `count` nodes joined by undirected edges of the given
/// weights, none of them anchors unless listed.
inline ResourceGraph chain(std::vector<Ticks> weights,
  std::vector<NodeId> anchors = {})
{
  ResourceGraph g;
  for (std::size_t i = 0; i <= weights.size(); ++i)
  {
    const bool anchor =
      std::find(anchors.begin(), anchors.end(), i) != anchors.end();
    g.add_node(anchor, Point{static_cast<std::int64_t>(i), 0});
  }
  for (std::size_t i = 0; i < weights.size(); ++i)
  {
    g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1),
      weights[i]);
  }
  return g;
}

/// A random walk over nodes that never immediately reverses unless stuck,
/// returned as alternating node/edge resources.
inline SpatialPath random_walk(const ResourceGraph& g, NodeId start,
  std::size_t edges, std::mt19937_64& rng)
{
  SpatialPath p;
  p.resources.push_back(g.resource_of_node(start));
  NodeId at = start;
  std::optional<EdgeId> came;
  for (std::size_t i = 0; i < edges; ++i)
  {
    std::vector<Arc> options;
    for (const auto& a : g.out_arcs(at))
    {
      if (!came || a.edge != *came)
        options.push_back(a);
    }
    if (options.empty())
      options.assign(g.out_arcs(at).begin(), g.out_arcs(at).end());
    const Arc a = options[rng() % options.size()];
    p.resources.push_back(g.resource_of_edge(a.edge));
    p.resources.push_back(g.resource_of_node(a.to));
    p.cost += g.edge(a.edge).weight;
    came = a.edge;
    at = a.to;
  }
  return p;
}

} // namespace agvtt::test

#endif // AGVTT_TESTS__FIXTURES_HPP
