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

#ifndef AGVTT__RESOURCE_GRAPH_HPP
#define AGVTT__RESOURCE_GRAPH_HPP

#include <agvtt/time.hpp>

#include <compare>
#include <limits>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace agvtt {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Thrown when a construction parameter is out of its domain.
class InvalidParameter : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//==============================================================================
/// Nodes and edges share one dense id space for reservation purposes: node n
/// is resource n, edge e is resource node_count() + e.
struct ResourceId
{
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(ResourceId, ResourceId) = default;
};

struct Point
{
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(Point, Point) = default;
};

struct GraphNode
{
  bool anchor = false;
  /// Created by edge subdivision. Never an anchor, never a demand endpoint.
  bool synthetic = false;
  std::optional<Point> position;
};

struct GraphEdge
{
  NodeId a = 0;
  NodeId b = 0;
  Ticks weight = 1;
  bool directed = false;
};

/// A traversable direction of an edge.
struct Arc
{
  EdgeId edge;
  NodeId to;
};

//==============================================================================
/// Layout graph whose nodes and edges are the reservable resources. An
/// undirected edge is a single resource traversable both ways.
///
/// Resource ids of edges depend on the node count, so they are only stable
/// once all nodes have been added.
class ResourceGraph
{
public:
  NodeId add_node(bool anchor, std::optional<Point> position = std::nullopt,
    bool synthetic = false);

  /// Weight must be at least one tick.
  EdgeId add_edge(NodeId a, NodeId b, Ticks weight, bool directed = false);

  std::size_t node_count() const { return _nodes.size(); }
  std::size_t edge_count() const { return _edges.size(); }
  std::size_t resource_count() const { return _nodes.size() + _edges.size(); }

  const GraphNode& node(NodeId n) const { return _nodes.at(n); }
  const GraphEdge& edge(EdgeId e) const { return _edges.at(e); }
  const std::vector<GraphNode>& nodes() const { return _nodes; }
  const std::vector<GraphEdge>& edges() const { return _edges; }

  ResourceId resource_of_node(NodeId n) const { return ResourceId{n}; }
  ResourceId resource_of_edge(EdgeId e) const
  {
    return ResourceId{static_cast<std::uint32_t>(_nodes.size() + e)};
  }
  bool is_node(ResourceId r) const { return r.value < _nodes.size(); }
  bool is_edge(ResourceId r) const
  {
    return r.value >= _nodes.size() && r.value < resource_count();
  }
  NodeId node_of(ResourceId r) const;
  EdgeId edge_of(ResourceId r) const;

  /// Directions in which an AGV may leave n.
  std::span<const Arc> out_arcs(NodeId n) const { return _out.at(n); }
  /// Directions in which an AGV may arrive at n.
  std::span<const Arc> in_arcs(NodeId n) const { return _in.at(n); }
  /// Every edge touching n regardless of direction.
  std::span<const EdgeId> incident_edges(NodeId n) const
  {
    return _incident.at(n);
  }

  bool is_anchor(NodeId n) const { return _nodes.at(n).anchor; }
  std::vector<NodeId> anchors() const;

  /// True when every node carries a planar position.
  bool embedded() const;

  /// Largest k such that every edge weight is at least k times the
  /// manhattan length of the edge. Scaling manhattan distance by this keeps
  /// it admissible. Throws if the graph is not embedded.
  Ticks manhattan_unit() const;

  Ticks manhattan(NodeId u, NodeId v) const;

  /// Number of subdivisions applied to reach this graph (1 for none).
  std::uint32_t subdivisions() const { return _subdivisions; }
  void set_subdivisions(std::uint32_t s) { _subdivisions = s; }

  std::string describe(ResourceId r) const;

private:
  std::vector<GraphNode> _nodes;
  std::vector<GraphEdge> _edges;
  std::vector<std::vector<Arc>> _out;
  std::vector<std::vector<Arc>> _in;
  std::vector<std::vector<EdgeId>> _incident;
  std::uint32_t _subdivisions = 1;
  mutable std::optional<Ticks> _manhattan_unit;
};

/// Per-resource membership flags used to restrict a search to a subgraph.
using ResourceMask = std::vector<bool>;

//==============================================================================
/// n x n grid with the four corners removed. The remaining perimeter nodes are
/// anchors and edges between two anchors are dropped. Nodes are numbered row
/// by row and carry their (x, y) grid coordinates.
ResourceGraph build_grid(int n, Ticks weight);

/// Which of the key assumptions a graph violates, if any.
///   1: the graph is strongly connected
///   2: there are at least as many anchors as AGVs
///   3: the graph without its anchors is strongly connected
///   4: no edge joins two anchors
struct ValidationReport
{
  std::optional<int> violated;
  std::string detail;

  bool ok() const { return !violated.has_value(); }
};

ValidationReport validate(const ResourceGraph& g, std::size_t num_agvs);

/// Split every edge into s equal sub-edges joined by s - 1 fresh synthetic
/// nodes. Original node ids are preserved; sub-edges of edge e get ids
/// s*e .. s*e + s - 1. Positions are scaled by s so sub-edges stay integral.
ResourceGraph subdivide(const ResourceGraph& g, std::uint32_t s);

//==============================================================================
/// Geographic links: for each resource r, the resources reserved alongside r
/// (excluding r itself) and the boundary subset at the link radius.
class GeoLinks
{
public:
  GeoLinks() = default;

  /// Links where every resource is linked to nothing else.
  static GeoLinks none(std::size_t resource_count);

  GeoLinks(std::uint32_t radius, std::vector<std::vector<ResourceId>> linked,
    std::vector<std::vector<ResourceId>> boundary);

  std::uint32_t radius() const { return _radius; }
  std::size_t resource_count() const { return _linked.size(); }

  /// Sorted, excluding r.
  std::span<const ResourceId> linked(ResourceId r) const
  {
    return _linked[r.value];
  }

  /// Sorted subset of linked(r) at the link radius.
  std::span<const ResourceId> boundary(ResourceId r) const
  {
    return _boundary[r.value];
  }

  /// q in linked(r), or q == r.
  bool covers(ResourceId r, ResourceId q) const;

private:
  std::uint32_t _radius = 0;
  std::vector<std::vector<ResourceId>> _linked;
  std::vector<std::vector<ResourceId>> _boundary;
};

/// Link every resource to all resources within s steps in the resource
/// adjacency graph (a node is adjacent to its incident edges and vice versa).
GeoLinks build_adjacency_links(const ResourceGraph& g, std::uint32_t s);

/// Adjacency distance between two resources, or nullopt if unreachable.
std::optional<std::uint32_t> resource_distance(
  const ResourceGraph& g, ResourceId from, ResourceId to);

/// Checks that a parked AGV's footprint never reaches past its own anchor
/// spokes: for each anchor, no non-synthetic node other than the anchor is
/// linked to it. Returns a description of the first offending anchor.
std::optional<std::string> check_footprint_confinement(
  const ResourceGraph& g, const GeoLinks& links);

//==============================================================================
/// All-pairs shortest travel times between nodes.
class DistanceTable
{
public:
  static constexpr Ticks Unreachable = std::numeric_limits<Ticks>::max();

  DistanceTable() = default;
  explicit DistanceTable(const ResourceGraph& g);

  Ticks at(NodeId from, NodeId to) const { return _d[from * _n + to]; }
  std::size_t size() const { return _n; }

private:
  std::size_t _n = 0;
  std::vector<Ticks> _d;
};

DistanceTable distance_table(const ResourceGraph& g);

//==============================================================================
enum class GuideKind
{
  zero,
  manhattan,
  table
};

/// Admissible estimate of remaining travel time, shared by spatial searches
/// and time-pathing.
struct Guide
{
  GuideKind kind = GuideKind::zero;
  const DistanceTable* table = nullptr;

  static Guide zero() { return {}; }
  static Guide manhattan() { return {GuideKind::manhattan, nullptr}; }
  static Guide from_table(const DistanceTable& t)
  {
    return {GuideKind::table, &t};
  }
};

/// Estimated travel time from u to v under guide. Throws InvalidParameter for
/// a manhattan guide on a graph without positions.
Ticks estimate(const ResourceGraph& g, const Guide& guide, NodeId u, NodeId v);

struct SpatialPath
{
  /// Alternating node and edge resources, starting and ending on a node.
  std::vector<ResourceId> resources;
  Ticks cost = 0;
};

/// Minimum-weight path avoiding the forbidden nodes (mask indexed by node,
/// may be empty). Returns nullopt if no path exists.
std::optional<SpatialPath> spatial_path(const ResourceGraph& g, NodeId from,
  NodeId to, const std::vector<bool>& forbidden, const Guide& guide);

} // namespace agvtt

#endif // AGVTT__RESOURCE_GRAPH_HPP
