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

#include <agvtt/scenario.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace agvtt {

using nlohmann::json;

namespace {

//==============================================================================
json time_json(TimePoint t)
{
  if (t.is_infinite())
    return "inf";
  return t.ticks();
}

//==============================================================================
TimePoint time_from_json(const json& j)
{
  if (j.is_string())
  {
    if (j.get<std::string>() != "inf")
      throw InvalidParameter("bad time value " + j.dump());
    return Infinity;
  }
  return TimePoint(j.get<Ticks>());
}

//==============================================================================
ResourceGraph graph_from_json(const json& j)
{
  const auto& nodes = j.at("nodes");
  const auto& edges = j.at("edges");

  std::vector<const json*> by_id(nodes.size(), nullptr);
  for (const auto& n : nodes)
  {
    const auto id = n.at("id").get<std::size_t>();
    if (id >= by_id.size() || by_id[id])
      throw InvalidParameter("node ids must be 0..N-1 without repeats");
    by_id[id] = &n;
  }

  ResourceGraph g;
  for (const json* n : by_id)
  {
    std::optional<Point> pos;
    if (n->contains("x") && n->contains("y"))
    {
      pos = Point{
        n->at("x").get<std::int64_t>(), n->at("y").get<std::int64_t>()};
    }
    g.add_node(n->value("anchor", false), pos);
  }

  std::vector<const json*> edge_by_id(edges.size(), nullptr);
  for (const auto& e : edges)
  {
    const auto id = e.at("id").get<std::size_t>();
    if (id >= edge_by_id.size() || edge_by_id[id])
      throw InvalidParameter("edge ids must be 0..E-1 without repeats");
    edge_by_id[id] = &e;
  }
  for (const json* e : edge_by_id)
  {
    g.add_edge(e->at("a").get<NodeId>(), e->at("b").get<NodeId>(),
      e->at("weight").get<Ticks>(), e->value("directed", false));
  }
  return g;
}

//==============================================================================
json graph_to_json(const GraphSpec& spec)
{
  if (spec.grid_n)
  {
    return {
      {"type", "grid"},
      {"n", *spec.grid_n},
      {"weight", spec.grid_weight},
      {"subdivisions", spec.subdivisions},
      {"link_radius", spec.link_radius}};
  }

  json nodes = json::array();
  json edges = json::array();
  if (spec.base)
  {
    const auto& g = *spec.base;
    for (std::size_t i = 0; i < g.node_count(); ++i)
    {
      json n = {{"id", i}, {"anchor", g.node(i).anchor}};
      if (const auto& p = g.node(i).position)
      {
        n["x"] = p->x;
        n["y"] = p->y;
      }
      nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < g.edge_count(); ++i)
    {
      const auto& e = g.edge(i);
      edges.push_back({{"id", i}, {"a", e.a}, {"b", e.b},
          {"weight", e.weight}, {"directed", e.directed}});
    }
  }
  return {
    {"nodes", nodes},
    {"edges", edges},
    {"meta",
      {{"subdivisions", spec.subdivisions},
        {"link_radius", spec.link_radius}}}};
}

//==============================================================================
GraphSpec graph_spec_from_json(const json& j)
{
  GraphSpec spec;
  if (j.value("type", std::string()) == "grid")
  {
    spec.grid_n = j.at("n").get<int>();
    spec.grid_weight = j.value("weight", Ticks{5000});
    spec.subdivisions = j.value("subdivisions", 1u);
    spec.link_radius = j.value("link_radius", 1u);
    return spec;
  }

  spec.base = graph_from_json(j);
  if (const auto meta = j.find("meta"); meta != j.end())
  {
    spec.subdivisions = meta->value("subdivisions", 1u);
    spec.link_radius = meta->value("link_radius", 1u);
  }
  return spec;
}

//==============================================================================
void check_spacing(const GeoLinks& links, const Placement& placement)
{
  for (auto a = placement.begin(); a != placement.end(); ++a)
  {
    for (auto b = std::next(a); b != placement.end(); ++b)
    {
      bool shared = links.covers(a->second, b->second);
      for (const auto q : links.linked(a->second))
        shared = shared || links.covers(b->second, q);
      if (shared)
      {
        throw InvalidParameter("AGVs " + std::to_string(a->first) + " and "
          + std::to_string(b->first) + " start with overlapping footprints");
      }
    }
  }
}

} // anonymous namespace

//==============================================================================
BuiltGraph build_graph(const GraphSpec& spec)
{
  if (spec.subdivisions < 1)
    throw InvalidParameter("subdivisions must be at least 1");

  ResourceGraph base;
  if (spec.grid_n)
    base = build_grid(*spec.grid_n, spec.grid_weight);
  else if (spec.base)
    base = *spec.base;
  else
    throw InvalidParameter("graph spec has neither grid nor explicit graph");

  BuiltGraph out;
  out.graph = spec.subdivisions > 1 ? subdivide(base, spec.subdivisions)
    : std::move(base);
  out.links = spec.link_radius == 0
    ? GeoLinks::none(out.graph.resource_count())
    : build_adjacency_links(out.graph, spec.link_radius);
  return out;
}

//==============================================================================
json to_json(const Scenario& s)
{
  json placement = json::array();
  for (const auto& [agv, r] : s.placement)
    placement.push_back({{"agv", agv}, {"resource", r.value}});

  json demands = json::array();
  for (const auto& d : s.demands)
  {
    demands.push_back({{"id", d.id}, {"pickup", d.pickup},
        {"dropoff", d.dropoff}, {"horizon", time_json(d.horizon)}});
  }

  json j = {
    {"graph", graph_to_json(s.graph)},
    {"placement", placement},
    {"demands", demands},
    {"seed", s.seed},
    {"preset", to_string(s.preset)},
    {"anchoriser", to_string(s.anchoriser)},
    {"stop_pickup", s.stop_pickup},
    {"stop_dropoff", s.stop_dropoff}};

  if (!s.extra_reservations.empty())
  {
    json extra = json::array();
    for (const auto& r : s.extra_reservations)
    {
      extra.push_back({{"resource", r.resource.value}, {"agv", r.agv},
          {"start", time_json(r.interval.start)},
          {"end", time_json(r.interval.end)}});
    }
    j["extra_reservations"] = extra;
  }
  return j;
}

//==============================================================================
Scenario scenario_from_json(const json& j)
{
  Scenario s;
  s.graph = graph_spec_from_json(j.at("graph"));

  for (const auto& p : j.value("placement", json::array()))
  {
    const auto agv = p.at("agv").get<AgvId>();
    const ResourceId r{p.at("resource").get<std::uint32_t>()};
    if (!s.placement.emplace(agv, r).second)
      throw InvalidParameter("AGV " + std::to_string(agv) + " placed twice");
  }

  for (const auto& d : j.value("demands", json::array()))
  {
    s.demands.push_back(Demand{d.at("id").get<std::uint32_t>(),
        d.at("pickup").get<NodeId>(), d.at("dropoff").get<NodeId>(),
        d.contains("horizon") ? time_from_json(d.at("horizon"))
        : TimePoint(0)});
  }

  s.seed = j.value("seed", std::uint64_t{0});
  const auto preset = j.value("preset", std::string("full-manhattan"));
  if (const auto p = parse_preset(preset))
    s.preset = *p;
  else
    throw InvalidParameter("unknown preset " + preset);

  const auto anchoriser = j.value("anchoriser", std::string("greedy"));
  if (const auto a = parse_anchoriser(anchoriser))
    s.anchoriser = *a;
  else
    throw InvalidParameter("unknown anchoriser " + anchoriser);

  s.stop_pickup = j.value("stop_pickup", Ticks{0});
  s.stop_dropoff = j.value("stop_dropoff", Ticks{0});

  for (const auto& r : j.value("extra_reservations", json::array()))
  {
    s.extra_reservations.push_back(Reservation{
        ResourceId{r.at("resource").get<std::uint32_t>()},
        r.at("agv").get<AgvId>(),
        make_interval(time_from_json(r.at("start")),
        time_from_json(r.at("end")))});
  }
  return s;
}

//==============================================================================
Placement random_placement(const ResourceGraph& g, const GeoLinks& links,
  std::size_t count, Rng& rng)
{
  std::vector<ResourceId> candidates;
  for (std::uint32_t r = 0; r < g.resource_count(); ++r)
    candidates.push_back(ResourceId{r});
  rng.shuffle(candidates);

  std::vector<bool> blocked(g.resource_count(), false);
  const auto block = [&](ResourceId r)
    {
      blocked[r.value] = true;
      for (const auto q : links.linked(r))
        blocked[q.value] = true;
    };

  std::vector<ResourceId> chosen;
  for (const auto r : candidates)
  {
    if (chosen.size() == count)
      break;
    if (blocked[r.value])
      continue;

    chosen.push_back(r);
    block(r);
    for (const auto q : links.linked(r))
      block(q);
  }

  if (chosen.size() < count)
  {
    throw InvalidParameter("could only place " + std::to_string(chosen.size())
      + " of " + std::to_string(count) + " AGVs with disjoint footprints");
  }

  Placement placement;
  for (std::size_t i = 0; i < count; ++i)
    placement[static_cast<AgvId>(i)] = chosen[i];
  return placement;
}

//==============================================================================
std::vector<Demand> random_demands(const ResourceGraph& g, std::size_t count,
  Ticks horizon_max, Rng& rng)
{
  std::vector<NodeId> eligible;
  for (NodeId n = 0; n < g.node_count(); ++n)
  {
    if (!g.node(n).anchor && !g.node(n).synthetic)
      eligible.push_back(n);
  }

  if (count > 0 && eligible.size() < 2)
    throw InvalidParameter("fewer than two nodes can host demands");

  std::vector<Demand> demands;
  for (std::size_t i = 0; i < count; ++i)
  {
    Demand d;
    d.id = static_cast<std::uint32_t>(i);
    d.pickup = rng.pick(eligible);
    do
    {
      d.dropoff = rng.pick(eligible);
    } while (d.dropoff == d.pickup);
    d.horizon = TimePoint(horizon_max == 0 ? 0 : rng.below(horizon_max + 1));
    demands.push_back(d);
  }
  return demands;
}

//==============================================================================
Scenario generate_scenario(const GenerateParams& params)
{
  Scenario s;
  s.graph.grid_n = params.grid;
  s.graph.grid_weight = params.weight;
  s.graph.subdivisions = params.subdivisions;
  s.graph.link_radius = params.link_radius;
  s.seed = params.seed;
  s.preset = params.preset;
  s.anchoriser = params.anchoriser;
  s.stop_pickup = params.stop_pickup;
  s.stop_dropoff = params.stop_dropoff;

  const auto built = build_graph(s.graph);
  Rng rng(params.seed);
  s.placement = random_placement(built.graph, built.links, params.agvs, rng);
  s.demands = random_demands(
    built.graph, params.demands, params.horizon_max, rng);
  return s;
}

//==============================================================================
std::optional<std::string> check_anchored(
  const Timetable& tt, const ResourceGraph& g)
{
  std::vector<NodeId> used;
  for (const auto& sched : tt.agvs)
  {
    const std::string who = "AGV " + std::to_string(sched.agv);
    if (sched.paths.empty() || sched.paths.back().steps.empty())
      return who + " has no time-path";

    const auto& last = sched.paths.back().steps.back();
    if (!g.is_node(last.resource) || !g.is_anchor(g.node_of(last.resource)))
      return who + " does not end on an anchor";
    if (last.end.is_finite())
      return who + " leaves its final anchor";

    const NodeId a = g.node_of(last.resource);
    if (std::find(used.begin(), used.end(), a) != used.end())
      return who + " shares anchor " + std::to_string(a);
    used.push_back(a);
  }
  return std::nullopt;
}

//==============================================================================
RunReport run_scenario(const Scenario& s)
{
  try
  {
    const auto built = build_graph(s.graph);
    return run_scenario(s, built);
  }
  catch (const std::exception& e)
  {
    RunReport report;
    report.failed_stage = "validate";
    report.detail = e.what();
    return report;
  }
}

//==============================================================================
RunReport run_scenario(const Scenario& s, const BuiltGraph& built)
{
  RunReport report;
  const auto fail = [&](std::string stage, std::string detail)
    {
      report.failed_stage = std::move(stage);
      report.detail = std::move(detail);
      return report;
    };

  const auto& g = built.graph;
  try
  {
    const auto v = validate(g, s.placement.size());
    if (!v.ok())
    {
      return fail("validate", "assumption " + std::to_string(*v.violated)
          + ": " + v.detail);
    }
    if (const auto c = check_footprint_confinement(g, built.links))
      return fail("validate", *c);
    check_placement(g, s.placement);
    check_spacing(built.links, s.placement);
    check_demands(g, s.demands);
  }
  catch (const std::exception& e)
  {
    return fail("validate", e.what());
  }

  ScheduleConfig config;
  config.preset = s.preset;
  config.anchoriser = s.anchoriser;
  config.stop_pickup = s.stop_pickup;
  config.stop_dropoff = s.stop_dropoff;
  config.seed = s.seed;

  try
  {
    report.timetable = build_timetable(
      g, built.links, s.placement, s.demands, config);
  }
  catch (const AnchorisationStalled& e)
  {
    return fail("anchorise", e.what());
  }
  catch (const std::exception& e)
  {
    return fail("timetable", e.what());
  }

  auto& tt = *report.timetable;
  try
  {
    tt.time_graph.reserve_all(s.extra_reservations);
  }
  catch (const std::exception& e)
  {
    return fail("validate", e.what());
  }

  report.metrics = metrics(tt);

  const auto paths = tt.all_paths();
  if (const auto conflict = audit_safety(tt.time_graph, paths))
    return fail("audit", conflict->describe());
  if (const auto bad = check_anchored(tt, g))
    return fail("audit", *bad);

  return report;
}

//==============================================================================
json timetable_json(const Timetable& tt, const Metrics& m)
{
  json agvs = json::array();
  for (const auto& sched : tt.agvs)
  {
    json steps = json::array();
    for (const auto& step : sched.flattened_steps())
    {
      steps.push_back({{"resource", step.resource.value},
          {"start", time_json(step.start)}, {"end", time_json(step.end)}});
    }
    agvs.push_back({{"id", sched.agv}, {"demands", sched.demands},
        {"steps", steps}});
  }

  return {
    {"agvs", agvs},
    {"metrics",
      {{"makespan", time_json(m.makespan)},
        {"total_distance", m.total_distance}}}};
}

//==============================================================================
json fault_json(const RunReport& r)
{
  return {{"status", "fault"}, {"stage", r.failed_stage},
    {"detail", r.detail}};
}

//==============================================================================
std::string metrics_csv_header()
{
  return "suite,param,algorithm,runtime_ms,makespan,total_distance";
}

//==============================================================================
std::string metrics_csv_row(std::string_view suite, std::string_view param,
  std::string_view algorithm, const Metrics& m)
{
  char runtime[32];
  std::snprintf(runtime, sizeof(runtime), "%.3f", m.runtime_ms);

  std::ostringstream os;
  os << suite << ',' << param << ',' << algorithm << ',' << runtime << ','
     << to_string(m.makespan) << ',' << m.total_distance;
  return os.str();
}

} // namespace agvtt
