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
#include <agvtt/scheduler.hpp>

#include "support/fixtures.hpp"
#include "support/schedule_oracle.hpp"

#include <gtest/gtest.h>

using namespace agvtt;

namespace {

bool held_by(const GapTree& tree, AgvId agv, Interval ivl)
{
  TimePoint covered = ivl.start;
  bool ok = true;
  tree.for_each_overlapping(ivl, [&](const GapTree::Entry& e) {
    if (!e.agvs.contains(agv))
      return;
    if (e.interval.start > covered)
      ok = false;
    covered = std::max(covered, e.interval.end);
  });
  return ok && covered >= ivl.end;
}

void expect_clean(const Timetable& tt, const ResourceGraph& g)
{
  EXPECT_EQ(tt.time_path_failures, 0u);
  const auto anchored = check_anchored(tt, g);
  EXPECT_FALSE(anchored) << *anchored;
  const auto audit = audit_safety(tt.time_graph, tt.all_paths());
  EXPECT_FALSE(audit) << audit->describe();
}

struct Fleet
{
  BuiltGraph built;
  Placement placement;
  std::vector<Demand> demands;

  Fleet(int n, Ticks weight, std::size_t agvs, std::size_t count,
    Ticks horizon_max, std::uint64_t seed)
  : built(build_graph(GraphSpec{n, weight, std::nullopt, 1, 1}))
  {
    Rng rng(seed);
    placement = random_placement(built.graph, built.links, agvs, rng);
    demands = random_demands(built.graph, count, horizon_max, rng);
  }

  Timetable run(ScheduleConfig config) const
  {
    return build_timetable(
      built.graph, built.links, placement, demands, config);
  }
};

} // namespace

TEST(Schedule, NoDemandsOnlyAnchors)
{
  const auto g = build_grid(4, 5000);
  const auto links = build_adjacency_links(g, 1);
  const Placement placement{{0, ResourceId{test::at(g, 1, 1)}}};
  const auto tt = build_timetable(g, links, placement, {}, {});
  ASSERT_EQ(tt.agvs.size(), 1u);
  EXPECT_EQ(tt.agvs[0].paths.size(), 1u);
  EXPECT_TRUE(tt.agvs[0].demands.empty());
  const auto m = metrics(tt);
  EXPECT_EQ(m.makespan, TimePoint(5000));
  EXPECT_EQ(m.total_distance, 5000u);
  expect_clean(tt, g);
}

TEST(Schedule, ParkedFleetHasZeroMakespan)
{
  const auto g = build_grid(5, 5000);
  const auto links = build_adjacency_links(g, 1);
  const Placement placement{{0, ResourceId{test::at(g, 0, 2)}},
    {1, ResourceId{test::at(g, 4, 2)}}};
  const auto tt = build_timetable(g, links, placement, {}, {});
  const auto m = metrics(tt);
  EXPECT_EQ(m.makespan, TimePoint(0));
  EXPECT_EQ(m.total_distance, 0u);
  expect_clean(tt, g);
}

TEST(Schedule, OneDemandVisitsPickupThenDropoff)
{
  const auto g = build_grid(5, 5000);
  const auto links = build_adjacency_links(g, 1);
  const Placement placement{{0, ResourceId{test::at(g, 0, 2)}}};
  const std::vector<Demand> demands{
    {3, test::at(g, 1, 1), test::at(g, 3, 3), TimePoint(0)}};
  ScheduleConfig config;
  config.stop_pickup = 100;
  config.stop_dropoff = 50;
  const auto tt = build_timetable(g, links, placement, demands, config);
  expect_clean(tt, g);
  const auto& s = tt.agvs.at(0);
  ASSERT_EQ(s.paths.size(), 2u);
  EXPECT_EQ(s.demands, std::vector<std::uint32_t>{3});
  const auto& p = s.paths[1];
  ASSERT_EQ(p.stage_arrivals.size(), 3u);
  // (0,2) -> (1,2) -> (1,1) then four edges to (3,3).
  EXPECT_EQ(p.stage_arrivals[0], TimePoint(10000));
  EXPECT_EQ(p.stage_arrivals[1], TimePoint(10000 + 100 + 20000));
}

TEST(Schedule, MatchesExhaustiveOracle)
{
  for (std::uint64_t seed = 0; seed < 30; ++seed)
  {
    const auto g = build_grid(4, 3);
    const auto links = build_adjacency_links(g, 1);
    Rng rng(seed);
    const auto placement = random_placement(g, links, 2, rng);
    auto demands = random_demands(g, 4, 0, rng);
    for (std::size_t i = 0; i < demands.size(); ++i)
      demands[i].horizon = TimePoint(i * 4);

    std::map<Ticks, TimeGraph> snapshots;
    ScheduleConfig config;
    config.seed = seed;
    config.stop_pickup = 2;
    config.stop_dropoff = 1;
    config.before_batch = [&](TimePoint t, const TimeGraph& tg) {
      snapshots.emplace(t.ticks(), tg);
    };
    const auto tt = build_timetable(g, links, placement, demands, config);
    expect_clean(tt, g);

    for (const auto& s : tt.agvs)
    {
      for (std::size_t k = 0; k < s.demands.size(); ++k)
      {
        const Demand& d = demands.at(s.demands[k]);
        const TimePath& prev = s.paths[k];
        const TimePath& path = s.paths[k + 1];
        const Step& parking = prev.steps.back();
        const TimePoint t0 = std::max(d.horizon, parking.start);
        const NodeId anchor = g.node_of(path.steps.back().resource);
        const Route route{{{{d.pickup}, TimePoint(2)},
          {{d.dropoff}, TimePoint(1)}, {{anchor}, Infinity}}};
        const test::ScheduleOracle oracle(
          snapshots.at(d.horizon.ticks()), g, s.agv);
        const auto best = oracle.earliest_arrival(
          SourceSpec::at_node(s.agv, g.node_of(parking.resource), t0),
          route);
        ASSERT_TRUE(best);
        EXPECT_EQ(path.arrival, *best) << "seed " << seed;
      }
    }
  }
}

TEST(Schedule, EveryPresetSucceeds)
{
  for (const int n : {8, 12, 16})
  {
    const Fleet fleet(n, 5000, 4, 20, 0, n);
    for (const auto preset : AllPresets)
    {
      ScheduleConfig config;
      config.preset = preset;
      config.seed = 3;
      const auto tt = fleet.run(config);
      expect_clean(tt, fleet.built.graph);
      std::size_t served = 0;
      for (const auto& s : tt.agvs)
        served += s.demands.size();
      EXPECT_EQ(served, fleet.demands.size());
    }
  }
}

TEST(Schedule, GuidanceDoesNotChangeTheSchedule)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed)
  {
    const Fleet fleet(10, 5000, 4, 15, 60000, seed);
    ScheduleConfig zero;
    zero.preset = Preset::full_zero;
    zero.seed = seed;
    ScheduleConfig guided = zero;
    guided.preset = Preset::full_manhattan;
    const auto a = fleet.run(zero);
    const auto b = fleet.run(guided);
    EXPECT_EQ(metrics(a).makespan, metrics(b).makespan);
  }
}

TEST(Schedule, SameSeedSameTimetable)
{
  const Fleet fleet(10, 5000, 4, 15, 40000, 11);
  ScheduleConfig config;
  config.seed = 5;
  const auto a = fleet.run(config);
  const auto b = fleet.run(config);
  EXPECT_EQ(a.time_graph.dump_csv(), b.time_graph.dump_csv());
  ASSERT_EQ(a.agvs.size(), b.agvs.size());
  for (std::size_t i = 0; i < a.agvs.size(); ++i)
  {
    EXPECT_EQ(a.agvs[i].flattened_steps(), b.agvs[i].flattened_steps());
    EXPECT_EQ(a.agvs[i].demands, b.agvs[i].demands);
  }
}

TEST(Schedule, EarlierReservationsAreKept)
{
  const Fleet fleet(10, 5000, 4, 20, 80000, 2);
  std::vector<std::pair<TimePoint, TimeGraph>> snapshots;
  ScheduleConfig config;
  config.before_batch = [&](TimePoint t, const TimeGraph& tg) {
    snapshots.emplace_back(t, tg);
  };
  const auto tt = fleet.run(config);
  ASSERT_GT(snapshots.size(), 5u);

  // Only an AGV's parking may shrink, and only from the moment it departs
  // on a route planned at or after the snapshot.
  const auto cutoff = [&](TimePoint batch, AgvId agv) {
    TimePoint cut = Infinity;
    const auto& s = tt.agvs.at(agv);
    for (std::size_t k = 0; k < s.demands.size(); ++k)
    {
      if (fleet.demands.at(s.demands[k]).horizon >= batch)
        cut = std::min(cut, s.paths[k + 1].steps.front().start);
    }
    return cut;
  };

  for (const auto& [t, snap] : snapshots)
  {
    for (std::uint32_t r = 0; r < snap.resource_count(); ++r)
    {
      for (const auto& e : snap.tree(ResourceId{r}).entries())
      {
        for (AgvId agv = 0; agv < 4; ++agv)
        {
          if (!e.agvs.contains(agv))
            continue;
          Interval kept = e.interval;
          kept.end = std::min(kept.end, cutoff(t, agv));
          if (kept.start < kept.end)
          {
            EXPECT_TRUE(
              held_by(tt.time_graph.tree(ResourceId{r}), agv, kept));
          }
        }
      }
    }
  }
}

TEST(Schedule, PartialPresetsAcrossSeeds)
{
  for (std::uint64_t seed = 0; seed < 40; ++seed)
  {
    const Fleet fleet(10, 5000, 4, 10, 30000, seed);
    for (const auto preset :
      {Preset::partial_dijkstras, Preset::partial_manhattan})
    {
      ScheduleConfig config;
      config.preset = preset;
      config.seed = seed;
      expect_clean(fleet.run(config), fleet.built.graph);
    }
  }
}

TEST(Schedule, RejectsBadDemands)
{
  const auto g = build_grid(5, 5000);
  const auto links = build_adjacency_links(g, 1);
  const Placement placement{{0, ResourceId{test::at(g, 0, 2)}}};
  const NodeId inner = test::at(g, 2, 2);
  const NodeId anchor = g.anchors().front();
  const std::vector<Demand> on_anchor{{0, inner, anchor, TimePoint(0)}};
  const std::vector<Demand> unknown{{0, inner, 99, TimePoint(0)}};
  const std::vector<Demand> never{{0, inner, test::at(g, 1, 1), Infinity}};
  for (const auto& d : {on_anchor, unknown, never})
  {
    EXPECT_THROW(build_timetable(g, links, placement, d, {}),
      InvalidParameter);
  }
}

TEST(Schedule, SubdivisionNodesAreNotDemandEndpoints)
{
  const auto g = subdivide(build_grid(4, 6000), 2);
  std::optional<NodeId> synthetic;
  for (NodeId n = 0; n < g.node_count(); ++n)
  {
    if (g.node(n).synthetic)
      synthetic = n;
  }
  ASSERT_TRUE(synthetic);
  const NodeId inner = test::at(g, 2, 2);
  ASSERT_FALSE(g.node(inner).synthetic);
  const std::vector<Demand> d{{0, *synthetic, inner, TimePoint(0)}};
  EXPECT_THROW(check_demands(g, d), InvalidParameter);
}

TEST(Schedule, PresetNames)
{
  for (const auto p : AllPresets)
    EXPECT_EQ(parse_preset(to_string(p)), p);
  EXPECT_FALSE(parse_preset("fastest"));
  EXPECT_EQ(parse_anchoriser("naive"), Anchoriser::naive);
  EXPECT_EQ(parse_anchoriser("greedy"), Anchoriser::greedy);
}
