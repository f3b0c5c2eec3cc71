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

#include <agvtt/bench.hpp>
#include <agvtt/geo_reservations.hpp>

#include "support/fixtures.hpp"
#include "support/instances.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace agvtt;
using test::ivl;

namespace {

TimePath make_path(AgvId agv, std::vector<Step> steps)
{
  TimePath p;
  p.agv = agv;
  p.steps = std::move(steps);
  p.arrival = p.steps.back().start;
  return p;
}

} // namespace

TEST(Naive, NoLinksReproducesSteps)
{
  const auto g = test::chain({10, 10});
  const auto links = GeoLinks::none(g.resource_count());
  const auto path = make_path(0, {
      {ResourceId{0}, TimePoint(0), TimePoint(4)},
      {g.resource_of_edge(0), TimePoint(4), TimePoint(14)},
      {ResourceId{1}, TimePoint(14), TimePoint(20)}});
  const ReservationSet expected{
    {ResourceId{0}, 0, ivl(0, 4)},
    {g.resource_of_edge(0), 0, ivl(4, 14)},
    {ResourceId{1}, 0, ivl(14, 20)}};
  EXPECT_EQ(naive_reservations(path, links), expected);
  EXPECT_EQ(boundary_reservations(path, links), expected);
}

TEST(Naive, SingleStepExpands)
{
  const auto g = test::chain({10, 10});
  const auto links = build_adjacency_links(g, 1);
  const auto path =
    make_path(0, {{ResourceId{1}, TimePoint(0), TimePoint(10)}});
  const ReservationSet expected{
    {ResourceId{1}, 0, ivl(0, 10)},
    {g.resource_of_edge(0), 0, ivl(0, 10)},
    {g.resource_of_edge(1), 0, ivl(0, 10)}};
  EXPECT_EQ(naive_reservations(path, links), expected);
  EXPECT_EQ(normalise(boundary_reservations(path, links)), normalise(expected));
}

TEST(Naive, SharedLinkMergesUnderNormalise)
{
  // Node 0 then edge 0: node 0's footprint and edge 0's footprint both hold
  // node 0 and edge 0.
  const auto g = test::chain({10});
  const auto links = build_adjacency_links(g, 1);
  const auto e = g.resource_of_edge(0);
  const auto path = make_path(0, {
      {ResourceId{0}, TimePoint(0), TimePoint(5)},
      {e, TimePoint(5), TimePoint(15)}});
  const auto naive = naive_reservations(path, links);
  std::size_t on_e = 0;
  for (const auto& r : naive)
    on_e += r.resource == e;
  EXPECT_EQ(on_e, 2u);

  const auto merged = normalise(naive);
  const ReservationSet expected{
    {ResourceId{0}, 0, ivl(0, 15)},
    {ResourceId{1}, 0, ivl(5, 15)},
    {e, 0, ivl(0, 15)}};
  EXPECT_EQ(merged, expected);
}

TEST(Naive, PassageHoldsFootprintForOneTick)
{
  const auto g = test::chain({10, 10});
  const auto links = build_adjacency_links(g, 1);
  const auto path = make_path(0, {
      {g.resource_of_edge(0), TimePoint(0), TimePoint(10)},
      {ResourceId{1}, TimePoint(10), TimePoint(10)},
      {g.resource_of_edge(1), TimePoint(10), TimePoint(20)}});
  const auto naive = normalise(naive_reservations(path, links));
  EXPECT_EQ(naive, normalise(boundary_reservations(path, links)));
  // Node 1 is held continuously; node 0 until the passage tick ends.
  for (const auto& r : naive)
  {
    if (r.resource == ResourceId{0})
      EXPECT_EQ(r.interval, ivl(0, 10));
    if (r.resource == ResourceId{1})
      EXPECT_EQ(r.interval, ivl(0, 20));
    if (r.resource == ResourceId{2})
      EXPECT_EQ(r.interval, ivl(10, 20));
  }
}

TEST(Normalise, MergesAndIsIdempotent)
{
  const ReservationSet touching{
    {ResourceId{0}, 0, ivl(5, 10)}, {ResourceId{0}, 0, ivl(0, 5)}};
  EXPECT_EQ(normalise(touching),
    (ReservationSet{{ResourceId{0}, 0, ivl(0, 10)}}));

  const ReservationSet apart{
    {ResourceId{0}, 0, ivl(0, 3)}, {ResourceId{0}, 0, ivl(5, 9)},
    {ResourceId{0}, 1, ivl(3, 5)}};
  EXPECT_EQ(normalise(apart), apart);

  std::mt19937_64 rng(1);
  ReservationSet noisy;
  for (int i = 0; i < 200; ++i)
  {
    const Ticks s = rng() % 100;
    const ResourceId r{static_cast<std::uint32_t>(rng() % 5)};
    noisy.push_back(Reservation{
      r, static_cast<AgvId>(rng() % 2), ivl(s, s + 1 + rng() % 10)});
  }
  EXPECT_EQ(normalise(normalise(noisy)), normalise(noisy));
}

TEST(Boundary, RejectsGaps)
{
  const auto g = test::chain({10});
  const auto links = build_adjacency_links(g, 1);
  const auto path = make_path(0, {
      {ResourceId{0}, TimePoint(0), TimePoint(5)},
      {g.resource_of_edge(0), TimePoint(6), TimePoint(16)}});
  EXPECT_THROW(boundary_reservations(path, links), std::invalid_argument);
}

TEST(Boundary, StraightRunOnSubdividedChain)
{
  const auto g = subdivide(test::chain({4000, 4000, 4000}), 4);
  const auto links = build_adjacency_links(g, 4);
  // Ten steps from the first original node along the chain.
  const auto walk = spatial_path(g, 0, 3, {}, Guide::zero());
  ASSERT_TRUE(walk);
  SpatialPath ten{{walk->resources.begin(), walk->resources.begin() + 11}, 0};
  const auto path = timed_walk(g, 0, ten, TimePoint(0));
  EXPECT_EQ(normalise(boundary_reservations(path, links)),
    normalise(naive_reservations(path, links)));
}

TEST(Boundary, CornerTurnOnSubdividedGrid)
{
  const auto g = subdivide(build_grid(5, 6000), 3);
  const auto links = build_adjacency_links(g, 3);
  const auto walk = spatial_path(g, test::at(g, 3, 3), test::at(g, 9, 9), {},
      Guide::zero());
  ASSERT_TRUE(walk);
  const auto path = timed_walk(g, 0, *walk, TimePoint(0));
  EXPECT_EQ(normalise(boundary_reservations(path, links)),
    normalise(naive_reservations(path, links)));
}

TEST(Boundary, MatchesNaiveOnRandomPaths)
{
  std::mt19937_64 rng(29);
  for (std::uint32_t s = 1; s <= 4; ++s)
  {
    const auto g = subdivide(build_grid(6, 12000), s);
    for (std::uint32_t radius = 1; radius <= s + 1; ++radius)
    {
      const auto links = build_adjacency_links(g, radius);
      for (int i = 0; i < 20; ++i)
      {
        const auto path = test::random_path(g, rng);
        const auto boundary = boundary_reservations(path, links);
        // Already merged: normalising only reorders.
        ASSERT_EQ(boundary.size(), normalise(boundary).size());
        ASSERT_EQ(normalise(boundary),
          normalise(naive_reservations(path, links)));
      }
    }
  }
}

TEST(Boundary, CoversTheBasePath)
{
  std::mt19937_64 rng(31);
  const auto g = subdivide(build_grid(6, 6000), 2);
  const auto links = build_adjacency_links(g, 2);
  for (int i = 0; i < 30; ++i)
  {
    const auto path = test::random_path(g, rng);
    const auto rs = boundary_reservations(path, links);
    for (const auto& step : path.steps)
    {
      const Interval held = step.held();
      const bool covered = std::any_of(rs.begin(), rs.end(),
          [&](const Reservation& r)
          {
            return r.resource == step.resource && r.interval.covers(held);
          });
      EXPECT_TRUE(covered);
    }
  }
}

TEST(Boundary, WorkRatioGrowsWithSubdivision)
{
  double previous = 0.0;
  for (const std::uint32_t s : {1u, 2u, 4u, 6u})
  {
    const auto g = subdivide(build_grid(10, 6000), s);
    const auto links = build_adjacency_links(g, s);
    const auto path = timed_walk(g, 0, corner_to_corner(g), TimePoint(0));
    GeoWork naive;
    GeoWork boundary;
    (void)naive_reservations(path, links, &naive);
    (void)boundary_reservations(path, links, &boundary);
    const double ratio = static_cast<double>(naive.touched)
      / static_cast<double>(boundary.touched);
    EXPECT_GT(ratio, previous) << "s = " << s;
    previous = ratio;
  }
}

TEST(Footprint, CoversResourceAndLinks)
{
  const auto g = test::chain({10, 10});
  const auto links = build_adjacency_links(g, 1);
  const auto rs = footprint_reservations(ResourceId{1}, 4,
      Interval{TimePoint(3), Infinity}, links);
  EXPECT_EQ(rs.size(), 3u);
  for (const auto& r : rs)
  {
    EXPECT_EQ(r.agv, 4u);
    EXPECT_TRUE(links.covers(ResourceId{1}, r.resource));
  }
}
