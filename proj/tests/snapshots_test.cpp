#include "graphstate/snapshots.hpp"

#include <cmath>
#include <map>

#include "doctest.h"

#include "graphstate/rng.hpp"
#include "test_util.hpp"

using namespace graphstate;

namespace {

EdgeStream stream_of(std::vector<TimedEdge> edges) { return normalize_edges(std::move(edges)); }

constexpr Timestamp kDay = 86400;

}  // namespace

TEST_SUITE("snapshots") {

TEST_CASE("snapshot graph validates and answers weight queries") {
  const SnapshotGraph g(0, 0, {{0, 1, 1.0}, {0, 2, 0.5}});
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 0) == 1.0);
  CHECK(g.weight(1, 2) == 0.0);
  CHECK(g.total_weight() == 1.5);
  CHECK(g.is_active(2));
  CHECK_FALSE(g.is_active(3));
  CHECK(g.active_nodes() == std::vector<NodeId>{0, 1, 2});

  CHECK_THROWS_AS(SnapshotGraph(0, 0, {{1, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SnapshotGraph(0, 0, {{2, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SnapshotGraph(0, 0, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SnapshotGraph(0, 0, {{0, 1, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(SnapshotGraph(0, 0, {{0, 2, 1.0}, {0, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SnapshotGraph(0, 0, {{0, 1, 1.0}, {0, 1, 0.5}}), std::invalid_argument);
}

TEST_CASE("discrete windows aggregate to binary weights") {
  const EdgeStream s = stream_of({{1, 2, 10}, {1, 2, 20}, {2, 3, 90000}});
  const std::vector<SnapshotGraph> snaps = discrete_snapshots(s, {kDay, 0});
  REQUIRE(snaps.size() == 2);
  CHECK(snaps[0].edges() == std::vector<WeightedEdge>{{1, 2, 1.0}});
  CHECK(snaps[1].edges() == std::vector<WeightedEdge>{{2, 3, 1.0}});
  CHECK(snaps[0].index() == 0);
  CHECK(snaps[1].index() == 1);
  CHECK(snaps[0].eval_time() == kDay - 1);
  CHECK(snaps[1].eval_time() == 2 * kDay - 1);
}

TEST_CASE("single edge at the origin yields one snapshot") {
  const std::vector<SnapshotGraph> snaps =
      discrete_snapshots(stream_of({{0, 1, 0}}), {kDay, 0});
  REQUIRE(snaps.size() == 1);
  CHECK(snaps[0].edge_count() == 1);
}

TEST_CASE("gap windows are materialized empty") {
  const EdgeStream s = stream_of({{0, 1, 10}, {0, 1, 2 * kDay + 10}});
  const std::vector<SnapshotGraph> snaps = discrete_snapshots(s, {kDay, 0});
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[0].edge_count() == 1);
  CHECK(snaps[1].empty());
  CHECK(snaps[2].edge_count() == 1);
}

TEST_CASE("discrete windows partition the stream") {
  DeterministicRng rng(11);
  std::vector<TimedEdge> raw;
  for (int i = 0; i < 400; ++i) {
    raw.push_back({static_cast<NodeId>(rng.below(12)), static_cast<NodeId>(rng.below(12)),
                   static_cast<Timestamp>(rng.below(10 * kDay))});
  }
  const EdgeStream s = stream_of(std::move(raw));
  const Timestamp t0 = aligned_origin(s, kDay);
  const std::vector<SnapshotGraph> snaps = discrete_snapshots(s, {kDay, t0});
  CHECK(snaps.size() == window_count(s, t0, kDay));

  for (const TimedEdge& e : s.edges()) {
    const auto w = static_cast<std::size_t>((e.t - t0) / kDay);
    REQUIRE(w < snaps.size());
    CHECK(snaps[w].weight(e.u, e.v) == 1.0);
  }
  for (const SnapshotGraph& g : snaps) {
    for (const WeightedEdge& e : g.edges()) CHECK(e.w == 1.0);
    CHECK(g.active_nodes().size() <= 2 * g.edge_count());
  }
}

TEST_CASE("decay probability matches the exponential") {
  const double tau = 12.0 * kDay;
  CHECK(decay_probability(100, 100, tau) == 1.0);
  CHECK(decay_probability(static_cast<Timestamp>(tau), 0, tau) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-12));
  CHECK(decay_probability(24 * kDay, 0, tau) ==
        doctest::Approx(0.1353352832366127).epsilon(1e-12));
  CHECK_THROWS_AS(decay_probability(0, 1, tau), std::invalid_argument);
  CHECK_THROWS_AS(decay_probability(1, 0, 0.0), std::invalid_argument);
}

TEST_CASE("an untouched pair ages out at the cutoff boundary") {
  // tau*ln(1/cutoff) ~ 110.52 days; the end-of-day evaluation grid crosses it
  // between day 109 and day 110.
  const EdgeStream s = stream_of({{1, 2, 0}});
  DecayConfig cfg;
  cfg.tau = 12.0 * kDay;
  cfg.cutoff = 1e-4;
  cfg.grid_step = kDay;
  const std::vector<SnapshotGraph> snaps = probabilistic_snapshots(s, cfg, 0, 120);
  REQUIRE(snaps.size() == 120);
  for (int i = 0; i <= 109; ++i) {
    CHECK(snaps[static_cast<std::size_t>(i)].weight(1, 2) > 0.0);
  }
  for (int i = 110; i < 120; ++i) {
    CHECK(snaps[static_cast<std::size_t>(i)].empty());
  }
  CHECK(snaps[109].weight(1, 2) >= cfg.cutoff);
}

TEST_CASE("weight comes from the most recent occurrence") {
  const EdgeStream s = stream_of({{1, 2, 0}, {1, 2, 5 * kDay}});
  DecayConfig cfg;
  cfg.tau = 12.0 * kDay;
  const std::vector<SnapshotGraph> snaps = probabilistic_snapshots(s, cfg, 0, 7);
  const Timestamp t5 = 6 * kDay - 1;
  CHECK(snaps[5].weight(1, 2) == std::exp(-static_cast<double>(t5 - 5 * kDay) / cfg.tau));
  // and not the stale first occurrence
  CHECK(snaps[5].weight(1, 2) > std::exp(-static_cast<double>(t5) / cfg.tau));
}

TEST_CASE("communication at the evaluation instant carries weight one") {
  const EdgeStream s = stream_of({{1, 2, kDay - 1}, {3, 4, kDay - 1}});
  const std::vector<SnapshotGraph> probs = probabilistic_snapshots(s, {}, 0, 1);
  const std::vector<SnapshotGraph> discs = discrete_snapshots(s, {kDay, 0});
  CHECK(probs[0].edges() == discs[0].edges());
  CHECK(probs[0].weight(1, 2) == 1.0);
}

TEST_CASE("weights decay monotonically and reset on contact") {
  DeterministicRng rng(3);
  std::vector<TimedEdge> raw;
  for (int i = 0; i < 300; ++i) {
    raw.push_back({static_cast<NodeId>(rng.below(8)), static_cast<NodeId>(rng.below(8)),
                   static_cast<Timestamp>(rng.below(20 * kDay))});
  }
  const EdgeStream s = stream_of(std::move(raw));
  DecayConfig cfg;
  cfg.tau = 4.0 * kDay;
  const std::size_t n = window_count(s, 0, kDay);
  const std::vector<SnapshotGraph> snaps = probabilistic_snapshots(s, cfg, 0, n);

  // last communication time per pair, replayed alongside the snapshots
  std::map<std::pair<NodeId, NodeId>, Timestamp> last;
  std::size_t next_edge = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Timestamp ti = snaps[i].eval_time();
    bool touched_any = false;
    std::map<std::pair<NodeId, NodeId>, bool> touched;
    while (next_edge < s.size() && s.edges()[next_edge].t <= ti) {
      const TimedEdge& e = s.edges()[next_edge++];
      last[{e.u, e.v}] = e.t;
      touched[{e.u, e.v}] = true;
      touched_any = true;
    }
    (void)touched_any;
    if (i == 0) continue;
    for (const auto& [pair, t_last] : last) {
      const double prev = snaps[i - 1].weight(pair.first, pair.second);
      const double cur = snaps[i].weight(pair.first, pair.second);
      if (!touched.count(pair)) {
        if (prev > 0.0) CHECK(cur <= prev);  // pure decay or age-out
      } else if (t_last == ti) {
        CHECK(cur == 1.0);
      }
    }
  }
}

TEST_CASE("huge tau reduces to the cumulative union graph") {
  DeterministicRng rng(5);
  std::vector<TimedEdge> raw;
  for (int i = 0; i < 200; ++i) {
    raw.push_back({static_cast<NodeId>(rng.below(10)), static_cast<NodeId>(rng.below(10)),
                   static_cast<Timestamp>(rng.below(15 * kDay))});
  }
  const EdgeStream s = stream_of(std::move(raw));
  DecayConfig cfg;
  cfg.tau = 1e9 * static_cast<double>(s.t_max() - s.t_min() + 1);
  const std::size_t n = window_count(s, 0, kDay);
  const std::vector<SnapshotGraph> snaps = probabilistic_snapshots(s, cfg, 0, n);

  std::map<std::pair<NodeId, NodeId>, bool> seen;
  std::size_t next_edge = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (next_edge < s.size() && s.edges()[next_edge].t <= snaps[i].eval_time()) {
      const TimedEdge& e = s.edges()[next_edge++];
      seen[{e.u, e.v}] = true;
    }
    REQUIRE(snaps[i].edge_count() == seen.size());
    for (const WeightedEdge& e : snaps[i].edges()) CHECK(e.w > 0.999);
  }
}

TEST_CASE("origin alignment and window counting") {
  const EdgeStream s = stream_of({{1, 2, 90000}});
  CHECK(aligned_origin(s, kDay) == kDay);
  CHECK(window_count(s, kDay, kDay) == 1);

  const EdgeStream two = stream_of({{1, 2, 90000}, {1, 2, 2 * kDay}});
  CHECK(window_count(two, kDay, kDay) == 2);
}

TEST_CASE("parameter validation") {
  const EdgeStream s = stream_of({{1, 2, 10}});
  const EdgeStream empty;
  CHECK_THROWS_AS(discrete_snapshots(s, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(discrete_snapshots(empty, {kDay, 0}), std::invalid_argument);
  CHECK_THROWS_AS(discrete_snapshots(s, {kDay, s.t_min() + 1}), std::invalid_argument);

  DecayConfig bad;
  bad.tau = 0.0;
  CHECK_THROWS_AS(probabilistic_snapshots(s, bad, 0, 1), std::invalid_argument);
  bad = {};
  bad.cutoff = 1.0;
  CHECK_THROWS_AS(probabilistic_snapshots(s, bad, 0, 1), std::invalid_argument);
  bad = {};
  bad.grid_step = 0;
  CHECK_THROWS_AS(probabilistic_snapshots(s, bad, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(probabilistic_snapshots(s, {}, 0, 0), std::invalid_argument);
}

}
