#include "graphstate/synth.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"

using namespace graphstate;

namespace {

SynthConfig small_config() {
  SynthConfig cfg;
  cfg.n_nodes = 10;
  cfg.n_days = 14;
  cfg.base_edges_per_day = 50.0;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("config parses from JSON with defaults") {
  std::istringstream full(R"({
    "n_nodes": 20, "n_days": 30, "base_edges_per_day": 100.5,
    "weekday_factors": [1, 1, 1, 1, 1, 0.5, 0.4],
    "events": [{"start": 3, "end": 5, "multiplier": 0.2}],
    "seed": 9
  })");
  const SynthConfig cfg = parse_synth_config(full);
  CHECK(cfg.n_nodes == 20);
  CHECK(cfg.n_days == 30);
  CHECK(cfg.base_edges_per_day == 100.5);
  CHECK(cfg.weekday_factors[5] == 0.5);
  REQUIRE(cfg.events.size() == 1);
  CHECK(cfg.events[0].start_day == 3);
  CHECK(cfg.events[0].end_day == 5);
  CHECK(cfg.events[0].multiplier == 0.2);
  CHECK(cfg.seed == 9);

  std::istringstream minimal(R"({"n_nodes": 2, "n_days": 3, "base_edges_per_day": 5})");
  const SynthConfig defaults = parse_synth_config(minimal);
  CHECK(defaults.weekday_factors == std::array<double, 7>{1, 1, 1, 1, 1, 0.3, 0.3});
  CHECK(defaults.events.empty());
  CHECK(defaults.seed == 0);

  std::istringstream garbage("{nope");
  CHECK_THROWS_AS(parse_synth_config(garbage), std::invalid_argument);
  std::istringstream missing(R"({"n_days": 3, "base_edges_per_day": 5})");
  CHECK_THROWS_AS(parse_synth_config(missing), std::invalid_argument);
  std::istringstream short_factors(
      R"({"n_nodes": 2, "n_days": 3, "base_edges_per_day": 5, "weekday_factors": [1, 1]})");
  CHECK_THROWS_AS(parse_synth_config(short_factors), std::invalid_argument);
}

TEST_CASE("validation rejects bad configs") {
  SynthConfig cfg = small_config();
  cfg.n_nodes = 1;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = small_config();
  cfg.n_days = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = small_config();
  cfg.base_edges_per_day = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = small_config();
  cfg.weekday_factors[3] = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = small_config();
  cfg.events = {{-1, 2, 0.5}};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.events = {{2, 14, 0.5}};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.events = {{5, 3, 0.5}};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.events = {{1, 3, 0.0}};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.events = {{1, 3, 1.5}};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.events = {{1, 5, 0.5}, {5, 7, 0.5}};  // overlap at day 5
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.events = {{6, 7, 0.5}, {1, 5, 0.5}};  // adjacent is fine, any order
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("truth labels name event days by config order") {
  SynthConfig cfg = small_config();
  cfg.n_days = 5;
  cfg.events = {{1, 2, 0.5}, {4, 4, 0.5}};
  CHECK(truth_labels(cfg) ==
        std::vector<std::string>{"base", "event_0", "event_0", "base", "event_1"});
}

TEST_CASE("generation is deterministic in the seed") {
  const SynthConfig cfg = small_config();
  const SynthResult a = generate_stream(cfg);
  const SynthResult b = generate_stream(cfg);
  CHECK(a.stream.edges() == b.stream.edges());

  SynthConfig other = cfg;
  other.seed = 2;
  const SynthResult c = generate_stream(other);
  CHECK(a.stream.edges() != c.stream.edges());
  CHECK(a.day_labels == c.day_labels);  // truth depends only on the config
}

TEST_CASE("generated streams are already canonical") {
  SynthConfig cfg = small_config();
  cfg.n_days = 20;
  const SynthResult r = generate_stream(cfg);
  REQUIRE_FALSE(r.stream.empty());
  const EdgeStream renorm = normalize_edges(r.stream.edges());
  CHECK(renorm.edges() == r.stream.edges());
  CHECK(renorm.self_loops_dropped() == 0);
  for (const TimedEdge& e : r.stream.edges()) {
    CHECK(e.u < e.v);
    CHECK(e.v < static_cast<NodeId>(cfg.n_nodes));
    CHECK(e.t >= 0);
    CHECK(e.t < static_cast<Timestamp>(cfg.n_days) * 86400);
  }
  CHECK(r.day_labels.size() == 20);
}

TEST_CASE("edge volume concentrates around the configured rates") {
  SynthConfig cfg;
  cfg.n_nodes = 40;
  cfg.n_days = 30;
  cfg.base_edges_per_day = 1000.0;
  cfg.seed = 5;
  double expected = 0.0;
  for (int d = 0; d < cfg.n_days; ++d) {
    expected += cfg.base_edges_per_day * cfg.weekday_factors[static_cast<std::size_t>(d % 7)];
  }
  const SynthResult r = generate_stream(cfg);
  const double total = static_cast<double>(r.stream.size());
  CHECK(std::fabs(total - expected) <= 5.0 * std::sqrt(expected));
}

TEST_CASE("event-day volume scales with the multiplier across seeds") {
  SynthConfig cfg;
  cfg.n_nodes = 30;
  cfg.n_days = 1;
  cfg.base_edges_per_day = 500.0;
  cfg.events = {{0, 0, 0.5}};
  const double expected = 250.0;
  double sum = 0.0;
  const int runs = 100;
  for (int s = 0; s < runs; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    sum += static_cast<double>(generate_stream(cfg).stream.size());
  }
  const double mean = sum / runs;
  const double sigma_mean = std::sqrt(expected / runs);
  CHECK(std::fabs(mean - expected) <= 3.0 * sigma_mean);
}

TEST_CASE("detection report closed forms") {
  const std::vector<SynthEvent> one_event{{2, 4, 0.5}};
  const std::vector<std::string> truth{"base", "base", "event_0", "event_0", "event_0", "base"};

  const DetectionReport all_a =
      evaluate_detection(std::vector<int>{0, 0, 0, 0, 0, 0}, truth, one_event);
  CHECK(all_a.events[0].purity == 1.0);
  CHECK_FALSE(all_a.events[0].distinct_from_baseline);
  CHECK_FALSE(all_a.all_events_distinct_from_baseline);

  const DetectionReport clean =
      evaluate_detection(std::vector<int>{0, 0, 1, 1, 1, 0}, truth, one_event);
  CHECK(clean.baseline_modal_state == 0);
  CHECK(clean.events[0].modal_state == 1);
  CHECK(clean.events[0].purity == 1.0);
  CHECK(clean.events[0].distinct_from_baseline);
  CHECK(clean.all_events_distinct_from_baseline);

  const DetectionReport mixed =
      evaluate_detection(std::vector<int>{0, 0, 1, 1, 2, 0}, truth, one_event);
  CHECK(mixed.events[0].modal_state == 1);
  CHECK(mixed.events[0].purity == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("modal ties go to the smallest letter") {
  const std::vector<SynthEvent> events{{0, 1, 0.5}};
  const std::vector<std::string> truth{"event_0", "event_0", "base", "base"};
  const DetectionReport r =
      evaluate_detection(std::vector<int>{0, 1, 2, 1}, truth, events);
  CHECK(r.events[0].modal_state == 0);   // A and B tied -> A
  CHECK(r.baseline_modal_state == 1);    // B and C tied -> B
}

TEST_CASE("pairwise distinctness covers every event pair") {
  const std::vector<SynthEvent> events{{0, 0, 0.5}, {2, 2, 0.5}, {4, 4, 0.5}};
  const std::vector<std::string> truth{"event_0", "base", "event_1",
                                       "base",    "event_2", "base"};
  const DetectionReport r =
      evaluate_detection(std::vector<int>{1, 0, 2, 0, 1, 0}, truth, events);
  REQUIRE(r.pairwise.size() == 3);
  CHECK(r.pairwise[0].distinct);        // events 0,1: B vs C
  CHECK_FALSE(r.pairwise[1].distinct);  // events 0,2: both B
  CHECK(r.pairwise[2].distinct);        // events 1,2: C vs B
  CHECK(r.all_events_distinct_from_baseline);
  CHECK_FALSE(r.all_pairs_distinct);
}

TEST_CASE("report renaming covariance") {
  const std::vector<SynthEvent> events{{1, 2, 0.5}};
  const std::vector<std::string> truth{"base", "event_0", "event_0", "base"};
  const std::vector<int> labels{0, 1, 1, 0};
  std::vector<int> renamed;
  for (int l : labels) renamed.push_back(l == 0 ? 2 : 0);  // A<->C swap
  const DetectionReport a = evaluate_detection(labels, truth, events);
  const DetectionReport b = evaluate_detection(renamed, truth, events);
  CHECK(a.events[0].purity == b.events[0].purity);
  CHECK(a.events[0].distinct_from_baseline == b.events[0].distinct_from_baseline);
  CHECK(b.baseline_modal_state == 2);
  CHECK(b.events[0].modal_state == 0);
}

TEST_CASE("evaluation rejects inconsistent input") {
  const std::vector<SynthEvent> events{{0, 0, 0.5}};
  CHECK_THROWS_AS(evaluate_detection(std::vector<int>{0, 0},
                                     std::vector<std::string>{"base"}, events),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_detection(std::vector<int>{0},
                                     std::vector<std::string>{"what"}, events),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_detection(std::vector<int>{0, 0},
                                     std::vector<std::string>{"base", "event_3"}, events),
                  std::invalid_argument);
  // an event that never occurs in truth
  CHECK_THROWS_AS(evaluate_detection(std::vector<int>{0, 0},
                                     std::vector<std::string>{"base", "base"}, events),
                  std::invalid_argument);
  // no baseline day at all
  CHECK_THROWS_AS(evaluate_detection(std::vector<int>{0},
                                     std::vector<std::string>{"event_0"}, events),
                  std::invalid_argument);
}

}
