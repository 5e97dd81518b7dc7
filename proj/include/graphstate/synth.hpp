#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graphstate/edge_stream.hpp"

namespace graphstate {

/// A planted global event: days start_day..end_day (inclusive) have their
/// edge-generation rate scaled by `multiplier`.
struct SynthEvent {
  int start_day = 0;
  int end_day = 0;  // inclusive
  double multiplier = 1.0;
};

struct SynthConfig {
  int n_nodes = 0;
  int n_days = 0;
  double base_edges_per_day = 0.0;
  std::array<double, 7> weekday_factors{1, 1, 1, 1, 1, 0.3, 0.3};
  std::vector<SynthEvent> events;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on any violated constraint (n_nodes < 2,
/// non-positive rates, events out of [0, n_days) or overlapping, ...).
void validate(const SynthConfig& cfg);

SynthConfig parse_synth_config(std::istream& in);
SynthConfig load_synth_config(const std::filesystem::path& file);

/// Day label for ground truth: "base" or "event_<i>" by config order.
std::vector<std::string> truth_labels(const SynthConfig& cfg);

struct SynthResult {
  EdgeStream stream;
  std::vector<std::string> day_labels;
};

/// Draw day d's edge count from Poisson(base * weekday_factors[d mod 7] *
/// event multiplier), endpoints from a fixed pool where node i has probability
/// proportional to 1/(i+1) (pairs redrawn on collision), timestamps uniform
/// within the day. Deterministic for a fixed seed; the returned stream is
/// already in normalized form.
SynthResult generate_stream(const SynthConfig& cfg);

struct EventReport {
  int index = 0;
  int start_day = 0;
  int end_day = 0;
  double multiplier = 1.0;
  int modal_state = 0;  // letter index
  double purity = 0.0;  // fraction of the event's days carrying modal_state
  bool distinct_from_baseline = false;
};

struct PairDistinct {
  int event_a = 0;
  int event_b = 0;
  bool distinct = false;
};

struct DetectionReport {
  int baseline_modal_state = 0;  // modal state over non-event days only
  std::vector<EventReport> events;
  std::vector<PairDistinct> pairwise;
  bool all_events_distinct_from_baseline = false;
  bool all_pairs_distinct = false;
};

/// Score learned state labels against the planted ground truth. `labels` are
/// letter indices per day, `truth` the day labels written by the generator.
/// Throws on length mismatch or truth/event inconsistency.
DetectionReport evaluate_detection(std::span<const int> labels,
                                   std::span<const std::string> truth,
                                   std::span<const SynthEvent> events);

}  // namespace graphstate
