#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "graphstate/detrend.hpp"
#include "graphstate/features.hpp"
#include "graphstate/snapshots.hpp"
#include "graphstate/state_space.hpp"
#include "graphstate/synth.hpp"

namespace graphstate {

enum class SnapshotModel { Discrete, Prob };

/// Full configuration of the ingest -> snapshots -> features -> detrend ->
/// states run. Field defaults mirror the CLI defaults.
struct RunConfig {
  std::filesystem::path input;
  SnapshotModel model = SnapshotModel::Prob;
  double delta_days = 1.0;  // discrete window length, days
  double tau_days = 12.0;   // mean edge lifetime, days
  double cutoff = 1e-4;     // probabilistic age-out threshold
  int k = 7;
  std::uint64_t seed = 42;
  int restarts = 1;
  bool cluster_on_detrended = true;
  bool standardize = true;
  DegreeDenominator degree_denominator = DegreeDenominator::Active;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> dump_snapshots;  // JSONL, one snapshot per line
};

void validate(const RunConfig& cfg);

struct PipelineResult {
  std::size_t n_timesteps = 0;
  StateModel model;
  TransitionMatrix transitions;
  FeatureSeries features;
};

/// Run the full pipeline and write features.csv, states.csv, transitions.json
/// and model.json into cfg.out_dir. Throws on I/O or validation failures.
PipelineResult run_pipeline(const RunConfig& cfg);

/// Generate a synthetic stream from a JSON config; writes an ingestible
/// edges.csv and the ground-truth truth.csv.
void run_synth(const std::filesystem::path& config_file, const std::filesystem::path& edges_out,
               const std::filesystem::path& truth_out);

/// Score states.csv against truth.csv (events taken from the synth config)
/// and print the DetectionReport as JSON.
DetectionReport run_eval(const std::filesystem::path& states_file,
                         const std::filesystem::path& truth_file,
                         const std::filesystem::path& config_file, std::ostream& out);

// ---- file formats ------------------------------------------------------
// All floating-point values are printed with 12 significant digits; the
// pipeline also quantizes raw features to that precision before the detrend
// and clustering stages, so re-running those stages on a dumped features.csv
// reproduces states.csv byte for byte.

/// "%.12g" rendering of a double.
std::string fmt_g12(double x);
/// Value after a round trip through fmt_g12 (quantize to output precision).
double round_g12(double x);

void write_features_csv(const std::filesystem::path& file, const FeatureSeries& s);
FeatureSeries read_features_csv(const std::filesystem::path& file);

void write_states_csv(const std::filesystem::path& file, const std::vector<int>& labels);
std::vector<int> read_states_csv(const std::filesystem::path& file);

void write_transitions_json(const std::filesystem::path& file, const TransitionMatrix& tm,
                            const std::vector<int>& labels);
void write_model_json(const std::filesystem::path& file, const StateModel& model);

void write_truth_csv(const std::filesystem::path& file, const std::vector<std::string>& labels);
std::vector<std::string> read_truth_csv(const std::filesystem::path& file);

void write_edges_csv(const std::filesystem::path& file, const EdgeStream& stream);

void write_snapshots_jsonl(const std::filesystem::path& file,
                           std::span<const SnapshotGraph> snapshots);

void write_detection_report_json(std::ostream& out, const DetectionReport& report);

}  // namespace graphstate
