#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "graphstate/pipeline.hpp"

namespace {

// GRAPHSTATE_SEED beats both the default and an explicit --seed.
void apply_seed_env(std::uint64_t& seed) {
  const char* env = std::getenv("GRAPHSTATE_SEED");
  if (env == nullptr) return;
  const std::string s(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::runtime_error("GRAPHSTATE_SEED must be a non-negative integer, got '" + s + "'");
  }
  seed = value;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace graphstate;

  CLI::App app{"Learn the latent state space of a time-varying graph from an edge stream"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string model;
  std::string cluster_on = "detrended";
  std::string denominator = "active";
  std::string dump;

  CLI::App* run = app.add_subcommand("run", "ingest -> snapshots -> features -> states");
  run->add_option("--input", cfg.input, "edge stream CSV (src,dst,timestamp)")->required();
  run->add_option("--model", model, "snapshot model")
      ->required()
      ->check(CLI::IsMember({"discrete", "prob"}));
  CLI::Option* delta_opt = run->add_option("--delta-days", cfg.delta_days,
                                           "aggregation window length in days (discrete)")
                               ->capture_default_str();
  CLI::Option* tau_opt =
      run->add_option("--tau-days", cfg.tau_days, "mean edge lifetime in days (prob)")
          ->capture_default_str();
  CLI::Option* cutoff_opt =
      run->add_option("--cutoff", cfg.cutoff, "edge age-out threshold (prob)")
          ->capture_default_str();
  run->add_option("--k", cfg.k, "number of latent states")->capture_default_str();
  run->add_option("--seed", cfg.seed, "clustering seed")->capture_default_str();
  run->add_option("--restarts", cfg.restarts, "kmeans restarts, lowest inertia wins")
      ->capture_default_str();
  run->add_option("--cluster-on", cluster_on, "cluster on detrended or raw features")
      ->check(CLI::IsMember({"detrended", "raw"}))
      ->capture_default_str();
  run->add_flag("--standardize,!--no-standardize", cfg.standardize,
                "z-score features before clustering");
  run->add_option("--degree-denominator", denominator,
                  "average degree over active or global nodes")
      ->check(CLI::IsMember({"active", "global"}))
      ->capture_default_str();
  run->add_option("--out-dir", cfg.out_dir, "directory for the output files")->required();
  run->add_option("--dump-snapshots", dump, "also write snapshots as JSONL to this path");

  std::string synth_config;
  std::string edges_out = "edges.csv";
  std::string truth_out = "truth.csv";
  CLI::App* synth = app.add_subcommand("synth", "generate a stream with planted events");
  synth->add_option("--config", synth_config, "generator config JSON")->required();
  synth->add_option("--edges-out", edges_out, "output edge stream")->capture_default_str();
  synth->add_option("--truth-out", truth_out, "output ground-truth day labels")
      ->capture_default_str();

  std::string eval_states;
  std::string eval_truth;
  std::string eval_config;
  CLI::App* eval = app.add_subcommand("eval", "score learned states against planted events");
  eval->add_option("--states", eval_states, "states.csv from a run")->required();
  eval->add_option("--truth", eval_truth, "truth.csv from synth")->required();
  eval->add_option("--config", eval_config, "the synth config the truth came from")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cfg.model = model == "discrete" ? SnapshotModel::Discrete : SnapshotModel::Prob;
      cfg.cluster_on_detrended = cluster_on == "detrended";
      cfg.degree_denominator =
          denominator == "global" ? DegreeDenominator::Global : DegreeDenominator::Active;
      if (!dump.empty()) cfg.dump_snapshots = dump;
      if (cfg.model == SnapshotModel::Prob && delta_opt->count() > 0) {
        std::cerr << "warning: --delta-days has no effect with --model prob\n";
      }
      if (cfg.model == SnapshotModel::Discrete) {
        if (tau_opt->count() > 0) {
          std::cerr << "warning: --tau-days has no effect with --model discrete\n";
        }
        if (cutoff_opt->count() > 0) {
          std::cerr << "warning: --cutoff has no effect with --model discrete\n";
        }
      }
      apply_seed_env(cfg.seed);
      const PipelineResult result = run_pipeline(cfg);
      std::cerr << result.n_timesteps << " timesteps, k=" << result.model.k
                << ", inertia=" << fmt_g12(result.model.inertia) << '\n';
    } else if (synth->parsed()) {
      run_synth(synth_config, edges_out, truth_out);
    } else {
      run_eval(eval_states, eval_truth, eval_config, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
