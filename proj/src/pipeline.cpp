#include "graphstate/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace graphstate {

namespace {

constexpr Timestamp kSecondsPerDay = 86400;

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);  // '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + file.string());
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& file) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double_field(const std::string& s, const std::filesystem::path& file,
                          std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                             ": bad number '" + s + "'");
  }
  return value;
}

long long parse_int_field(const std::string& s, const std::filesystem::path& file,
                          std::size_t line_no) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                             ": bad integer '" + s + "'");
  }
  return value;
}

// Strips a trailing '\r' so files written on other platforms still read.
bool get_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void expect_header(std::istream& in, const std::string& want,
                   const std::filesystem::path& file) {
  std::string line;
  if (!get_line(in, line) || line != want) {
    throw std::runtime_error(file.string() + ": expected header '" + want + "'");
  }
}

std::string labels_string(const std::vector<int>& labels) {
  std::string s;
  for (int l : labels) s += state_name(l);
  return s;
}

}  // namespace

std::string fmt_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_g12(double x) { return std::strtod(fmt_g12(x).c_str(), nullptr); }

void validate(const RunConfig& cfg) {
  if (cfg.input.empty()) throw std::invalid_argument("input path must be set");
  if (cfg.out_dir.empty()) throw std::invalid_argument("out_dir must be set");
  if (!(cfg.delta_days > 0.0)) throw std::invalid_argument("delta_days must be positive");
  if (!(cfg.tau_days > 0.0)) throw std::invalid_argument("tau_days must be positive");
  if (!(cfg.cutoff > 0.0) || !(cfg.cutoff < 1.0)) {
    throw std::invalid_argument("cutoff must lie in (0, 1)");
  }
  if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
  if (cfg.k > 26) {
    // transitions.json encodes the label sequence as one letter per timestep
    throw std::invalid_argument("k must be at most 26");
  }
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  validate(cfg);
  const EdgeStream stream = load_edge_stream(cfg.input);

  std::vector<SnapshotGraph> snapshots;
  if (cfg.model == SnapshotModel::Discrete) {
    const auto delta_t =
        static_cast<Timestamp>(std::llround(cfg.delta_days * static_cast<double>(kSecondsPerDay)));
    if (delta_t < 1) throw std::invalid_argument("delta_days is too small");
    DiscreteConfig dc;
    dc.delta_t = delta_t;
    dc.t0 = aligned_origin(stream, delta_t);
    snapshots = discrete_snapshots(stream, dc);
  } else {
    DecayConfig dc;
    dc.tau = cfg.tau_days * static_cast<double>(kSecondsPerDay);
    dc.cutoff = cfg.cutoff;
    dc.grid_step = kSecondsPerDay;  // probabilistic series is sampled daily
    const Timestamp t0 = aligned_origin(stream, dc.grid_step);
    const std::size_t n = window_count(stream, t0, dc.grid_step);
    snapshots = probabilistic_snapshots(stream, dc, t0, n);
  }

  if (cfg.dump_snapshots) write_snapshots_jsonl(*cfg.dump_snapshots, snapshots);

  FeatureOptions fopts;
  fopts.degree_denominator = cfg.degree_denominator;
  fopts.global_node_count = stream.node_count();
  FeatureSeries series = extract_features(snapshots, fopts);

  // Quantize to output precision before the fit so a rerun on the dumped
  // features.csv lands on the same states byte for byte.
  for (FeatureVector& f : series.raw) {
    f.avg_degree = round_g12(f.avg_degree);
    f.avg_clustering = round_g12(f.avg_clustering);
  }

  if (series.size() < static_cast<std::size_t>(cfg.k)) {
    throw std::runtime_error("insufficient snapshots: " + std::to_string(series.size()) +
                             " timesteps for k=" + std::to_string(cfg.k));
  }

  series = detrend(std::move(series));

  FitOptions fopts2;
  fopts2.k = cfg.k;
  fopts2.seed = cfg.seed;
  fopts2.restarts = cfg.restarts;
  fopts2.standardize = cfg.standardize;
  fopts2.cluster_on_detrended = cfg.cluster_on_detrended;
  auto [model, transitions] = fit_state_space(series, fopts2);

  std::filesystem::create_directories(cfg.out_dir);
  write_features_csv(cfg.out_dir / "features.csv", series);
  write_states_csv(cfg.out_dir / "states.csv", model.labels);
  write_transitions_json(cfg.out_dir / "transitions.json", transitions, model.labels);
  write_model_json(cfg.out_dir / "model.json", model);

  PipelineResult result;
  result.n_timesteps = series.size();
  result.model = std::move(model);
  result.transitions = std::move(transitions);
  result.features = std::move(series);
  return result;
}

void run_synth(const std::filesystem::path& config_file, const std::filesystem::path& edges_out,
               const std::filesystem::path& truth_out) {
  const SynthConfig cfg = load_synth_config(config_file);
  const SynthResult result = generate_stream(cfg);
  write_edges_csv(edges_out, result.stream);
  write_truth_csv(truth_out, result.day_labels);
}

DetectionReport run_eval(const std::filesystem::path& states_file,
                         const std::filesystem::path& truth_file,
                         const std::filesystem::path& config_file, std::ostream& out) {
  const std::vector<int> labels = read_states_csv(states_file);
  const std::vector<std::string> truth = read_truth_csv(truth_file);
  const SynthConfig cfg = load_synth_config(config_file);
  const DetectionReport report = evaluate_detection(labels, truth, cfg.events);
  write_detection_report_json(out, report);
  return report;
}

void write_features_csv(const std::filesystem::path& file, const FeatureSeries& s) {
  if (!s.detrended || s.detrended->size() != s.raw.size()) {
    throw std::invalid_argument("features.csv needs raw and detrended columns of equal length");
  }
  std::ofstream out = open_out(file);
  out << "day,avg_degree,avg_clustering,avg_degree_detrended,avg_clustering_detrended\n";
  for (std::size_t i = 0; i < s.raw.size(); ++i) {
    const FeatureVector& r = s.raw[i];
    const FeatureVector& d = (*s.detrended)[i];
    out << i << ',' << fmt_g12(r.avg_degree) << ',' << fmt_g12(r.avg_clustering) << ','
        << fmt_g12(d.avg_degree) << ',' << fmt_g12(d.avg_clustering) << '\n';
  }
  finish(out, file);
}

FeatureSeries read_features_csv(const std::filesystem::path& file) {
  std::ifstream in = open_in(file);
  expect_header(in, "day,avg_degree,avg_clustering,avg_degree_detrended,avg_clustering_detrended",
                file);
  FeatureSeries s;
  s.detrended.emplace();
  std::string line;
  std::size_t line_no = 1;
  while (get_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 5) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                               ": expected five fields");
    }
    const long long day = parse_int_field(f[0], file, line_no);
    if (day != static_cast<long long>(s.raw.size())) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                               ": days must be consecutive from 0");
    }
    s.raw.push_back({parse_double_field(f[1], file, line_no),
                     parse_double_field(f[2], file, line_no)});
    s.detrended->push_back({parse_double_field(f[3], file, line_no),
                            parse_double_field(f[4], file, line_no)});
  }
  return s;
}

void write_states_csv(const std::filesystem::path& file, const std::vector<int>& labels) {
  std::ofstream out = open_out(file);
  out << "day,state\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << ',' << state_name(labels[i]) << '\n';
  }
  finish(out, file);
}

std::vector<int> read_states_csv(const std::filesystem::path& file) {
  std::ifstream in = open_in(file);
  expect_header(in, "day,state", file);
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 1;
  while (get_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 2) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                               ": expected two fields");
    }
    const long long day = parse_int_field(f[0], file, line_no);
    if (day != static_cast<long long>(labels.size())) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                               ": days must be consecutive from 0");
    }
    try {
      labels.push_back(state_index(f[1]));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return labels;
}

void write_transitions_json(const std::filesystem::path& file, const TransitionMatrix& tm,
                            const std::vector<int>& labels) {
  std::ofstream out = open_out(file);
  out << "{\"k\":" << tm.k << ",\"labels\":\"" << labels_string(labels) << "\",\"counts\":[";
  for (std::size_t a = 0; a < tm.counts.size(); ++a) {
    if (a) out << ',';
    out << '[';
    for (std::size_t b = 0; b < tm.counts[a].size(); ++b) {
      if (b) out << ',';
      out << tm.counts[a][b];
    }
    out << ']';
  }
  out << "]}\n";
  finish(out, file);
}

void write_model_json(const std::filesystem::path& file, const StateModel& model) {
  std::ofstream out = open_out(file);
  out << "{\"k\":" << model.k << ",\"seed\":" << model.seed << ",\"standardization\":{\"mean\":[";
  for (std::size_t j = 0; j < model.standardization.mean.size(); ++j) {
    if (j) out << ',';
    out << fmt_g12(model.standardization.mean[j]);
  }
  out << "],\"std\":[";
  for (std::size_t j = 0; j < model.standardization.stddev.size(); ++j) {
    if (j) out << ',';
    out << fmt_g12(model.standardization.stddev[j]);
  }
  out << "]},\"centroids_standardized\":[";
  for (std::size_t c = 0; c < model.centroids.size(); ++c) {
    if (c) out << ',';
    out << '[';
    for (std::size_t j = 0; j < model.centroids[c].size(); ++j) {
      if (j) out << ',';
      out << fmt_g12(model.centroids[c][j]);
    }
    out << ']';
  }
  out << "],\"centroid_order\":[";
  for (std::size_t i = 0; i < model.centroid_order.size(); ++i) {
    if (i) out << ',';
    out << model.centroid_order[i];
  }
  out << "],\"inertia\":" << fmt_g12(model.inertia) << "}\n";
  finish(out, file);
}

void write_truth_csv(const std::filesystem::path& file, const std::vector<std::string>& labels) {
  std::ofstream out = open_out(file);
  out << "day,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
  finish(out, file);
}

std::vector<std::string> read_truth_csv(const std::filesystem::path& file) {
  std::ifstream in = open_in(file);
  expect_header(in, "day,label", file);
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 1;
  while (get_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 2) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                               ": expected two fields");
    }
    const long long day = parse_int_field(f[0], file, line_no);
    if (day != static_cast<long long>(labels.size())) {
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) +
                               ": days must be consecutive from 0");
    }
    labels.push_back(f[1]);
  }
  return labels;
}

void write_edges_csv(const std::filesystem::path& file, const EdgeStream& stream) {
  std::ofstream out = open_out(file);
  out << "src,dst,timestamp\n";
  for (const TimedEdge& e : stream.edges()) {
    out << e.u << ',' << e.v << ',' << e.t << '\n';
  }
  finish(out, file);
}

void write_snapshots_jsonl(const std::filesystem::path& file,
                           std::span<const SnapshotGraph> snapshots) {
  std::ofstream out = open_out(file);
  for (const SnapshotGraph& g : snapshots) {
    out << "{\"index\":" << g.index() << ",\"eval_time\":" << g.eval_time() << ",\"edges\":[";
    bool first = true;
    for (const WeightedEdge& e : g.edges()) {
      if (!first) out << ',';
      first = false;
      out << '[' << e.u << ',' << e.v << ',' << fmt_g12(e.w) << ']';
    }
    out << "]}\n";
  }
  finish(out, file);
}

void write_detection_report_json(std::ostream& out, const DetectionReport& report) {
  out << "{\n  \"baseline_modal_state\": \"" << state_name(report.baseline_modal_state)
      << "\",\n  \"events\": [";
  for (std::size_t i = 0; i < report.events.size(); ++i) {
    const EventReport& e = report.events[i];
    out << (i ? "," : "") << "\n    {\"index\": " << e.index << ", \"start_day\": " << e.start_day
        << ", \"end_day\": " << e.end_day << ", \"multiplier\": " << fmt_g12(e.multiplier)
        << ", \"modal_state\": \"" << state_name(e.modal_state)
        << "\", \"purity\": " << fmt_g12(e.purity) << ", \"distinct_from_baseline\": "
        << (e.distinct_from_baseline ? "true" : "false") << '}';
  }
  out << (report.events.empty() ? "" : "\n  ") << "],\n  \"pairwise\": [";
  for (std::size_t i = 0; i < report.pairwise.size(); ++i) {
    const PairDistinct& p = report.pairwise[i];
    out << (i ? "," : "") << "\n    {\"event_a\": " << p.event_a << ", \"event_b\": " << p.event_b
        << ", \"distinct\": " << (p.distinct ? "true" : "false") << '}';
  }
  out << (report.pairwise.empty() ? "" : "\n  ")
      << "],\n  \"all_events_distinct_from_baseline\": "
      << (report.all_events_distinct_from_baseline ? "true" : "false")
      << ",\n  \"all_pairs_distinct\": " << (report.all_pairs_distinct ? "true" : "false")
      << "\n}\n";
}

}  // namespace graphstate
