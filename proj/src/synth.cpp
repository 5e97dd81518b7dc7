#include "graphstate/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "graphstate/rng.hpp"

namespace graphstate {

void validate(const SynthConfig& cfg) {
  if (cfg.n_nodes < 2) throw std::invalid_argument("n_nodes must be at least 2");
  if (cfg.n_days < 1) throw std::invalid_argument("n_days must be at least 1");
  if (!(cfg.base_edges_per_day > 0.0)) {
    throw std::invalid_argument("base_edges_per_day must be positive");
  }
  for (double f : cfg.weekday_factors) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument("weekday factors must be finite and positive");
    }
  }
  std::vector<std::pair<int, int>> spans;
  for (const SynthEvent& e : cfg.events) {
    if (e.start_day < 0 || e.end_day >= cfg.n_days || e.start_day > e.end_day) {
      throw std::invalid_argument("event days must satisfy 0 <= start <= end < n_days");
    }
    if (!(e.multiplier > 0.0) || !(e.multiplier <= 1.0)) {
      throw std::invalid_argument("event multiplier must lie in (0, 1]");
    }
    spans.emplace_back(e.start_day, e.end_day);
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first <= spans[i - 1].second) {
      throw std::invalid_argument("events must not overlap");
    }
  }
}

SynthConfig parse_synth_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad synth config: ") + e.what());
  }
  SynthConfig cfg;
  try {
    cfg.n_nodes = j.at("n_nodes").get<int>();
    cfg.n_days = j.at("n_days").get<int>();
    cfg.base_edges_per_day = j.at("base_edges_per_day").get<double>();
    if (j.contains("weekday_factors")) {
      const auto& wf = j.at("weekday_factors");
      if (!wf.is_array() || wf.size() != 7) {
        throw std::invalid_argument("weekday_factors must hold exactly 7 numbers");
      }
      for (std::size_t i = 0; i < 7; ++i) cfg.weekday_factors[i] = wf[i].get<double>();
    }
    if (j.contains("events")) {
      for (const auto& je : j.at("events")) {
        SynthEvent e;
        e.start_day = je.at("start").get<int>();
        e.end_day = je.at("end").get<int>();
        e.multiplier = je.at("multiplier").get<double>();
        cfg.events.push_back(e);
      }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad synth config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

SynthConfig load_synth_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open synth config: " + file.string());
  return parse_synth_config(in);
}

std::vector<std::string> truth_labels(const SynthConfig& cfg) {
  validate(cfg);
  std::vector<std::string> labels(static_cast<std::size_t>(cfg.n_days), "base");
  for (std::size_t i = 0; i < cfg.events.size(); ++i) {
    const SynthEvent& e = cfg.events[i];
    for (int d = e.start_day; d <= e.end_day; ++d) {
      labels[static_cast<std::size_t>(d)] = "event_" + std::to_string(i);
    }
  }
  return labels;
}

SynthResult generate_stream(const SynthConfig& cfg) {
  validate(cfg);
  DeterministicRng rng(cfg.seed);

  // Endpoint pool: node i drawn with probability proportional to 1/(i+1).
  std::vector<double> cdf(static_cast<std::size_t>(cfg.n_nodes));
  double cum = 0.0;
  for (int i = 0; i < cfg.n_nodes; ++i) {
    cum += 1.0 / static_cast<double>(i + 1);
    cdf[static_cast<std::size_t>(i)] = cum;
  }
  const double total = cum;
  auto draw_node = [&]() {
    const double r = rng.uniform01() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    return static_cast<NodeId>(idx < cdf.size() ? idx : cdf.size() - 1);
  };

  std::vector<double> day_rate(static_cast<std::size_t>(cfg.n_days));
  for (int d = 0; d < cfg.n_days; ++d) {
    day_rate[static_cast<std::size_t>(d)] =
        cfg.base_edges_per_day * cfg.weekday_factors[static_cast<std::size_t>(d % 7)];
  }
  for (const SynthEvent& e : cfg.events) {
    for (int d = e.start_day; d <= e.end_day; ++d) {
      day_rate[static_cast<std::size_t>(d)] *= e.multiplier;
    }
  }

  std::vector<TimedEdge> raw;
  for (int d = 0; d < cfg.n_days; ++d) {
    const std::uint64_t count = rng.poisson(day_rate[static_cast<std::size_t>(d)]);
    const Timestamp day_start = static_cast<Timestamp>(d) * 86400;
    for (std::uint64_t i = 0; i < count; ++i) {
      NodeId u = draw_node();
      NodeId v = draw_node();
      while (u == v) v = draw_node();  // redraw collisions, never emit loops
      const auto offset = static_cast<Timestamp>(rng.below(86400));
      raw.push_back({u, v, day_start + offset});
    }
  }

  SynthResult result;
  result.stream = normalize_edges(std::move(raw));
  result.day_labels = truth_labels(cfg);
  return result;
}

namespace {

int modal_state(const std::map<int, std::size_t>& counts) {
  int best = -1;
  std::size_t best_n = 0;
  for (const auto& [state, n] : counts) {  // map order breaks ties toward A
    if (n > best_n) {
      best = state;
      best_n = n;
    }
  }
  return best;
}

}  // namespace

DetectionReport evaluate_detection(std::span<const int> labels,
                                   std::span<const std::string> truth,
                                   std::span<const SynthEvent> events) {
  if (labels.size() != truth.size()) {
    throw std::invalid_argument("labels and truth must cover the same days");
  }
  if (labels.empty()) throw std::invalid_argument("nothing to evaluate");

  std::map<int, std::size_t> base_counts;
  std::vector<std::map<int, std::size_t>> event_counts(events.size());
  std::vector<std::size_t> event_days(events.size(), 0);
  for (std::size_t d = 0; d < truth.size(); ++d) {
    if (truth[d] == "base") {
      ++base_counts[labels[d]];
      continue;
    }
    if (truth[d].rfind("event_", 0) != 0) {
      throw std::invalid_argument("unknown truth label: " + truth[d]);
    }
    std::size_t idx = 0;
    try {
      idx = std::stoul(truth[d].substr(6));
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown truth label: " + truth[d]);
    }
    if (idx >= events.size()) {
      throw std::invalid_argument("truth references event_" + std::to_string(idx) +
                                  " but only " + std::to_string(events.size()) +
                                  " events are configured");
    }
    ++event_counts[idx][labels[d]];
    ++event_days[idx];
  }
  if (base_counts.empty()) throw std::invalid_argument("no baseline days in truth");
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (event_days[i] == 0) {
      throw std::invalid_argument("event_" + std::to_string(i) + " has no days in truth");
    }
  }

  DetectionReport report;
  report.baseline_modal_state = modal_state(base_counts);
  report.all_events_distinct_from_baseline = true;
  report.all_pairs_distinct = true;

  for (std::size_t i = 0; i < events.size(); ++i) {
    EventReport er;
    er.index = static_cast<int>(i);
    er.start_day = events[i].start_day;
    er.end_day = events[i].end_day;
    er.multiplier = events[i].multiplier;
    er.modal_state = modal_state(event_counts[i]);
    er.purity = static_cast<double>(event_counts[i][er.modal_state]) /
                static_cast<double>(event_days[i]);
    er.distinct_from_baseline = er.modal_state != report.baseline_modal_state;
    if (!er.distinct_from_baseline) report.all_events_distinct_from_baseline = false;
    report.events.push_back(er);
  }

  for (std::size_t a = 0; a < events.size(); ++a) {
    for (std::size_t b = a + 1; b < events.size(); ++b) {
      PairDistinct pd;
      pd.event_a = static_cast<int>(a);
      pd.event_b = static_cast<int>(b);
      pd.distinct = report.events[a].modal_state != report.events[b].modal_state;
      if (!pd.distinct) report.all_pairs_distinct = false;
      report.pairwise.push_back(pd);
    }
  }

  return report;
}

}  // namespace graphstate
