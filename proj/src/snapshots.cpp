#include "graphstate/snapshots.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace graphstate {

SnapshotGraph::SnapshotGraph(int index, Timestamp eval_time, std::vector<WeightedEdge> edges)
    : index_(index), eval_time_(eval_time), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const WeightedEdge& e = edges_[i];
    if (e.u >= e.v) throw std::invalid_argument("snapshot edge endpoints must satisfy u < v");
    if (!(e.w > 0.0) || e.w > 1.0) {
      throw std::invalid_argument("snapshot edge weight must be in (0, 1]");
    }
    if (i > 0) {
      const WeightedEdge& p = edges_[i - 1];
      if (p.u > e.u || (p.u == e.u && p.v >= e.v)) {
        throw std::invalid_argument("snapshot edges must be sorted by (u, v) without duplicates");
      }
    }
  }
  active_nodes_.reserve(edges_.size() * 2);
  for (const WeightedEdge& e : edges_) {
    active_nodes_.push_back(e.u);
    active_nodes_.push_back(e.v);
  }
  std::sort(active_nodes_.begin(), active_nodes_.end());
  active_nodes_.erase(std::unique(active_nodes_.begin(), active_nodes_.end()),
                      active_nodes_.end());
}

double SnapshotGraph::weight(NodeId a, NodeId b) const {
  if (a == b) return 0.0;
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const WeightedEdge& e, const std::pair<NodeId, NodeId>& key) {
                               return e.u < key.first || (e.u == key.first && e.v < key.second);
                             });
  if (it == edges_.end() || it->u != a || it->v != b) return 0.0;
  return it->w;
}

double SnapshotGraph::total_weight() const {
  double sum = 0.0;
  for (const WeightedEdge& e : edges_) sum += e.w;
  return sum;
}

bool SnapshotGraph::is_active(NodeId v) const {
  return std::binary_search(active_nodes_.begin(), active_nodes_.end(), v);
}

Timestamp aligned_origin(const EdgeStream& stream, Timestamp delta_t) {
  if (delta_t <= 0) throw std::invalid_argument("window length must be positive");
  return (stream.t_min() / delta_t) * delta_t;
}

std::size_t window_count(const EdgeStream& stream, Timestamp t0, Timestamp delta_t) {
  if (delta_t <= 0) throw std::invalid_argument("window length must be positive");
  const Timestamp span = stream.t_max() - t0;
  return static_cast<std::size_t>(span / delta_t) + 1;
}

std::vector<SnapshotGraph> discrete_snapshots(const EdgeStream& stream,
                                              const DiscreteConfig& cfg) {
  if (cfg.delta_t <= 0) throw std::invalid_argument("window length must be positive");
  if (stream.empty()) throw std::invalid_argument("no snapshots derivable from an empty stream");
  if (cfg.t0 > stream.t_min()) {
    throw std::invalid_argument("window origin t0 must not be after the first edge");
  }

  const std::size_t n = window_count(stream, cfg.t0, cfg.delta_t);
  std::vector<SnapshotGraph> out;
  out.reserve(n);

  auto it = stream.edges().begin();
  const auto end = stream.edges().end();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const Timestamp window_end = cfg.t0 + static_cast<Timestamp>(i + 1) * cfg.delta_t;
    pairs.clear();
    for (; it != end && it->t < window_end; ++it) pairs.emplace_back(it->u, it->v);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<WeightedEdge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) edges.push_back({u, v, 1.0});
    out.emplace_back(static_cast<int>(i), window_end - 1, std::move(edges));
  }
  return out;
}

double decay_probability(Timestamp t, Timestamp t_prime, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (t < t_prime) {
    throw std::invalid_argument("decay_probability requires t >= t_prime");
  }
  return std::exp(-static_cast<double>(t - t_prime) / tau);
}

std::vector<SnapshotGraph> probabilistic_snapshots(const EdgeStream& stream,
                                                   const DecayConfig& cfg, Timestamp t0,
                                                   std::size_t n_steps) {
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(cfg.cutoff > 0.0 && cfg.cutoff < 1.0)) {
    throw std::invalid_argument("cutoff must be in (0, 1)");
  }
  if (cfg.grid_step <= 0) throw std::invalid_argument("grid_step must be positive");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");

  std::vector<SnapshotGraph> out;
  out.reserve(n_steps);

  // Last occurrence per pair; ordered so snapshot edges come out sorted.
  std::map<std::pair<NodeId, NodeId>, Timestamp> last_seen;
  auto it = stream.edges().begin();
  const auto end = stream.edges().end();

  for (std::size_t i = 0; i < n_steps; ++i) {
    const Timestamp eval_time = t0 + static_cast<Timestamp>(i + 1) * cfg.grid_step - 1;
    for (; it != end && it->t <= eval_time; ++it) {
      last_seen[{it->u, it->v}] = it->t;  // edges are time-sorted, so this is the max
    }

    std::vector<WeightedEdge> edges;
    edges.reserve(last_seen.size());
    for (auto entry = last_seen.begin(); entry != last_seen.end();) {
      const double w = decay_probability(eval_time, entry->second, cfg.tau);
      if (w < cfg.cutoff) {
        entry = last_seen.erase(entry);  // aged out; only a re-communication revives it
      } else {
        edges.push_back({entry->first.first, entry->first.second, w});
        ++entry;
      }
    }
    out.emplace_back(static_cast<int>(i), eval_time, std::move(edges));
  }
  return out;
}

}  // namespace graphstate
