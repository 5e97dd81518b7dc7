#pragma once

#include <cstdint>
#include <vector>

#include "graphstate/edge_stream.hpp"

namespace graphstate {

/// One weighted edge of a snapshot, canonical order u < v, weight in (0, 1].
struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// One timestep's weighted undirected simple graph.
///
/// Edges are kept sorted by (u, v); active_nodes() is exactly the sorted set
/// of endpoints of stored edges. Discrete snapshots carry weight 1.0 on every
/// edge; probabilistic snapshots carry the decayed edge probability.
class SnapshotGraph {
 public:
  SnapshotGraph(int index, Timestamp eval_time, std::vector<WeightedEdge> edges);

  int index() const noexcept { return index_; }
  Timestamp eval_time() const noexcept { return eval_time_; }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  const std::vector<NodeId>& active_nodes() const noexcept { return active_nodes_; }

  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  /// Stored weight of pair {a, b}, or 0 if the pair is absent.
  double weight(NodeId a, NodeId b) const;
  /// Sum of stored edge weights, in edge-sorted order.
  double total_weight() const;
  bool is_active(NodeId v) const;

 private:
  int index_ = 0;
  Timestamp eval_time_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<NodeId> active_nodes_;
};

/// Discrete representation: non-overlapping aggregation windows of delta_t
/// seconds starting at t0. Snapshot i covers [t0 + i*delta_t, t0 + (i+1)*delta_t).
struct DiscreteConfig {
  Timestamp delta_t = 86400;
  Timestamp t0 = 0;
};

/// Probabilistic representation: an edge last seen at t' carries probability
/// exp(-(t - t')/tau) at time t and is aged out below `cutoff`.
struct DecayConfig {
  double tau = 12.0 * 86400.0;  // mean edge lifetime, seconds
  double cutoff = 1e-4;
  Timestamp grid_step = 86400;  // evaluation spacing
};

/// t_min rounded down to a multiple of delta_t (the window origin used by the
/// pipeline so day boundaries are calendar-aligned).
Timestamp aligned_origin(const EdgeStream& stream, Timestamp delta_t);

/// Number of windows needed to cover [t0, t_max]: ceil((t_max - t0 + 1) / delta_t).
std::size_t window_count(const EdgeStream& stream, Timestamp t0, Timestamp delta_t);

/// Build one binary snapshot per window. Duplicate communications within a
/// window collapse to a single weight-1 edge; windows without edges are
/// materialized as empty snapshots so the series keeps uniform spacing.
std::vector<SnapshotGraph> discrete_snapshots(const EdgeStream& stream, const DiscreteConfig& cfg);

/// exp(-(t - t_prime)/tau). Requires t >= t_prime and tau > 0.
double decay_probability(Timestamp t, Timestamp t_prime, double tau);

/// Build n_steps probabilistic snapshots. Snapshot i is evaluated at
/// t_i = t0 + (i+1)*grid_step - 1 (end of day i); each pair carries the decay
/// probability of its most recent occurrence at or before t_i and is omitted
/// once that probability falls below cfg.cutoff.
std::vector<SnapshotGraph> probabilistic_snapshots(const EdgeStream& stream,
                                                   const DecayConfig& cfg,
                                                   Timestamp t0,
                                                   std::size_t n_steps);

}  // namespace graphstate
