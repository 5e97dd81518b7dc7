#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphstate/snapshots.hpp"

namespace graphstate {

/// Structural attributes of one snapshot.
struct FeatureVector {
  double avg_degree = 0.0;
  double avg_clustering = 0.0;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Per-timestep attribute series; detrended is filled by detrend().
struct FeatureSeries {
  std::vector<FeatureVector> raw;
  std::optional<std::vector<FeatureVector>> detrended;

  std::size_t size() const noexcept { return raw.size(); }
};

enum class DegreeDenominator {
  Active,  // non-isolated nodes of the snapshot
  Global,  // all nodes ever observed in the stream
};

struct FeatureOptions {
  DegreeDenominator degree_denominator = DegreeDenominator::Active;
  std::size_t global_node_count = 0;  // required when degree_denominator == Global
};

/// 2 * (sum of edge weights) / |active nodes|; 0 for an empty snapshot.
double average_degree(const SnapshotGraph& g);
/// Same numerator over an explicit denominator (the global-V variant).
double average_degree(const SnapshotGraph& g, std::size_t denominator_nodes);

/// Weighted local clustering of active node v: expected closed wedges over
/// expected wedges under edge independence,
///   sum_{j<k in N(v)} w_vj*w_vk*w_jk / sum_{j<k in N(v)} w_vj*w_vk,
/// 0 when v has fewer than two neighbors. Equals the standard local
/// clustering coefficient on 0/1 weights. Throws if v is not active.
double local_clustering(const SnapshotGraph& g, NodeId v);

/// Local clustering of every active node, in ascending node-id order.
std::vector<double> local_clustering_all(const SnapshotGraph& g);

/// Mean local clustering over active nodes; 0 for an empty snapshot.
double average_clustering(const SnapshotGraph& g);

/// raw[i] = (average_degree(s_i), average_clustering(s_i)); detrended unfilled.
FeatureSeries extract_features(std::span<const SnapshotGraph> snapshots,
                               const FeatureOptions& opts = {});

}  // namespace graphstate
