#include "graphstate/features.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace graphstate {

namespace {

// Sorted neighbor lists over dense node indices (dense order = ascending
// node id, so iterating a list walks neighbors in ascending id order).
struct Adjacency {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> nbrs;
};

Adjacency build_adjacency(const SnapshotGraph& g) {
  const std::vector<NodeId>& nodes = g.active_nodes();
  Adjacency adj;
  adj.nbrs.resize(nodes.size());
  auto dense = [&nodes](NodeId v) {
    return static_cast<std::uint32_t>(
        std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  // Edges are sorted by (u, v); every list below comes out ascending.
  for (const WeightedEdge& e : g.edges()) {
    const std::uint32_t du = dense(e.u);
    const std::uint32_t dv = dense(e.v);
    adj.nbrs[du].emplace_back(dv, e.w);
    adj.nbrs[dv].emplace_back(du, e.w);
  }
  return adj;
}

// Expected closed wedges over expected wedges at one node. The wedge pairs
// are visited in ascending (j, k) order; the numerator walks the sorted
// intersection of neighbor lists, which touches the same pairs in the same
// order while skipping absent (zero-weight) closing edges.
double node_clustering(const Adjacency& adj, std::uint32_t v) {
  const auto& nv = adj.nbrs[v];
  if (nv.size() < 2) return 0.0;

  double wedges = 0.0;
  for (std::size_t a = 0; a < nv.size(); ++a) {
    for (std::size_t b = a + 1; b < nv.size(); ++b) {
      wedges += nv[a].second * nv[b].second;
    }
  }

  double closed = 0.0;
  for (std::size_t a = 0; a < nv.size(); ++a) {
    const auto& nj = adj.nbrs[nv[a].first];
    std::size_t b = a + 1;
    std::size_t j = 0;
    while (b < nv.size() && j < nj.size()) {
      if (nv[b].first < nj[j].first) {
        ++b;
      } else if (nv[b].first > nj[j].first) {
        ++j;
      } else {
        closed += nv[a].second * nv[b].second * nj[j].second;
        ++b;
        ++j;
      }
    }
  }
  return closed / wedges;
}

}  // namespace

double average_degree(const SnapshotGraph& g) {
  if (g.empty()) return 0.0;
  return 2.0 * g.total_weight() / static_cast<double>(g.active_nodes().size());
}

double average_degree(const SnapshotGraph& g, std::size_t denominator_nodes) {
  if (g.empty()) return 0.0;
  if (denominator_nodes == 0) {
    throw std::invalid_argument("degree denominator must be positive for a non-empty snapshot");
  }
  return 2.0 * g.total_weight() / static_cast<double>(denominator_nodes);
}

double local_clustering(const SnapshotGraph& g, NodeId v) {
  if (!g.is_active(v)) {
    throw std::domain_error("local_clustering: node " + std::to_string(v) + " is not active");
  }
  // Neighbors of v in ascending id order (edge list is (u, v)-sorted).
  std::vector<std::pair<NodeId, double>> nbrs;
  for (const WeightedEdge& e : g.edges()) {
    if (e.u == v) nbrs.emplace_back(e.v, e.w);
    if (e.v == v) nbrs.emplace_back(e.u, e.w);
  }
  if (nbrs.size() < 2) return 0.0;

  double wedges = 0.0;
  double closed = 0.0;
  for (std::size_t a = 0; a < nbrs.size(); ++a) {
    for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
      const double wedge = nbrs[a].second * nbrs[b].second;
      wedges += wedge;
      closed += wedge * g.weight(nbrs[a].first, nbrs[b].first);
    }
  }
  return closed / wedges;
}

std::vector<double> local_clustering_all(const SnapshotGraph& g) {
  const Adjacency adj = build_adjacency(g);
  std::vector<double> out(g.active_nodes().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = node_clustering(adj, static_cast<std::uint32_t>(i));
  }
  return out;
}

double average_clustering(const SnapshotGraph& g) {
  if (g.empty()) return 0.0;
  const std::vector<double> locals = local_clustering_all(g);
  double sum = 0.0;
  for (double c : locals) sum += c;
  return sum / static_cast<double>(locals.size());
}

FeatureSeries extract_features(std::span<const SnapshotGraph> snapshots,
                               const FeatureOptions& opts) {
  if (snapshots.empty()) {
    throw std::invalid_argument("extract_features requires at least one snapshot");
  }
  if (opts.degree_denominator == DegreeDenominator::Global && opts.global_node_count == 0) {
    throw std::invalid_argument("global degree denominator requires a node count");
  }
  FeatureSeries series;
  series.raw.reserve(snapshots.size());
  for (const SnapshotGraph& g : snapshots) {
    const double deg = opts.degree_denominator == DegreeDenominator::Active
                           ? average_degree(g)
                           : average_degree(g, opts.global_node_count);
    series.raw.push_back({deg, average_clustering(g)});
  }
  return series;
}

}  // namespace graphstate
