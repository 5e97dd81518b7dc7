#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphstate/features.hpp"

namespace graphstate {

using Point = std::vector<double>;
using Matrix = std::vector<Point>;

/// Column-wise z-score parameters. A zero-variance column records std = 0 and
/// maps to all zeros.
struct Standardization {
  std::vector<double> mean;
  std::vector<double> stddev;
};

/// Z-score each column with the population standard deviation.
std::pair<Matrix, Standardization> standardize(const Matrix& points);

/// Apply previously fitted parameters (zero-variance columns map to 0).
Matrix apply_standardization(const Matrix& points, const Standardization& st);

struct KMeansResult {
  Matrix centroids;              // k points, input space
  std::vector<int> assignments;  // per row, cluster index in [0, k)
  double inertia = 0.0;          // sum of squared distances at termination
  std::vector<double> inertia_history;  // one entry per Lloyd iteration
  int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding from a deterministic PRNG.
/// Ties in the assignment step go to the lowest centroid index; an empty
/// cluster seizes the point farthest from its current centroid. Stops when
/// assignments repeat, the largest centroid displacement drops below tol, or
/// max_iter is reached. Requires n >= k >= 1 and finite input.
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, int max_iter = 300,
                    double tol = 1e-9);

/// Fitted state model: centroids live in the (standardized) feature space,
/// labels are letter indices (0 = state A) per timestep.
struct StateModel {
  int k = 0;
  std::uint64_t seed = 0;  // seed of the winning kmeans run
  Standardization standardization;
  Matrix centroids;                 // original kmeans cluster order
  std::vector<int> centroid_order;  // centroid_order[letter] = original cluster index
  std::vector<int> labels;          // per timestep, letter index in [0, k)
  double inertia = 0.0;
  std::vector<double> inertia_history;
};

/// Spreadsheet-style state name: 0 -> "A", 25 -> "Z", 26 -> "AA", ...
std::string state_name(int index);
/// Inverse of state_name; throws on malformed input.
int state_index(const std::string& name);

/// Order clusters by centroid first feature ascending (ties: second feature,
/// then original index) and rename them A, B, ...; assignments are remapped.
StateModel relabel_states(const KMeansResult& fit, const Standardization& st,
                          std::uint64_t seed_used);

/// counts[a][b] = number of timesteps i with label(i) = a and label(i+1) = b.
struct TransitionMatrix {
  int k = 0;
  std::vector<std::vector<std::int64_t>> counts;
};

/// Requires at least two labels, each in [0, k).
TransitionMatrix transition_matrix(std::span<const int> labels, int k);

struct FitOptions {
  int k = 7;
  std::uint64_t seed = 42;
  int restarts = 1;          // seeds seed..seed+restarts-1, lowest inertia wins
  bool standardize = true;
  bool cluster_on_detrended = true;
  int max_iter = 300;
  double tol = 1e-9;
};

/// standardize -> kmeans -> relabel_states -> transition_matrix.
/// Requires the detrended field when clustering on detrended features, and at
/// least k timesteps.
std::pair<StateModel, TransitionMatrix> fit_state_space(const FeatureSeries& series,
                                                        const FitOptions& opts = {});

}  // namespace graphstate
