#include "graphstate/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "graphstate/rng.hpp"

namespace graphstate {

namespace {

void check_rectangular(const Matrix& points) {
  if (points.empty()) throw std::invalid_argument("point matrix must not be empty");
  const std::size_t d = points[0].size();
  if (d == 0) throw std::invalid_argument("points must have at least one dimension");
  for (const Point& p : points) {
    if (p.size() != d) throw std::invalid_argument("points must share one dimension");
  }
}

double sq_dist(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

std::pair<Matrix, Standardization> standardize(const Matrix& points) {
  check_rectangular(points);
  const std::size_t n = points.size();
  const std::size_t d = points[0].size();

  Standardization st;
  st.mean.resize(d);
  st.stddev.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (const Point& p : points) mean += p[j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const Point& p : points) {
      const double diff = p[j] - mean;
      var += diff * diff;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    st.mean[j] = mean;
    st.stddev[j] = sd < 1e-12 ? 0.0 : sd;  // zero-variance column maps to zeros
  }
  return {apply_standardization(points, st), std::move(st)};
}

Matrix apply_standardization(const Matrix& points, const Standardization& st) {
  check_rectangular(points);
  const std::size_t d = points[0].size();
  if (st.mean.size() != d || st.stddev.size() != d) {
    throw std::invalid_argument("standardization dimension mismatch");
  }
  Matrix out(points.size(), Point(d));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out[i][j] = st.stddev[j] == 0.0 ? 0.0 : (points[i][j] - st.mean[j]) / st.stddev[j];
    }
  }
  return out;
}

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, int max_iter, double tol) {
  check_rectangular(points);
  const std::size_t n = points.size();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (n < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("kmeans requires at least k points");
  }
  if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
  for (const Point& p : points) {
    for (double x : p) {
      if (!std::isfinite(x)) throw std::invalid_argument("kmeans requires finite input");
    }
  }

  DeterministicRng rng(seed);
  const std::size_t kk = static_cast<std::size_t>(k);

  // k-means++: first center uniform, then D^2 sampling.
  Matrix centroids;
  centroids.reserve(kk);
  centroids.push_back(points[rng.below(n)]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points[i], centroids[0]);
  while (centroids.size() < kk) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = rng.uniform01() * total;
      double cum = 0.0;
      std::size_t last_positive = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] > 0.0) last_positive = i;
        cum += d2[i];
        if (cum > r) {
          pick = i;
          break;
        }
      }
      if (pick == n) pick = last_positive;  // r landed on the top edge
    } else {
      pick = rng.below(n);  // all remaining points coincide with chosen centers
    }
    centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(points[i], centroids.back()));
    }
  }

  std::vector<int> assignments(n);
  std::vector<std::size_t> sizes(kk);

  auto assign_all = [&]() {
    std::fill(sizes.begin(), sizes.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(points[i], centroids[0]);
      for (std::size_t j = 1; j < kk; ++j) {
        const double dj = sq_dist(points[i], centroids[j]);
        if (dj < best_d) {  // ties keep the lowest centroid index
          best_d = dj;
          best = static_cast<int>(j);
        }
      }
      assignments[i] = best;
      ++sizes[static_cast<std::size_t>(best)];
    }
    // An empty cluster seizes the point farthest from its current centroid,
    // taken from clusters that can spare one.
    for (std::size_t j = 0; j < kk; ++j) {
      if (sizes[j] != 0) continue;
      std::size_t best_i = n;
      double best_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[static_cast<std::size_t>(assignments[i])] < 2) continue;
        const double di = sq_dist(points[i], centroids[static_cast<std::size_t>(assignments[i])]);
        if (di > best_d) {
          best_d = di;
          best_i = i;
        }
      }
      --sizes[static_cast<std::size_t>(assignments[best_i])];
      assignments[best_i] = static_cast<int>(j);
      sizes[j] = 1;
    }
  };

  auto cost = [&]() {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += sq_dist(points[i], centroids[static_cast<std::size_t>(assignments[i])]);
    }
    return sum;
  };

  KMeansResult result;
  assign_all();
  result.inertia_history.push_back(cost());

  std::vector<int> previous = assignments;
  for (int iter = 1; iter <= max_iter; ++iter) {
    Matrix next(kk, Point(points[0].size(), 0.0));
    std::vector<std::size_t> counts(kk);
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(assignments[i]);
      for (std::size_t c = 0; c < next[j].size(); ++c) next[j][c] += points[i][c];
      ++counts[j];
    }
    double displacement = 0.0;
    for (std::size_t j = 0; j < kk; ++j) {
      for (double& c : next[j]) c /= static_cast<double>(counts[j]);
      displacement = std::max(displacement, std::sqrt(sq_dist(next[j], centroids[j])));
    }
    centroids = std::move(next);

    previous = assignments;
    assign_all();
    result.inertia_history.push_back(cost());
    result.iterations = iter;
    if (assignments == previous || displacement < tol) break;
  }

  result.centroids = std::move(centroids);
  result.assignments = std::move(assignments);
  result.inertia = result.inertia_history.back();
  return result;
}

std::string state_name(int index) {
  if (index < 0) throw std::invalid_argument("state index must be non-negative");
  std::string name;
  int n = index + 1;
  while (n > 0) {
    const int r = (n - 1) % 26;
    name.push_back(static_cast<char>('A' + r));
    n = (n - 1) / 26;
  }
  std::reverse(name.begin(), name.end());
  return name;
}

int state_index(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty state name");
  long long n = 0;
  for (char c : name) {
    if (c < 'A' || c > 'Z') throw std::invalid_argument("malformed state name: " + name);
    n = n * 26 + (c - 'A' + 1);
    if (n > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("state name out of range: " + name);
    }
  }
  return static_cast<int>(n - 1);
}

StateModel relabel_states(const KMeansResult& fit, const Standardization& st,
                          std::uint64_t seed_used) {
  const int k = static_cast<int>(fit.centroids.size());
  std::vector<int> order(fit.centroids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Point& ca = fit.centroids[static_cast<std::size_t>(a)];
    const Point& cb = fit.centroids[static_cast<std::size_t>(b)];
    if (ca != cb) return ca < cb;  // first feature ascending, then the next
    return a < b;
  });
  std::vector<int> letter_of(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    letter_of[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  }

  StateModel model;
  model.k = k;
  model.seed = seed_used;
  model.standardization = st;
  model.centroids = fit.centroids;
  model.centroid_order = std::move(order);
  model.labels.reserve(fit.assignments.size());
  for (int a : fit.assignments) {
    model.labels.push_back(letter_of[static_cast<std::size_t>(a)]);
  }
  model.inertia = fit.inertia;
  model.inertia_history = fit.inertia_history;
  return model;
}

TransitionMatrix transition_matrix(std::span<const int> labels, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (labels.size() < 2) {
    throw std::invalid_argument("transition_matrix requires at least 2 labels");
  }
  for (int l : labels) {
    if (l < 0 || l >= k) throw std::invalid_argument("label out of range");
  }
  TransitionMatrix tm;
  tm.k = k;
  tm.counts.assign(static_cast<std::size_t>(k),
                   std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    ++tm.counts[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(labels[i + 1])];
  }
  return tm;
}

std::pair<StateModel, TransitionMatrix> fit_state_space(const FeatureSeries& series,
                                                        const FitOptions& opts) {
  if (opts.k < 1) throw std::invalid_argument("k must be at least 1");
  if (opts.restarts < 1) throw std::invalid_argument("restarts must be at least 1");

  const std::vector<FeatureVector>* source = nullptr;
  if (opts.cluster_on_detrended) {
    if (!series.detrended) {
      throw std::invalid_argument("detrended features missing; run detrend first");
    }
    source = &*series.detrended;
  } else {
    source = &series.raw;
  }

  const std::size_t n = source->size();
  if (n < static_cast<std::size_t>(opts.k)) {
    throw std::runtime_error("insufficient snapshots: " + std::to_string(n) +
                             " timesteps for k=" + std::to_string(opts.k));
  }

  Matrix points(n, Point(2));
  for (std::size_t i = 0; i < n; ++i) {
    points[i][0] = (*source)[i].avg_degree;
    points[i][1] = (*source)[i].avg_clustering;
  }

  Standardization st;
  Matrix prepared;
  if (opts.standardize) {
    std::tie(prepared, st) = standardize(points);
  } else {
    prepared = std::move(points);
    st.mean.assign(2, 0.0);
    st.stddev.assign(2, 1.0);
  }

  KMeansResult best;
  std::uint64_t best_seed = opts.seed;
  for (int r = 0; r < opts.restarts; ++r) {
    const std::uint64_t run_seed = opts.seed + static_cast<std::uint64_t>(r);
    KMeansResult res = kmeans(prepared, opts.k, run_seed, opts.max_iter, opts.tol);
    if (r == 0 || res.inertia < best.inertia) {
      best = std::move(res);
      best_seed = run_seed;
    }
  }

  StateModel model = relabel_states(best, st, best_seed);
  TransitionMatrix tm = transition_matrix(model.labels, opts.k);
  return {std::move(model), std::move(tm)};
}

}  // namespace graphstate
