#include "graphstate/detrend.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphstate {

LinearFit linear_fit(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) throw std::invalid_argument("linear_fit requires at least 2 points");

  // Constant series short-circuits so slope 0 / intercept c hold exactly.
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
    return {0.0, y[0]};
  }

  const double x_mean = static_cast<double>(n - 1) / 2.0;
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);

  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    sxy += dx * (y[i] - y_mean);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  return {slope, y_mean - slope * x_mean};
}

std::vector<double> detrend(std::span<const double> y) {
  const LinearFit fit = linear_fit(y);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] - (fit.intercept + fit.slope * static_cast<double>(i));
  }
  return out;
}

FeatureSeries detrend(FeatureSeries series) {
  const std::size_t n = series.raw.size();
  if (n < 2) throw std::invalid_argument("detrend requires at least 2 timesteps");

  std::vector<double> degree(n);
  std::vector<double> clustering(n);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = series.raw[i].avg_degree;
    clustering[i] = series.raw[i].avg_clustering;
  }
  const std::vector<double> degree_res = detrend(degree);
  const std::vector<double> clustering_res = detrend(clustering);

  std::vector<FeatureVector> detrended(n);
  for (std::size_t i = 0; i < n; ++i) {
    detrended[i] = {degree_res[i], clustering_res[i]};
  }
  series.detrended = std::move(detrended);
  return series;
}

}  // namespace graphstate
