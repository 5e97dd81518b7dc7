#pragma once

#include <span>
#include <vector>

#include "graphstate/features.hpp"

namespace graphstate {

/// Ordinary least squares line y ~ slope * i + intercept over i = 0..n-1.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// OLS fit against x = 0, 1, ..., n-1. Requires n >= 2. A constant series
/// yields slope 0 and intercept equal to the constant, exactly.
LinearFit linear_fit(std::span<const double> y);

/// Residuals y[i] - (intercept + slope * i).
std::vector<double> detrend(std::span<const double> y);

/// Detrend each feature column independently; returns the series with the
/// detrended field filled and raw untouched. Requires length >= 2.
FeatureSeries detrend(FeatureSeries series);

}  // namespace graphstate
