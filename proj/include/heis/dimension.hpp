#pragma once

#include <string>
#include <vector>

#include "heis/measures.hpp"
#include "heis/tiles.hpp"

namespace heis {

/// Least-squares scaling exponent. Every estimate carries its method tag; none is a
/// Hausdorff dimension.
struct DimEstimate {
  double slope = 0.0;
  double stderr_ = 0.0;
  double r2 = 1.0;
  /// Scales used in the fit, strictly decreasing.
  std::vector<double> scales;
  /// Counts (box methods) or entropies (entropy method) at those scales.
  std::vector<double> counts;
  /// Scales dropped by the saturation guard, with their values.
  std::vector<double> excluded_scales;
  std::vector<double> excluded_counts;
  std::string method;
  /// "low-r2" when r2 < kMinR2, "saturated-excluded" when scales were dropped,
  /// "unresolved-points" when some points had no atom address.
  std::vector<std::string> flags;

  bool reliable() const { return r2 >= kMinR2; }
  static constexpr double kMinR2 = 0.98;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_ = 0.0;
  double r2 = 1.0;
};

/// Ordinary least squares of y on x. Needs at least two points.
LinearFit ols(const std::vector<double>& x, const std::vector<double>& y);

/// Fits `values` against log(1/scale); `log_values` regresses log(values) instead.
/// `keep[i] == false` moves scale i to the excluded list. Throws InsufficientScales below 3.
DimEstimate fit_scaling(const std::vector<double>& scales, const std::vector<double>& values,
                        const std::vector<bool>& keep, bool log_values, std::string method);

/// Counts distinct depth-m tile atoms hit by the cloud for m in [m_lo, m_hi]; scale b^-m.
/// Scales with more than size/10 atoms are excluded.
DimEstimate box_dim_koranyi(const std::vector<HeisPoint>& cloud, const TileSystem& ts, int m_lo, int m_hi);

/// Dyadic occupancy at side 2^-k (k in [k_lo, k_hi]) after rescaling the cloud's bounding box to
/// unit extent.
DimEstimate box_dim_euclidean(const std::vector<std::vector<double>>& cloud, int k_lo = 3, int k_hi = 9);
DimEstimate box_dim_euclidean(const std::vector<CVec>& cloud, int k_lo = 3, int k_hi = 9);

/// Slope of H_rho against log(1/rho); saturated entropies are excluded.
DimEstimate entropy_dim(const PointMeasure& nu, const std::vector<double>& rhos);

/// Entropy dimension of the Haar measure on T from the probe estimator at rho = b^-m.
DimEstimate haar_entropy_dim(const TileSystem& ts, int m_lo, int m_hi, std::size_t queries, std::size_t probes,
                             std::uint64_t seed);

}  // namespace heis
