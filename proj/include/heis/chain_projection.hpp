#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heis/boundary.hpp"
#include "heis/multivector.hpp"

namespace heis {

/// Radial projection along chains through a fixed basepoint, in a fixed affine chart.
///
/// For a finite basepoint h0 with x = phi(h0), a point h maps to the chart coordinates
/// (b_k . u) / (xhat . u), u = Q(x) ^ Q(phi(h)), where b_1..b_d is an orthonormal basis of
/// A(x) = { w in G^d(x^perp) : x v w = 0 } and xhat is the unit normal of A(x) inside
/// G^d(x^perp). The basepoint at infinity gives the quotient map (u, s) -> u.
class ChainProjector {
 public:
  static constexpr double kKernelTol = 1e-10;
  static constexpr double kChartTol = 1e-8;

  static ChainProjector at(const HeisPoint& h0, double chart_tol = kChartTol);
  static ChainProjector infinity(int d);

  int dim() const { return d_; }
  bool is_infinity() const { return !basepoint_.has_value(); }
  const std::optional<HeisPoint>& basepoint() const { return basepoint_; }
  const BoundaryPoint& x() const { return x_; }
  const Multivector& qx() const { return qx_; }
  const Multivector& xhat() const { return xhat_; }
  const std::vector<Multivector>& chart_basis() const { return chart_basis_; }
  double chart_tol() const { return chart_tol_; }
  /// Singular values of w -> x v w on G^d(x^perp), descending.
  const std::vector<double>& kernel_spectrum() const { return spectrum_; }
  /// FNV-1a hash of the chart data; identical charts hash identically.
  std::uint64_t fingerprint() const;

 private:
  ChainProjector(int d, std::optional<HeisPoint> h0, BoundaryPoint x, double tol);

  int d_;
  std::optional<HeisPoint> basepoint_;
  BoundaryPoint x_;
  double chart_tol_;
  Multivector qx_;
  Multivector xhat_;
  std::vector<Multivector> chart_basis_;
  std::vector<double> spectrum_;
};

enum class ProjectStatus { Ok, Basepoint, ChartSingular };

struct ProjectOutcome {
  ProjectStatus status = ProjectStatus::Ok;
  CVec value;
  /// |xhat . u| / |u| (1 for the quotient map).
  double chart_ratio = 1.0;
};

/// Non-throwing variant of project().
ProjectOutcome try_project(const ChainProjector& p, const HeisPoint& h);
ProjectOutcome try_project_boundary(const ChainProjector& p, const BoundaryPoint& y);

/// Throws BasepointError or ChartSingularity.
CVec project(const ChainProjector& p, const HeisPoint& h);
CVec project_boundary(const ChainProjector& p, const BoundaryPoint& y);

struct PansuDerivative {
  /// D(v) = m v for horizontal v.
  CMat m;
  /// Real 2d x 2d Jacobian in coordinates (re v1, im v1, ...).
  Eigen::MatrixXd real_jacobian;
  double condition = 1.0;
  /// max_k |D(i e_k) - i D(e_k)| / |m|; zero for complex-linear maps.
  double linearity_defect = 0.0;
  /// Largest relative disagreement between step r and step r/2.
  double richardson_gap = 0.0;
  double step = 0.0;
};

/// Horizontal derivative of project() at h by central differences with Richardson
/// extrapolation. `step` <= 0 picks 1e-3 * min(1, d(h0, h)).
/// Throws DerivativeUnreliable when the two step sizes disagree by more than `tol`.
PansuDerivative pansu_derivative(const ChainProjector& p, const HeisPoint& h, double step = 0.0,
                                 double tol = 1e-3);

}  // namespace heis
