#pragma once

#include <vector>

#include "heis/core.hpp"

namespace heis {

/// Vectors in C^{d+2}, coordinates indexed 0..d+1.
using BVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim + 2, 1>;
using BMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim + 2, kMaxDim + 2>;

/// conj(x0) y_{d+1} + conj(x_{d+1}) y0 - sum_k conj(x_k) y_k.
cplx hermitian_form(const BVec& x, const BVec& y);
/// Matrix J of the form, so that <x, y> = x* J y. J is real, symmetric and J^2 = I.
BMat form_matrix(int d);

/// Basis vector f_k of C^{d+2}.
BVec basis_vector(int d, int k);

/// ||x ^ y|| / (||x|| ||y||), the sine of the Euclidean angle between complex lines.
double projective_sine(const BVec& x, const BVec& y);

/// A point of the boundary sphere, as an unnormalized null representative.
class BoundaryPoint {
 public:
  static constexpr double kNullTol = 1e-10;
  static constexpr double kEqualTol = 1e-10;

  /// Throws std::invalid_argument for the zero vector or a non-null vector.
  explicit BoundaryPoint(BVec v);

  static BoundaryPoint infinity(int d) { return BoundaryPoint(basis_vector(d, 0)); }

  const BVec& v() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()) - 2; }
  /// |<v, v>| / ||v||^2.
  double null_residual() const;
  bool is_infinity() const;

  /// Projective equality.
  bool same_as(const BoundaryPoint& o) const;

 private:
  BVec v_;
};

/// [|u|^2/2 + i s : conj(u_1) : ... : conj(u_d) : 1].
BoundaryPoint phi(const HeisPoint& h);
/// Throws PointAtInfinity for [f0].
HeisPoint phi_inverse(const BoundaryPoint& x);

/// sqrt(|<x, y>| / (||x|| ||y||)).
double visual_metric(const BoundaryPoint& x, const BoundaryPoint& y);

/// Points alpha(t) x + y with alpha(t) = -i t / conj(<x, y>) on the chain through x and y.
std::vector<BoundaryPoint> chain_sample(const BoundaryPoint& x, const BoundaryPoint& y,
                                        const std::vector<double>& params);

/// Element of U(1, d+1) acting projectively on the boundary.
class BoundaryIsometry {
 public:
  static constexpr double kFormTol = 1e-10;

  /// Throws std::invalid_argument unless g* J g = J within kFormTol (relative to |g|^2).
  explicit BoundaryIsometry(BMat g);

  static BoundaryIsometry identity(int d);
  /// Left translation by t, conjugated through phi.
  static BoundaryIsometry heisenberg_translation(const HeisPoint& t);
  /// Heisenberg dilation by lambda > 0: fixes [f0] and [f_{d+1}].
  static BoundaryIsometry heisenberg_dilation(int d, double lambda);
  /// diag(lambda, 1, ..., 1, 1/conj(lambda)).
  static BoundaryIsometry loxodromic_diagonal(int d, cplx lambda);
  /// Swaps f0 and f_{d+1}: an involution exchanging [f0] and phi(0).
  static BoundaryIsometry inversion(int d);
  /// Loxodromic element with attracting fixed point phi(attract) and repelling phi(repel),
  /// translation length log(lambda).
  static BoundaryIsometry loxodromic(const HeisPoint& attract, const HeisPoint& repel, double lambda);

  const BMat& matrix() const { return g_; }
  int dim() const { return static_cast<int>(g_.rows()) - 2; }
  /// max |g* J g - J| / |g|^2.
  double form_defect() const;

  BoundaryPoint apply(const BoundaryPoint& x) const;
  BoundaryPoint operator()(const BoundaryPoint& x) const { return apply(x); }
  BoundaryIsometry inverse() const;
  BoundaryIsometry compose(const BoundaryIsometry& h) const;

 private:
  struct Unchecked {};
  BoundaryIsometry(Unchecked, BMat g) : g_(std::move(g)) {}
  BMat g_;
};

}  // namespace heis
