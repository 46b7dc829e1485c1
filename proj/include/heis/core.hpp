#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "heis/errors.hpp"

namespace heis {

/// Largest supported Heisenberg dimension d. Vectors are stored inline up to this size.
inline constexpr int kMaxDim = 4;

using cplx = std::complex<double>;
/// Horizontal coordinates u in C^d (and points of the quotient H^d / Z).
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// A point (u, s) of H^d = C^d x R.
struct HeisPoint {
  CVec u;
  double s = 0.0;

  HeisPoint() = default;
  HeisPoint(CVec u_, double s_) : u(std::move(u_)), s(s_) {}

  static HeisPoint identity(int d) { return {CVec::Zero(d), 0.0}; }

  int dim() const { return static_cast<int>(u.size()); }
  bool finite() const;
  /// On the center Z = {0} x R.
  bool is_vertical() const { return u.isZero(0.0); }
};

bool operator==(const HeisPoint& a, const HeisPoint& b);

void check_dim(int d);
void check_same_dim(const HeisPoint& a, const HeisPoint& b);

/// Symplectic form Im(u . v), with u . v = sum conj(u_k) v_k.
double omega(const CVec& u, const CVec& v);

/// (u_a + u_b, s_a + s_b - Im(u_a . u_b)).
HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b);
inline HeisPoint operator*(const HeisPoint& a, const HeisPoint& b) { return group_mul(a, b); }
HeisPoint inverse(const HeisPoint& a);

/// (|u|^4 + 4 s^2)^(1/4).
double koranyi_gauge(const HeisPoint& a);
/// || a^-1 . b ||, left invariant.
double koranyi_dist(const HeisPoint& a, const HeisPoint& b);

/// zeta . (u, s) = (zeta u, |zeta|^2 s).
HeisPoint dilate(cplx zeta, const HeisPoint& a);
inline HeisPoint dilate(double r, const HeisPoint& a) { return {a.u * r, a.s * r * r}; }

inline const CVec& pi_z(const HeisPoint& a) { return a.u; }

/// f = tau o h o u: rotate u by a unitary matrix, dilate by `ratio`, then left-translate.
class HeisSimilarity {
 public:
  /// Throws std::invalid_argument unless `rotation` is unitary within 1e-12 and ratio > 0.
  HeisSimilarity(CMat rotation, double ratio, HeisPoint translation);

  static HeisSimilarity identity(int d);
  static HeisSimilarity dilation(int d, double ratio);
  static HeisSimilarity translation(HeisPoint t);

  int dim() const { return static_cast<int>(rotation_.rows()); }
  const CMat& rotation() const { return rotation_; }
  double ratio() const { return ratio_; }
  const HeisPoint& offset() const { return translation_; }

  HeisPoint apply(const HeisPoint& a) const;
  HeisPoint operator()(const HeisPoint& a) const { return apply(a); }
  /// The linear part h o u alone (a group automorphism).
  HeisPoint apply_linear(const HeisPoint& a) const;
  HeisSimilarity inverse() const;

 private:
  struct Unchecked {};
  HeisSimilarity(Unchecked, CMat rotation, double ratio, HeisPoint translation);

  CMat rotation_;
  double ratio_;
  HeisPoint translation_;

  friend HeisSimilarity compose_similarities(const HeisSimilarity& f, const HeisSimilarity& g);
};

/// f o g.
HeisSimilarity compose_similarities(const HeisSimilarity& f, const HeisSimilarity& g);

/// Axis-aligned box in the real coordinates (re u1, im u1, ..., re ud, im ud, s).
struct HeisBox {
  std::vector<double> lo;
  std::vector<double> hi;

  static HeisBox cube(int d, double lo, double hi);
  int dim() const { return (static_cast<int>(lo.size()) - 1) / 2; }
  double volume() const;
  bool contains(const HeisPoint& p) const;
};

/// i.i.d. Haar (= Lebesgue) samples in `box`; sample i uses counter stream i.
std::vector<HeisPoint> haar_sample(const HeisBox& box, std::size_t n, std::uint64_t seed);

/// Packs (re u1, im u1, ..., s) into a flat vector and back.
std::vector<double> to_real(const HeisPoint& p);
HeisPoint from_real(const double* coords, int d);

}  // namespace heis
