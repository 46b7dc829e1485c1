#include "heis/core.hpp"

#include <cmath>
#include <string>

#include "heis/rng.hpp"

namespace heis {

bool HeisPoint::finite() const {
  if (!std::isfinite(s)) return false;
  for (int k = 0; k < u.size(); ++k) {
    if (!std::isfinite(u[k].real()) || !std::isfinite(u[k].imag())) return false;
  }
  return true;
}

bool operator==(const HeisPoint& a, const HeisPoint& b) {
  return a.dim() == b.dim() && a.s == b.s && a.u == b.u;
}

void check_dim(int d) {
  if (d < 1 || d > kMaxDim) {
    throw std::invalid_argument("Heisenberg dimension must be in [1, " + std::to_string(kMaxDim) +
                                "], got " + std::to_string(d));
  }
}

void check_same_dim(const HeisPoint& a, const HeisPoint& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("Heisenberg points of dimension " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
}

double omega(const CVec& u, const CVec& v) { return u.dot(v).imag(); }

HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b) {
  check_same_dim(a, b);
  return {a.u + b.u, a.s + b.s - omega(a.u, b.u)};
}

HeisPoint inverse(const HeisPoint& a) { return {-a.u, -a.s}; }

double koranyi_gauge(const HeisPoint& a) {
  const double n2 = a.u.squaredNorm();
  return std::sqrt(std::sqrt(n2 * n2 + 4.0 * a.s * a.s));
}

double koranyi_dist(const HeisPoint& a, const HeisPoint& b) {
  check_same_dim(a, b);
  // a^-1 b = (u_b - u_a, s_b - s_a + Im(u_a . u_b)), since Im(u_a . u_a) = 0.
  const double n2 = (b.u - a.u).squaredNorm();
  const double s = b.s - a.s + omega(a.u, b.u);
  return std::sqrt(std::sqrt(n2 * n2 + 4.0 * s * s));
}

HeisPoint dilate(cplx zeta, const HeisPoint& a) { return {a.u * zeta, a.s * std::norm(zeta)}; }

// --- similarities -----------------------------------------------------------

HeisSimilarity::HeisSimilarity(CMat rotation, double ratio, HeisPoint translation)
    : rotation_(std::move(rotation)), ratio_(ratio), translation_(std::move(translation)) {
  require(rotation_.rows() == rotation_.cols(), "rotation must be square");
  check_dim(static_cast<int>(rotation_.rows()));
  if (translation_.dim() != rotation_.rows()) {
    throw DimensionMismatch("similarity translation dimension does not match rotation");
  }
  require(ratio_ > 0.0 && std::isfinite(ratio_), "similarity ratio must be positive and finite");
  const CMat gram = rotation_.adjoint() * rotation_;
  const double defect = (gram - CMat::Identity(rotation_.rows(), rotation_.cols())).cwiseAbs().maxCoeff();
  require(defect <= 1e-12, "similarity rotation is not unitary (|U*U - I| = " + std::to_string(defect) + ")");
  require(translation_.finite(), "similarity translation is not finite");
}

HeisSimilarity::HeisSimilarity(Unchecked, CMat rotation, double ratio, HeisPoint translation)
    : rotation_(std::move(rotation)), ratio_(ratio), translation_(std::move(translation)) {}

HeisSimilarity HeisSimilarity::identity(int d) {
  check_dim(d);
  return {CMat::Identity(d, d), 1.0, HeisPoint::identity(d)};
}

HeisSimilarity HeisSimilarity::dilation(int d, double ratio) {
  check_dim(d);
  return {CMat::Identity(d, d), ratio, HeisPoint::identity(d)};
}

HeisSimilarity HeisSimilarity::translation(HeisPoint t) {
  const int d = t.dim();
  check_dim(d);
  return {CMat::Identity(d, d), 1.0, std::move(t)};
}

HeisPoint HeisSimilarity::apply_linear(const HeisPoint& a) const {
  if (a.dim() != dim()) throw DimensionMismatch("similarity and point dimensions differ");
  return {(rotation_ * a.u) * ratio_, a.s * ratio_ * ratio_};
}

HeisPoint HeisSimilarity::apply(const HeisPoint& a) const {
  return group_mul(translation_, apply_linear(a));
}

HeisSimilarity HeisSimilarity::inverse() const {
  // f^-1(y) = L^-1(x^-1 y) = L^-1(x^-1) . L^-1(y), with L^-1 = (U*, 1/r).
  const CMat uinv = rotation_.adjoint();
  const double rinv = 1.0 / ratio_;
  const HeisPoint xinv = heis::inverse(translation_);
  HeisPoint t{(uinv * xinv.u) * rinv, xinv.s * rinv * rinv};
  return {Unchecked{}, uinv, rinv, std::move(t)};
}

HeisSimilarity compose_similarities(const HeisSimilarity& f, const HeisSimilarity& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("composing similarities of different dimension");
  // f(g(a)) = x_f . L_f(x_g . L_g a) = (x_f . L_f x_g) . (L_f L_g) a.
  HeisPoint t = group_mul(f.translation_, f.apply_linear(g.translation_));
  return {HeisSimilarity::Unchecked{}, f.rotation_ * g.rotation_, f.ratio_ * g.ratio_, std::move(t)};
}

// --- boxes and Haar sampling --------------------------------------------------

HeisBox HeisBox::cube(int d, double lo, double hi) {
  check_dim(d);
  HeisBox box;
  box.lo.assign(2 * d + 1, lo);
  box.hi.assign(2 * d + 1, hi);
  return box;
}

double HeisBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool HeisBox::contains(const HeisPoint& p) const {
  const auto c = to_real(p);
  if (c.size() != lo.size()) throw DimensionMismatch("box and point dimensions differ");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < lo[i] || c[i] > hi[i]) return false;
  }
  return true;
}

std::vector<HeisPoint> haar_sample(const HeisBox& box, std::size_t n, std::uint64_t seed) {
  require(box.lo.size() == box.hi.size() && box.lo.size() % 2 == 1 && box.lo.size() >= 3,
          "box must have 2d+1 coordinates");
  const int d = box.dim();
  check_dim(d);
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    require(box.hi[i] > box.lo[i], "haar_sample: empty region");
  }
  std::vector<HeisPoint> out;
  out.reserve(n);
  std::vector<double> c(box.lo.size());
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, i);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = rng.uniform(box.lo[k], box.hi[k]);
    out.push_back(from_real(c.data(), d));
  }
  return out;
}

std::vector<double> to_real(const HeisPoint& p) {
  std::vector<double> c;
  c.reserve(2 * p.dim() + 1);
  for (int k = 0; k < p.dim(); ++k) {
    c.push_back(p.u[k].real());
    c.push_back(p.u[k].imag());
  }
  c.push_back(p.s);
  return c;
}

HeisPoint from_real(const double* coords, int d) {
  CVec u(d);
  for (int k = 0; k < d; ++k) u[k] = cplx(coords[2 * k], coords[2 * k + 1]);
  return {u, coords[2 * d]};
}

}  // namespace heis
