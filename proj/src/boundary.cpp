#include "heis/boundary.hpp"

#include <cmath>
#include <string>

namespace heis {

namespace {

void check_bvec(const BVec& x) {
  if (x.size() < 3 || x.size() > kMaxDim + 2) {
    throw std::invalid_argument("boundary vector length must be d+2 with 1 <= d <= " +
                                std::to_string(kMaxDim));
  }
}

}  // namespace

cplx hermitian_form(const BVec& x, const BVec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("hermitian_form: vector lengths differ");
  check_bvec(x);
  const Eigen::Index n = x.size();
  cplx acc = std::conj(x[0]) * y[n - 1] + std::conj(x[n - 1]) * y[0];
  for (Eigen::Index k = 1; k + 1 < n; ++k) acc -= std::conj(x[k]) * y[k];
  return acc;
}

BMat form_matrix(int d) {
  check_dim(d);
  const int n = d + 2;
  BMat j = BMat::Zero(n, n);
  j(0, n - 1) = 1.0;
  j(n - 1, 0) = 1.0;
  for (int k = 1; k <= d; ++k) j(k, k) = -1.0;
  return j;
}

BVec basis_vector(int d, int k) {
  check_dim(d);
  require(k >= 0 && k <= d + 1, "basis index out of range");
  BVec e = BVec::Zero(d + 2);
  e[k] = 1.0;
  return e;
}

double projective_sine(const BVec& x, const BVec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("projective_sine: vector lengths differ");
  double wedge2 = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = i + 1; j < x.size(); ++j) wedge2 += std::norm(x[i] * y[j] - x[j] * y[i]);
  }
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw std::invalid_argument("projective_sine: zero vector");
  return std::sqrt(wedge2) / (nx * ny);
}

// --- BoundaryPoint ------------------------------------------------------------

BoundaryPoint::BoundaryPoint(BVec v) : v_(std::move(v)) {
  check_bvec(v_);
  const double n2 = v_.squaredNorm();
  require(n2 > 0.0 && std::isfinite(n2), "boundary point representative must be nonzero and finite");
  const double res = null_residual();
  require(res <= kNullTol, "boundary point is off the null cone (residual " + std::to_string(res) + ")");
}

double BoundaryPoint::null_residual() const {
  return std::abs(hermitian_form(v_, v_)) / v_.squaredNorm();
}

bool BoundaryPoint::is_infinity() const { return projective_sine(v_, basis_vector(dim(), 0)) <= kEqualTol; }

bool BoundaryPoint::same_as(const BoundaryPoint& o) const {
  if (o.v_.size() != v_.size()) throw DimensionMismatch("boundary points of different dimension");
  return projective_sine(v_, o.v_) <= kEqualTol;
}

BoundaryPoint phi(const HeisPoint& h) {
  const int d = h.dim();
  check_dim(d);
  BVec v(d + 2);
  v[0] = cplx(0.5 * h.u.squaredNorm(), h.s);
  for (int k = 0; k < d; ++k) v[k + 1] = std::conj(h.u[k]);
  v[d + 1] = 1.0;
  return BoundaryPoint(v);
}

HeisPoint phi_inverse(const BoundaryPoint& x) {
  if (x.is_infinity()) throw PointAtInfinity("phi_inverse: point is [f0]");
  const int d = x.dim();
  const cplx last = x.v()[d + 1];
  const BVec w = x.v() / last;
  CVec u(d);
  for (int k = 0; k < d; ++k) u[k] = std::conj(w[k + 1]);
  return {u, w[0].imag()};
}

double visual_metric(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("visual_metric: dimensions differ");
  return std::sqrt(std::abs(hermitian_form(x.v(), y.v())) / (x.v().norm() * y.v().norm()));
}

std::vector<BoundaryPoint> chain_sample(const BoundaryPoint& x, const BoundaryPoint& y,
                                        const std::vector<double>& params) {
  if (x.dim() != y.dim()) throw DimensionMismatch("chain_sample: dimensions differ");
  if (x.same_as(y)) throw std::invalid_argument("chain_sample: coincident points");
  const cplx xy = hermitian_form(x.v(), y.v());
  if (std::abs(xy) == 0.0) throw std::invalid_argument("chain_sample: <x, y> vanishes");
  std::vector<BoundaryPoint> out;
  out.reserve(params.size());
  for (double t : params) {
    const cplx alpha = cplx(0.0, -t) / std::conj(xy);
    out.emplace_back(BVec(alpha * x.v() + y.v()));
  }
  return out;
}

// --- BoundaryIsometry ---------------------------------------------------------

BoundaryIsometry::BoundaryIsometry(BMat g) : g_(std::move(g)) {
  require(g_.rows() == g_.cols(), "isometry matrix must be square");
  check_dim(static_cast<int>(g_.rows()) - 2);
  require(g_.allFinite(), "isometry matrix must be finite");
  const double defect = form_defect();
  require(defect <= kFormTol, "matrix does not preserve the Hermitian form (defect " + std::to_string(defect) + ")");
}

double BoundaryIsometry::form_defect() const {
  const BMat j = form_matrix(dim());
  const double scale = std::max(1.0, g_.squaredNorm());
  return (g_.adjoint() * j * g_ - j).cwiseAbs().maxCoeff() / scale;
}

BoundaryIsometry BoundaryIsometry::identity(int d) {
  check_dim(d);
  return BoundaryIsometry(BMat::Identity(d + 2, d + 2));
}

BoundaryIsometry BoundaryIsometry::heisenberg_translation(const HeisPoint& t) {
  const int d = t.dim();
  check_dim(d);
  BMat g = BMat::Identity(d + 2, d + 2);
  for (int k = 0; k < d; ++k) {
    g(0, k + 1) = t.u[k];
    g(k + 1, d + 1) = std::conj(t.u[k]);
  }
  g(0, d + 1) = cplx(0.5 * t.u.squaredNorm(), t.s);
  return BoundaryIsometry(g);
}

BoundaryIsometry BoundaryIsometry::heisenberg_dilation(int d, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "dilation factor must be positive");
  return loxodromic_diagonal(d, lambda);
}

BoundaryIsometry BoundaryIsometry::loxodromic_diagonal(int d, cplx lambda) {
  check_dim(d);
  require(std::abs(lambda) > 0.0, "loxodromic eigenvalue must be nonzero");
  BMat g = BMat::Identity(d + 2, d + 2);
  g(0, 0) = lambda;
  g(d + 1, d + 1) = 1.0 / std::conj(lambda);
  return BoundaryIsometry(g);
}

BoundaryIsometry BoundaryIsometry::inversion(int d) {
  check_dim(d);
  BMat g = BMat::Identity(d + 2, d + 2);
  g(0, 0) = 0.0;
  g(d + 1, d + 1) = 0.0;
  g(0, d + 1) = 1.0;
  g(d + 1, 0) = 1.0;
  return BoundaryIsometry(g);
}

BoundaryIsometry BoundaryIsometry::loxodromic(const HeisPoint& attract, const HeisPoint& repel, double lambda) {
  check_same_dim(attract, repel);
  require(lambda > 1.0, "loxodromic translation factor must exceed 1");
  const int d = attract.dim();
  const HeisPoint a1 = group_mul(heis::inverse(repel), attract);
  require(koranyi_gauge(a1) > 0.0, "loxodromic fixed points must differ");
  const BoundaryIsometry w = inversion(d);
  const HeisPoint shift = phi_inverse(w.apply(phi(a1)));
  // c sends [f0] to phi(attract) and phi(0) to phi(repel).
  const BoundaryIsometry c =
      heisenberg_translation(repel).compose(w).compose(heisenberg_translation(shift)).compose(w);
  return c.compose(heisenberg_dilation(d, lambda)).compose(c.inverse());
}

BoundaryPoint BoundaryIsometry::apply(const BoundaryPoint& x) const {
  if (x.dim() != dim()) throw DimensionMismatch("isometry and point dimensions differ");
  BVec y = g_ * x.v();
  const double n = y.cwiseAbs().maxCoeff();
  return BoundaryPoint(BVec(y / n));
}

BoundaryIsometry BoundaryIsometry::inverse() const {
  const BMat j = form_matrix(dim());
  return BoundaryIsometry(Unchecked{}, j * g_.adjoint() * j);
}

BoundaryIsometry BoundaryIsometry::compose(const BoundaryIsometry& h) const {
  if (h.dim() != dim()) throw DimensionMismatch("composing isometries of different dimension");
  return BoundaryIsometry(Unchecked{}, g_ * h.g_);
}

}  // namespace heis
