#include "heis/chain_projection.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace heis {

namespace {

using DMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void fnv_mix(std::uint64_t& h, const Multivector& m) {
  for (const cplx& c : m.coeffs()) {
    const double re = c.real() == 0.0 ? 0.0 : c.real();
    const double im = c.imag() == 0.0 ? 0.0 : c.imag();
    fnv_mix(h, &re, sizeof re);
    fnv_mix(h, &im, sizeof im);
  }
}

}  // namespace

ChainProjector::ChainProjector(int d, std::optional<HeisPoint> h0, BoundaryPoint x, double tol)
    : d_(d),
      basepoint_(std::move(h0)),
      x_(std::move(x)),
      chart_tol_(tol),
      qx_(d + 2, d + 1),
      xhat_(d + 2, d) {}

ChainProjector ChainProjector::infinity(int d) {
  check_dim(d);
  ChainProjector p(d, std::nullopt, BoundaryPoint::infinity(d), 0.0);
  p.qx_ = qmap(p.x_.v());
  return p;
}

ChainProjector ChainProjector::at(const HeisPoint& h0, double chart_tol) {
  const int d = h0.dim();
  check_dim(d);
  require(h0.finite(), "projector basepoint must be finite");
  require(chart_tol > 0.0 && chart_tol < 1.0, "chart tolerance must lie in (0, 1)");
  ChainProjector p(d, h0, phi(h0), chart_tol);
  const int n = d + 2;
  const BVec x = p.x_.v();
  p.qx_ = qmap(x);

  // Orthonormal basis w_0..w_d of x^perp = { y : <x, y> = 0 } = (J x)^perp.
  const BVec jx = form_matrix(d) * x;
  Eigen::JacobiSVD<DMat> col_svd(DMat(jx), Eigen::ComputeFullU);
  const DMat w = col_svd.matrixU().rightCols(n - 1);

  // G^d(x^perp) is spanned by the wedges omitting one w_i; these are orthonormal.
  std::vector<Multivector> gd;
  gd.reserve(n - 1);
  for (int omit = 0; omit < n - 1; ++omit) {
    Multivector acc = Multivector::scalar(n, 1.0);
    for (int j = 0; j < n - 1; ++j) {
      if (j == omit) continue;
      acc = progressive(acc, Multivector::from_vector(BVec(w.col(j))));
    }
    gd.push_back(std::move(acc));
  }

  const Multivector xv = Multivector::from_vector(x);
  DMat k(n, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const Multivector img = progressive(xv, gd[i]);
    for (int r = 0; r < n; ++r) k(r, i) = img.coeffs()[r];
  }
  Eigen::JacobiSVD<DMat> ksvd(k, Eigen::ComputeFullV);
  const auto& sv = ksvd.singularValues();
  p.spectrum_.assign(sv.data(), sv.data() + sv.size());
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > kKernelTol * smax) ++rank;
  }
  if (smax == 0.0 || rank != 1) {
    std::string msg = "projector chart: expected a kernel of dimension " + std::to_string(d) +
                      ", singular values:";
    for (double s : p.spectrum_) msg += " " + std::to_string(s);
    throw std::runtime_error(msg);
  }

  auto combine = [&](const auto& c) {
    Multivector m(n, d);
    for (int i = 0; i < n - 1; ++i) m += c[i] * gd[i];
    return m;
  };
  const DMat v = ksvd.matrixV();
  p.xhat_ = combine(v.col(0));
  p.xhat_ *= 1.0 / p.xhat_.norm();
  for (int c = 1; c < n - 1; ++c) p.chart_basis_.push_back(combine(v.col(c)));
  return p;
}

std::uint64_t ChainProjector::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  const std::int32_t d = d_;
  fnv_mix(h, &d, sizeof d);
  if (is_infinity()) {
    fnv_mix(h, "infinity", 8);
    return h;
  }
  fnv_mix(h, xhat_);
  for (const auto& b : chart_basis_) fnv_mix(h, b);
  fnv_mix(h, &chart_tol_, sizeof chart_tol_);
  return h;
}

ProjectOutcome try_project_boundary(const ChainProjector& p, const BoundaryPoint& y) {
  if (y.dim() != p.dim()) throw DimensionMismatch("projector and point dimensions differ");
  ProjectOutcome out;
  if (p.is_infinity()) {
    if (y.is_infinity()) {
      out.status = ProjectStatus::Basepoint;
      return out;
    }
    out.value = phi_inverse(y).u;
    return out;
  }
  if (y.same_as(p.x())) {
    out.status = ProjectStatus::Basepoint;
    return out;
  }
  const Multivector u = regressive(p.qx(), qmap(y.v()));
  const double un = u.norm();
  const cplx denom = p.xhat().dot(u);
  out.chart_ratio = un > 0.0 ? std::abs(denom) / un : 0.0;
  if (!(out.chart_ratio >= p.chart_tol())) {
    out.status = ProjectStatus::ChartSingular;
    return out;
  }
  out.value.resize(p.dim());
  for (int k = 0; k < p.dim(); ++k) out.value[k] = p.chart_basis()[k].dot(u) / denom;
  return out;
}

ProjectOutcome try_project(const ChainProjector& p, const HeisPoint& h) {
  if (h.dim() != p.dim()) throw DimensionMismatch("projector and point dimensions differ");
  if (p.is_infinity()) {
    ProjectOutcome out;
    out.value = h.u;
    return out;
  }
  return try_project_boundary(p, phi(h));
}

namespace {

CVec unwrap(ProjectOutcome o) {
  switch (o.status) {
    case ProjectStatus::Basepoint:
      throw BasepointError("project: point coincides with the projector basepoint");
    case ProjectStatus::ChartSingular:
      throw ChartSingularity("project: point is too close to the excluded chart hyperplane (ratio " +
                             std::to_string(o.chart_ratio) + ")");
    case ProjectStatus::Ok:
      break;
  }
  return std::move(o.value);
}

}  // namespace

CVec project(const ChainProjector& p, const HeisPoint& h) { return unwrap(try_project(p, h)); }

CVec project_boundary(const ChainProjector& p, const BoundaryPoint& y) {
  return unwrap(try_project_boundary(p, y));
}

PansuDerivative pansu_derivative(const ChainProjector& p, const HeisPoint& h, double step, double tol) {
  const int d = p.dim();
  if (h.dim() != d) throw DimensionMismatch("projector and point dimensions differ");
  PansuDerivative out;
  if (p.is_infinity()) {
    out.m = CMat::Identity(d, d);
    out.real_jacobian = Eigen::MatrixXd::Identity(2 * d, 2 * d);
    return out;
  }
  if (step <= 0.0) step = 1e-3 * std::min(1.0, koranyi_dist(*p.basepoint(), h));
  require(step > 0.0, "pansu_derivative: point coincides with the basepoint");
  out.step = step;

  (void)project(p, h);
  auto central = [&](const CVec& v, double r) {
    const CVec fp = project(p, group_mul(h, HeisPoint(CVec(v * r), 0.0)));
    const CVec fm = project(p, group_mul(h, HeisPoint(CVec(-v * r), 0.0)));
    return CVec((fp - fm) / (2.0 * r));
  };

  std::vector<CVec> cols;
  double gap = 0.0;
  for (int k = 0; k < 2 * d; ++k) {
    CVec v = CVec::Zero(d);
    v[k / 2] = (k % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    const CVec coarse = central(v, step);
    const CVec fine = central(v, 0.5 * step);
    const CVec rich = (4.0 * fine - coarse) / 3.0;
    const double scale = std::max(rich.norm(), 1e-300);
    gap = std::max(gap, (fine - coarse).norm() / scale);
    cols.push_back(rich);
  }
  out.richardson_gap = gap;
  if (!(gap <= tol)) {
    throw DerivativeUnreliable("pansu_derivative: steps " + std::to_string(step) + " and " +
                               std::to_string(0.5 * step) + " disagree by " + std::to_string(gap));
  }

  out.m.resize(d, d);
  out.real_jacobian.resize(2 * d, 2 * d);
  double defect = 0.0;
  for (int k = 0; k < d; ++k) {
    out.m.col(k) = cols[2 * k];
    defect = std::max(defect, (cols[2 * k + 1] - cplx(0.0, 1.0) * cols[2 * k]).norm());
    for (int j = 0; j < 2; ++j) {
      for (int r = 0; r < d; ++r) {
        out.real_jacobian(2 * r, 2 * k + j) = cols[2 * k + j][r].real();
        out.real_jacobian(2 * r + 1, 2 * k + j) = cols[2 * k + j][r].imag();
      }
    }
  }
  Eigen::JacobiSVD<DMat> msvd(DMat(out.m));
  const auto& sv = msvd.singularValues();
  const double smin = sv[sv.size() - 1];
  out.condition = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
  out.linearity_defect = sv[0] > 0.0 ? defect / sv[0] : 0.0;
  return out;
}

}  // namespace heis
