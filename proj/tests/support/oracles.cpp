#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace oracle {

std::array<double, 3> mul_d1(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  // Im(conj(a) b) for a = x1 + i y1, b = x2 + i y2 is x1 y2 - y1 x2.
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2] - (a[0] * b[1] - a[1] * b[0])};
}

double gauge(const std::vector<double>& coords) {
  double u2 = 0.0;
  for (std::size_t i = 0; i + 1 < coords.size(); ++i) u2 += coords[i] * coords[i];
  const double s = coords.back();
  return std::pow(u2 * u2 + 4.0 * s * s, 0.25);
}

double ball_volume(int d) {
  // Slice at height s is a Euclidean 2d-ball of radius (1 - 4 s^2)^(1/4).
  const double omega = std::pow(std::numbers::pi, d) / std::tgamma(d + 1.0);
  const int n = 200000;
  const double h = 1.0 / n;
  auto f = [&](double s) { return omega * std::pow(std::max(0.0, 1.0 - 4.0 * s * s), d / 2.0); };
  double acc = f(-0.5) + f(0.5);
  for (int i = 1; i < n; ++i) acc += f(-0.5 + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double moran_equal(int k, double r) { return std::log(static_cast<double>(k)) / std::log(1.0 / r); }

cplx hermitian(const heis::BVec& x, const heis::BVec& y) {
  const auto n = x.size();
  cplx acc = std::conj(x[0]) * y[n - 1] + std::conj(x[n - 1]) * y[0];
  for (Eigen::Index k = 1; k + 1 < n; ++k) acc -= std::conj(x[k]) * y[k];
  return acc;
}

double third_singular_value(const heis::BVec& x, const heis::BVec& y, const heis::BVec& z) {
  Eigen::MatrixXcd m(x.size(), 3);
  m.col(0) = x / x.norm();
  m.col(1) = y / y.norm();
  m.col(2) = z / z.norm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()[2];
}

std::size_t grid_cells(const std::vector<std::array<double, 2>>& pts, int k) {
  const double side = std::ldexp(1.0, k);
  std::set<std::pair<long, long>> cells;
  for (const auto& p : pts) {
    cells.emplace(static_cast<long>(std::floor(p[0] * side)), static_cast<long>(std::floor(p[1] * side)));
  }
  return cells.size();
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

heis::HeisPoint random_point(heis::CounterRng& rng, int d, double scale) {
  heis::CVec u(d);
  for (int k = 0; k < d; ++k) u[k] = cplx(rng.normal(), rng.normal()) * scale;
  return {u, rng.normal() * scale * scale};
}

heis::CMat random_unitary(heis::CounterRng& rng, int d) {
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  return heis::CMat(q);
}

}  // namespace oracle
