#include "probes.hpp"

#include <cmath>

#include "oracles.hpp"

namespace probe {

using namespace heis;

FiberResult fiber(const ChainProjector& p, const HeisPoint& h, std::size_t samples, CounterRng& rng) {
  FiberResult out;
  const CVec ref = project(p, h);
  const double scale = std::max(1.0, ref.norm());
  std::vector<double> params;
  for (std::size_t i = 0; i < samples; ++i) params.push_back(std::sinh(3.0 * rng.normal()));
  for (const auto& z : chain_sample(p.x(), phi(h), params)) {
    const auto r = try_project_boundary(p, z);
    if (r.status == ProjectStatus::ChartSingular) {
      ++out.singular;
      continue;
    }
    if (r.status != ProjectStatus::Ok) continue;
    ++out.projected;
    out.spread = std::max(out.spread, (r.value - ref).norm() / scale);
  }
  return out;
}

double pansu_remainder_slope(const ChainProjector& p, const HeisPoint& h, CounterRng& rng) {
  const int d = p.dim();
  const PansuDerivative pd = pansu_derivative(p, h);
  const CVec base = project(p, h);
  CVec v(d);
  for (int k = 0; k < d; ++k) v[k] = cplx(rng.normal(), rng.normal());
  const double t = rng.normal();
  const double norm = std::pow(std::pow(v.squaredNorm(), 2) + 4 * t * t, 0.25);
  v /= norm;
  const double tt = t / (norm * norm);
  Eigen::VectorXd vr(2 * d);
  for (int k = 0; k < d; ++k) {
    vr[2 * k] = v[k].real();
    vr[2 * k + 1] = v[k].imag();
  }
  const Eigen::VectorXd dv = pd.real_jacobian * vr;
  std::vector<double> xs, ys;
  for (double e = -4.0; e <= -1.0 + 1e-9; e += 0.25) {
    const double r = std::pow(10.0, e);
    const CVec img = project(p, group_mul(h, HeisPoint(CVec(r * v), r * r * tt)));
    double rem2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const cplx lin(r * dv[2 * k], r * dv[2 * k + 1]);
      rem2 += std::norm(img[k] - base[k] - lin);
    }
    xs.push_back(std::log(r));
    ys.push_back(0.5 * std::log(rem2));
  }
  return oracle::ls_slope(xs, ys);
}

}  // namespace probe
