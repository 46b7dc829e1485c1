#include "heis/dimension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace heis {

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "ols needs at least two paired values");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "ols needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double sse = std::max(syy - f.slope * sxy, 0.0);
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  f.stderr_ = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return f;
}

DimEstimate fit_scaling(const std::vector<double>& scales, const std::vector<double>& values,
                        const std::vector<bool>& keep, bool log_values, std::string method) {
  require(scales.size() == values.size() && scales.size() == keep.size(), "one value per scale");
  DimEstimate est;
  est.method = std::move(method);
  std::vector<std::size_t> order(scales.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scales[a] > scales[b]; });
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i : order) {
    require(scales[i] > 0.0, "scales must be positive");
    if (!keep[i]) {
      est.excluded_scales.push_back(scales[i]);
      est.excluded_counts.push_back(values[i]);
      continue;
    }
    require(est.scales.empty() || scales[i] < est.scales.back(), "scales must be distinct");
    est.scales.push_back(scales[i]);
    est.counts.push_back(values[i]);
    x.push_back(-std::log(scales[i]));
    y.push_back(log_values ? std::log(values[i]) : values[i]);
  }
  if (!est.excluded_scales.empty()) est.flags.emplace_back("saturated-excluded");
  if (x.size() < 3) {
    throw InsufficientScales(est.method + ": only " + std::to_string(x.size()) +
                             " usable scales (need 3); widen the scale range or add samples");
  }
  const LinearFit f = ols(x, y);
  est.slope = f.slope;
  est.stderr_ = f.stderr_;
  est.r2 = f.r2;
  if (!est.reliable()) est.flags.emplace_back("low-r2");
  return est;
}

DimEstimate box_dim_koranyi(const std::vector<HeisPoint>& cloud, const TileSystem& ts, int m_lo, int m_hi) {
  require(!cloud.empty(), "box_dim_koranyi needs a nonempty cloud");
  require(0 <= m_lo && m_lo <= m_hi, "invalid depth range");
  const std::size_t levels = static_cast<std::size_t>(m_hi - m_lo + 1);
  std::vector<std::vector<TileAddress>> hit(levels);
  std::size_t unresolved = 0;
  for (const auto& x : cloud) {
    if (x.dim() != ts.dim()) throw DimensionMismatch("cloud and tile system dimensions differ");
    const Resolution r = resolve(ts, x, m_hi + ts.n_max());
    if (r.empty()) {
      ++unresolved;
      continue;
    }
    for (std::size_t k = 0; k < levels; ++k) hit[k].push_back(atom_address(r, m_lo + static_cast<int>(k)));
  }
  std::vector<double> scales;
  std::vector<double> counts;
  std::vector<bool> keep;
  const double cap = static_cast<double>(cloud.size()) / 10.0;
  for (std::size_t k = 0; k < levels; ++k) {
    auto& v = hit[k];
    std::sort(v.begin(), v.end());
    const auto n = static_cast<double>(std::unique(v.begin(), v.end()) - v.begin());
    scales.push_back(std::pow(static_cast<double>(ts.base()), -(m_lo + static_cast<int>(k))));
    counts.push_back(n);
    keep.push_back(n <= cap || cloud.size() == 1);
  }
  auto est = fit_scaling(scales, counts, keep, true, "box-koranyi-tile-atoms");
  if (unresolved > 0) est.flags.emplace_back("unresolved-points");
  return est;
}

DimEstimate box_dim_euclidean(const std::vector<std::vector<double>>& cloud, int k_lo, int k_hi) {
  require(!cloud.empty(), "box_dim_euclidean needs a nonempty cloud");
  require(0 <= k_lo && k_lo <= k_hi && k_hi <= 40, "invalid dyadic range");
  const std::size_t dim = cloud.front().size();
  require(dim >= 1 && dim <= 2 * kMaxDim, "unsupported coordinate count");
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (const auto& p : cloud) {
    if (p.size() != dim) throw DimensionMismatch("points of different length in a cloud");
    for (std::size_t j = 0; j < dim; ++j) {
      require(std::isfinite(p[j]), "box_dim_euclidean needs finite coordinates");
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  double extent = 0.0;
  for (std::size_t j = 0; j < dim; ++j) extent = std::max(extent, hi[j] - lo[j]);
  if (extent <= 0.0) extent = 1.0;

  using Cell = std::array<std::int64_t, 2 * kMaxDim>;
  std::vector<double> scales;
  std::vector<double> counts;
  std::vector<bool> keep;
  std::vector<Cell> cells(cloud.size());
  const double cap = static_cast<double>(cloud.size()) / 10.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double side = std::ldexp(1.0, -k);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      Cell c{};
      for (std::size_t j = 0; j < dim; ++j) {
        c[j] = static_cast<std::int64_t>(std::floor((cloud[i][j] - lo[j]) / extent / side));
      }
      cells[i] = c;
    }
    std::sort(cells.begin(), cells.end());
    const auto n = static_cast<double>(std::unique(cells.begin(), cells.end()) - cells.begin());
    scales.push_back(side);
    counts.push_back(n);
    keep.push_back(n <= cap || cloud.size() == 1);
  }
  return fit_scaling(scales, counts, keep, true, "box-euclidean-dyadic");
}

DimEstimate box_dim_euclidean(const std::vector<CVec>& cloud, int k_lo, int k_hi) {
  std::vector<std::vector<double>> real;
  real.reserve(cloud.size());
  for (const auto& z : cloud) {
    std::vector<double> p;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      p.push_back(z[k].real());
      p.push_back(z[k].imag());
    }
    real.push_back(std::move(p));
  }
  return box_dim_euclidean(real, k_lo, k_hi);
}

DimEstimate entropy_dim(const PointMeasure& nu, const std::vector<double>& rhos) {
  require(nu.is_probability(), "entropy_dim needs a probability measure");
  std::vector<double> values;
  std::vector<bool> keep;
  for (double rho : rhos) {
    const double h = scale_entropy(nu, rho);
    values.push_back(h);
    keep.push_back(!entropy_saturated(nu, h) || nu.size() == 1);
  }
  return fit_scaling(rhos, values, keep, false,
                     nu.ambient() == Ambient::Heisenberg ? "entropy-koranyi" : "entropy-euclidean");
}

DimEstimate haar_entropy_dim(const TileSystem& ts, int m_lo, int m_hi, std::size_t queries, std::size_t probes,
                             std::uint64_t seed) {
  require(0 <= m_lo && m_lo <= m_hi, "invalid depth range");
  std::vector<double> rhos;
  std::vector<double> values;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double rho = std::pow(static_cast<double>(ts.base()), -m);
    rhos.push_back(rho);
    values.push_back(haar_tile_entropy(ts, rho, queries, probes, seed + static_cast<std::uint64_t>(m)));
  }
  return fit_scaling(rhos, values, std::vector<bool>(rhos.size(), true), false, "entropy-haar-probe");
}

}  // namespace heis
