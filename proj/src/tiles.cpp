#include "heis/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "heis/rng.hpp"

namespace heis {

// --- lattice points and addresses -----------------------------------------------

LatticePoint LatticePoint::zero(int d) {
  LatticePoint g;
  g.re.assign(d, 0);
  g.im.assign(d, 0);
  return g;
}

HeisPoint LatticePoint::point() const {
  CVec u(dim());
  for (int k = 0; k < dim(); ++k) u[k] = cplx(static_cast<double>(re[k]), static_cast<double>(im[k]));
  return {u, static_cast<double>(s)};
}

bool LatticePoint::is_zero() const {
  return s == 0 && std::all_of(re.begin(), re.end(), [](auto v) { return v == 0; }) &&
         std::all_of(im.begin(), im.end(), [](auto v) { return v == 0; });
}

TileAddress TileAddress::prefix(int m) const {
  require(m >= 0 && m <= depth(), "address prefix longer than address");
  return {base, std::vector<std::uint32_t>(digits.begin(), digits.begin() + m)};
}

bool TileAddress::extends(const TileAddress& shorter) const {
  return shorter.depth() <= depth() && prefix(shorter.depth()) == shorter;
}

std::string to_string(const TileAddress& a) {
  std::string out = "(";
  for (int k = 0; k < a.base.dim(); ++k) {
    out += std::to_string(a.base.re[k]) + (a.base.im[k] < 0 ? "" : "+") + std::to_string(a.base.im[k]) + "i,";
  }
  out += std::to_string(a.base.s) + ")";
  for (auto dgt : a.digits) out += "." + std::to_string(dgt);
  return out;
}

int Resolution::claims() const {
  std::set<LatticePoint> bases;
  for (const auto& a : survivors) bases.insert(a.base);
  return static_cast<int>(bases.size());
}

bool Resolution::ambiguous_at(int m) const {
  if (survivors.empty()) return true;
  const TileAddress first = survivors.front().prefix(m);
  return std::any_of(survivors.begin() + 1, survivors.end(),
                     [&](const TileAddress& a) { return a.prefix(m) != first; });
}

// --- lattice enumeration --------------------------------------------------------

namespace {

/// Calls f(g) for every lattice point g with |g^-1 w| <= rho, horizontal components
/// restricted to [-ulim, ulim] and vertical to [-slim, slim] when the limits are >= 0.
template <class F>
void lattice_near(const HeisPoint& w, double rho, std::int64_t ulim, std::int64_t slim, F&& f) {
  const int d = w.dim();
  const int nc = 2 * d;
  std::vector<std::int64_t> lo(nc), hi(nc), cur(nc);
  for (int c = 0; c < nc; ++c) {
    const double centre = (c % 2 == 0) ? w.u[c / 2].real() : w.u[c / 2].imag();
    lo[c] = static_cast<std::int64_t>(std::ceil(centre - rho));
    hi[c] = static_cast<std::int64_t>(std::floor(centre + rho));
    if (ulim >= 0) {
      lo[c] = std::max(lo[c], -ulim);
      hi[c] = std::min(hi[c], ulim);
    }
    if (lo[c] > hi[c]) return;
    cur[c] = lo[c];
  }
  const double rho4 = rho * rho * rho * rho;
  LatticePoint g = LatticePoint::zero(d);
  CVec ug(d);
  while (true) {
    for (int k = 0; k < d; ++k) ug[k] = cplx(static_cast<double>(cur[2 * k]), static_cast<double>(cur[2 * k + 1]));
    const double n2 = (w.u - ug).squaredNorm();
    if (n2 * n2 <= rho4) {
      const double half = 0.5 * std::sqrt(rho4 - n2 * n2);
      const double sigma = w.s + omega(ug, w.u);
      std::int64_t s_lo = static_cast<std::int64_t>(std::ceil(sigma - half));
      std::int64_t s_hi = static_cast<std::int64_t>(std::floor(sigma + half));
      if (slim >= 0) {
        s_lo = std::max(s_lo, -slim);
        s_hi = std::min(s_hi, slim);
      }
      for (int k = 0; k < d; ++k) {
        g.re[k] = cur[2 * k];
        g.im[k] = cur[2 * k + 1];
      }
      for (std::int64_t s = s_lo; s <= s_hi; ++s) {
        g.s = s;
        f(g);
      }
    }
    int c = 0;
    while (c < nc && cur[c] == hi[c]) {
      cur[c] = lo[c];
      ++c;
    }
    if (c == nc) break;
    ++cur[c];
  }
}

}  // namespace

// --- tile system ------------------------------------------------------------------

TileSystem::TileSystem(int d, int b, int n_max, double eps) : d_(d), b_(b), n_max_(n_max), eps_(eps) {
  check_dim(d);
  if (b < 2 * d + 1 || b % 2 == 0) {
    throw std::invalid_argument("tile base must be odd and at least 2d+1 (d=" + std::to_string(d) +
                                ", b=" + std::to_string(b) + ")");
  }
  require(n_max >= 1 && n_max <= 40, "membership depth must lie in [1, 40]");
  require(eps >= 0.0 && eps < 1e-2, "boundary tolerance must lie in [0, 1e-2)");
  const std::int64_t hu = (b - 1) / 2;
  const std::int64_t hs = (static_cast<std::int64_t>(b) * b - 1) / 2;
  std::size_t count = 1;
  for (int k = 0; k < 2 * d; ++k) count *= static_cast<std::size_t>(b);
  count *= static_cast<std::size_t>(b) * b;
  require(count <= 50'000'000, "digit set too large");
  digits_.reserve(count);
  digit_points_.reserve(count);
  // Mixed radix: the first horizontal component is most significant, s least.
  for (std::size_t idx = 0; idx < count; ++idx) {
    LatticePoint g = LatticePoint::zero(d);
    std::size_t rest = idx;
    g.s = static_cast<std::int64_t>(rest % (static_cast<std::size_t>(b) * b)) - hs;
    rest /= static_cast<std::size_t>(b) * b;
    for (int c = 2 * d - 1; c >= 0; --c) {
      const std::int64_t v = static_cast<std::int64_t>(rest % static_cast<std::size_t>(b)) - hu;
      rest /= static_cast<std::size_t>(b);
      if (c % 2 == 0) {
        g.re[c / 2] = v;
      } else {
        g.im[c / 2] = v;
      }
    }
    digit_points_.push_back(g.point());
    digits_.push_back(std::move(g));
  }
  if (!residue_bijection()) throw std::invalid_argument("digit set is not a complete residue system");
  double dmax = 0.0;
  for (const auto& p : digit_points_) dmax = std::max(dmax, koranyi_gauge(p));
  radius_crude_ = dmax / (b - 1);
  refine_radius();
}

std::int64_t TileSystem::digit_index(const LatticePoint& g) const {
  if (g.dim() != d_) return -1;
  const std::int64_t hu = (b_ - 1) / 2;
  const std::int64_t hs = (static_cast<std::int64_t>(b_) * b_ - 1) / 2;
  std::int64_t idx = 0;
  for (int c = 0; c < 2 * d_; ++c) {
    const std::int64_t v = (c % 2 == 0) ? g.re[c / 2] : g.im[c / 2];
    if (v < -hu || v > hu) return -1;
    idx = idx * b_ + (v + hu);
  }
  if (g.s < -hs || g.s > hs) return -1;
  return idx * (static_cast<std::int64_t>(b_) * b_) + (g.s + hs);
}

bool TileSystem::residue_bijection() const {
  const std::int64_t bb = static_cast<std::int64_t>(b_) * b_;
  auto mod = [](std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; };
  std::vector<char> seen(digits_.size(), 0);
  for (const auto& g : digits_) {
    std::size_t key = 0;
    for (int k = 0; k < d_; ++k) {
      key = key * b_ + static_cast<std::size_t>(mod(g.re[k], b_));
      key = key * b_ + static_cast<std::size_t>(mod(g.im[k], b_));
    }
    key = key * bb + static_cast<std::size_t>(mod(g.s, bb));
    if (key >= seen.size() || seen[key]) return false;
    seen[key] = 1;
  }
  return true;
}

void TileSystem::refine_radius() {
  // Best-first search over cylinders f_w(T): |f_w(t)| <= |f_w(0)| + b^-k R_crude.
  struct Node {
    HeisPoint a;
    int depth;
    double upper;
    bool operator<(const Node& o) const { return upper < o.upper; }
  };
  const double slack = 1e-12;
  const double tol = 1e-3 * radius_crude_;
  const std::size_t budget = 4'000'000;
  std::priority_queue<Node> queue;
  queue.push({HeisPoint::identity(d_), 0, radius_crude_ + slack});
  double best = 0.0;
  std::size_t pushed = 0;
  while (!queue.empty()) {
    const Node top = queue.top();
    if (top.upper - best <= tol || pushed > budget) break;
    queue.pop();
    const double scale = std::pow(static_cast<double>(b_), -(top.depth + 1));
    for (const auto& dp : digit_points_) {
      HeisPoint a = group_mul(top.a, dilate(scale, dp));
      const double g = koranyi_gauge(a);
      best = std::max(best, g);
      const double upper = g + scale * radius_crude_ + slack;
      if (upper > best) {
        queue.push({std::move(a), top.depth + 1, upper});
        ++pushed;
      }
    }
  }
  radius_lower_ = best;
  radius_ = queue.empty() ? best + slack : std::max(best, queue.top().upper);
}

// --- addressing -----------------------------------------------------------------

HeisPoint address_to_point(const TileSystem& ts, const TileAddress& addr, const HeisPoint& tail) {
  if (addr.base.dim() != ts.dim() || tail.dim() != ts.dim()) {
    throw DimensionMismatch("address, tail and tile system dimensions differ");
  }
  HeisPoint a = addr.base.point();
  double scale = 1.0;
  for (auto idx : addr.digits) {
    require(idx < ts.digit_count(), "digit index out of range");
    scale /= ts.base();
    a = group_mul(a, dilate(scale, ts.digit_point(idx)));
  }
  return group_mul(a, dilate(scale, tail));
}

Resolution resolve(const TileSystem& ts, const HeisPoint& x, int depth) {
  if (x.dim() != ts.dim()) throw DimensionMismatch("point and tile system dimensions differ");
  require(x.finite(), "cannot resolve a non-finite point");
  if (depth < 0) depth = ts.n_max();
  const double r = ts.radius();
  const std::int64_t hu = (ts.base() - 1) / 2;
  const std::int64_t hs = (static_cast<std::int64_t>(ts.base()) * ts.base() - 1) / 2;

  struct Cand {
    TileAddress addr;
    HeisPoint z;
  };
  std::vector<Cand> cur;
  lattice_near(x, r + ts.eps(), -1, -1, [&](const LatticePoint& g) {
    HeisPoint z = group_mul(inverse(g.point()), x);
    if (koranyi_gauge(z) <= r + ts.eps()) cur.push_back({TileAddress{g, {}}, std::move(z)});
  });

  double tol_scale = 1.0;
  for (int k = 1; k <= depth && !cur.empty(); ++k) {
    // Tolerance is eps in the original metric down to depth n_max, then frozen in residual units.
    if (k <= ts.n_max()) tol_scale *= ts.base();
    const double rho = r + ts.eps() * tol_scale;
    std::vector<Cand> next;
    for (const auto& c : cur) {
      const HeisPoint w = dilate(static_cast<double>(ts.base()), c.z);
      lattice_near(w, rho, hu, hs, [&](const LatticePoint& g) {
        HeisPoint z = group_mul(inverse(g.point()), w);
        if (koranyi_gauge(z) > rho) return;
        Cand n{c.addr, std::move(z)};
        n.addr.digits.push_back(static_cast<std::uint32_t>(ts.digit_index(g)));
        next.push_back(std::move(n));
      });
    }
    if (next.empty()) {
      std::vector<TileAddress> deepest;
      for (auto& c : cur) deepest.push_back(std::move(c.addr));
      std::sort(deepest.begin(), deepest.end());
      throw BoundaryAmbiguous("no atom at depth " + std::to_string(k) + " contains the point", std::move(deepest));
    }
    cur = std::move(next);
  }

  std::sort(cur.begin(), cur.end(), [](const Cand& a, const Cand& b) { return a.addr < b.addr; });
  Resolution res;
  for (auto& c : cur) {
    res.residuals.push_back(koranyi_gauge(c.z));
    res.survivors.push_back(std::move(c.addr));
  }
  return res;
}

TileAddress atom_address(const Resolution& r, int m) {
  if (r.survivors.empty()) throw BoundaryAmbiguous("no lattice translate claims the point", {});
  require(m >= 0 && m <= r.survivors.front().depth(), "requested depth exceeds the resolution depth");
  return r.survivors.front().prefix(m);
}

TileAddress atom_address(const TileSystem& ts, const HeisPoint& x, int m) {
  require(m >= 0, "atom depth must be nonnegative");
  return atom_address(resolve(ts, x, m + ts.n_max()), m);
}

HeisSimilarity atom_renormalization(const TileSystem& ts, const TileAddress& addr) {
  const int d = ts.dim();
  const HeisPoint a0 = address_to_point(ts, addr, HeisPoint::identity(d));
  const double ratio = std::pow(static_cast<double>(ts.base()), addr.depth());
  return {CMat::Identity(d, d), ratio, dilate(ratio, inverse(a0))};
}

bool tile_contains(const TileSystem& ts, const HeisPoint& x, const LatticePoint& base) {
  try {
    const Resolution r = resolve(ts, x);
    return std::any_of(r.survivors.begin(), r.survivors.end(),
                       [&](const TileAddress& a) { return a.base == base; });
  } catch (const BoundaryAmbiguous&) {
    return false;
  }
}

TileAddress random_address(const TileSystem& ts, int m, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  TileAddress a{LatticePoint::zero(ts.dim()), {}};
  for (int k = 0; k < m; ++k) a.digits.push_back(static_cast<std::uint32_t>(rng.below(ts.digit_count())));
  return a;
}

std::vector<HeisPoint> tile_sample(const TileSystem& ts, std::size_t n, std::uint64_t seed) {
  std::vector<HeisPoint> out;
  out.reserve(n);
  const double inv_b = 1.0 / ts.base();
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, i);
    HeisPoint a = HeisPoint::identity(ts.dim());
    double scale = 1.0;
    for (int k = 0; k < ts.n_max(); ++k) {
      scale *= inv_b;
      a = group_mul(a, dilate(scale, ts.digit_point(static_cast<std::uint32_t>(rng.below(ts.digit_count())))));
    }
    out.push_back(std::move(a));
  }
  return out;
}

// --- audit ------------------------------------------------------------------------

double koranyi_ball_volume(int d) {
  check_dim(d);
  const double beta = std::tgamma(0.5 * d) * std::tgamma(1.5) / std::tgamma(0.5 * d + 1.5);
  const double sphere = 2.0 * std::pow(std::numbers::pi, d) / std::tgamma(static_cast<double>(d));
  return 0.25 * sphere * beta;
}

TilingAudit tiling_audit(const TileSystem& ts, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "tiling audit needs at least one sample");
  const int d = ts.dim();
  const LatticePoint origin = LatticePoint::zero(d);
  TilingAudit out;
  out.samples = n;
  out.radius = ts.radius();

  auto claims_of = [&](const HeisPoint& p) {
    try {
      return resolve(ts, p).claims();
    } catch (const BoundaryAmbiguous&) {
      return 0;
    }
  };

  // Unique membership on a fixed box.
  for (const auto& p : haar_sample(HeisBox::cube(d, -1.0, 1.0), n, seed)) {
    const int c = claims_of(p);
    if (c == 1) {
      ++out.unique;
    } else if (c == 0) {
      ++out.unclaimed;
    } else {
      ++out.multiple;
    }
  }
  out.unique_rate = static_cast<double>(out.unique) / static_cast<double>(n);

  // Mean claim count over a fundamental domain of the lattice.
  double claim_sum = 0.0;
  for (const auto& p : haar_sample(HeisBox::cube(d, -0.5, 0.5), n, seed + 1)) claim_sum += claims_of(p);
  out.volume_fundamental = claim_sum / static_cast<double>(n);

  // Direct volume over a box containing T; the closest non-member bounds the inradius at 0.
  const double r = ts.radius();
  HeisBox box = HeisBox::cube(d, -r, r);
  box.lo.back() = -0.5 * r * r;
  box.hi.back() = 0.5 * r * r;
  std::size_t inside = 0;
  double nearest_outside = r;
  for (const auto& p : haar_sample(box, n, seed + 2)) {
    if (tile_contains(ts, p, origin)) {
      ++inside;
    } else {
      nearest_outside = std::min(nearest_outside, koranyi_gauge(p));
    }
  }
  const double frac = static_cast<double>(inside) / static_cast<double>(n);
  out.volume = frac * box.volume();
  out.volume_stderr = std::sqrt(frac * (1.0 - frac) / static_cast<double>(n)) * box.volume();

  // Comparability constants on random atoms.
  double c_outer = 0.0;
  double c_inner = 0.9 * nearest_outside;
  const auto tails = tile_sample(ts, 200, seed + 3);
  for (int i = 0; i < 24; ++i) {
    const int m = 1 + i % 3;
    const TileAddress addr = random_address(ts, m, seed + 4, static_cast<std::uint64_t>(i));
    const HeisPoint centre = address_to_point(ts, addr, HeisPoint::identity(d));
    const double bm = std::pow(static_cast<double>(ts.base()), m);
    for (const auto& t : tails) {
      c_outer = std::max(c_outer, bm * koranyi_dist(centre, address_to_point(ts, addr, t)));
    }
    // Probe the inner ball around the centre.
    CounterRng rng(seed + 5, static_cast<std::uint64_t>(i));
    for (int j = 0; j < 100; ++j) {
      HeisPoint q = HeisPoint::identity(d);
      do {
        for (int k = 0; k < d; ++k) q.u[k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        q.s = rng.uniform(-0.5, 0.5);
      } while (koranyi_gauge(q) > 1.0);
      const HeisPoint p = group_mul(centre, dilate(c_inner / bm, q));
      try {
        if (atom_address(ts, p, m) != addr) c_inner = std::min(c_inner, 0.9 * bm * koranyi_dist(centre, p));
      } catch (const BoundaryAmbiguous&) {
        c_inner = std::min(c_inner, 0.9 * bm * koranyi_dist(centre, p));
      }
    }
  }
  out.c_outer = c_outer;
  out.c_inner = c_inner;
  return out;
}

}  // namespace heis
