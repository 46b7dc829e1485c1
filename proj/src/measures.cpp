#include "heis/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heis/rng.hpp"

namespace heis {

const char* to_string(Ambient a) { return a == Ambient::Heisenberg ? "heisenberg" : "plane"; }

// --- PointMeasure -------------------------------------------------------------------

PointMeasure::PointMeasure(Ambient ambient, int d) : ambient_(ambient), d_(d) { check_dim(d); }

PointMeasure::PointMeasure(Ambient ambient, std::vector<HeisPoint> points, std::vector<double> weights)
    : ambient_(ambient), d_(points.empty() ? 0 : points.front().dim()), points_(std::move(points)),
      weights_(std::move(weights)) {
  require(!points_.empty(), "use PointMeasure(ambient, d) for the zero measure");
  check_dim(d_);
  require(points_.size() == weights_.size(), "point and weight counts differ");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != d_) throw DimensionMismatch("measure atoms of different dimension");
    require(weights_[i] > 0.0 && std::isfinite(weights_[i]), "measure weights must be positive and finite");
    require(points_[i].finite(), "measure atoms must be finite");
    if (ambient_ == Ambient::Plane) points_[i].s = 0.0;
    total_ += weights_[i];
  }
}

PointMeasure PointMeasure::uniform(Ambient ambient, std::vector<HeisPoint> points) {
  require(!points.empty(), "uniform measure needs at least one atom");
  const double w = 1.0 / static_cast<double>(points.size());
  std::vector<double> weights(points.size(), w);
  return {ambient, std::move(points), std::move(weights)};
}

PointMeasure PointMeasure::dirac(Ambient ambient, HeisPoint p) {
  return {ambient, std::vector<HeisPoint>{std::move(p)}, std::vector<double>{1.0}};
}

PointMeasure PointMeasure::plane(const std::vector<CVec>& points) {
  std::vector<HeisPoint> pts;
  pts.reserve(points.size());
  for (const auto& u : points) pts.emplace_back(u, 0.0);
  return uniform(Ambient::Plane, std::move(pts));
}

bool PointMeasure::is_probability(double tol) const { return !empty() && std::abs(total_ - 1.0) <= tol; }

PointMeasure PointMeasure::normalized() const {
  if (empty()) throw ZeroMass("cannot normalize the zero measure");
  return scaled(1.0 / total_);
}

PointMeasure PointMeasure::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), "scale factor must be positive");
  if (empty()) return *this;
  std::vector<double> w(weights_);
  for (auto& x : w) x *= c;
  return {ambient_, points_, std::move(w)};
}

PointMeasure PointMeasure::combine(const std::vector<std::pair<double, const PointMeasure*>>& parts) {
  require(!parts.empty(), "combine needs at least one measure");
  std::vector<HeisPoint> pts;
  std::vector<double> w;
  const Ambient amb = parts.front().second->ambient();
  for (const auto& [a, m] : parts) {
    require(m->ambient() == amb, "cannot combine measures on different ambients");
    require(a > 0.0, "mixture coefficients must be positive");
    for (std::size_t i = 0; i < m->size(); ++i) {
      pts.push_back(m->points()[i]);
      w.push_back(a * m->weights()[i]);
    }
  }
  return {amb, std::move(pts), std::move(w)};
}

std::vector<CVec> PointMeasure::horizontal() const {
  std::vector<CVec> out;
  out.reserve(size());
  for (const auto& p : points_) out.push_back(p.u);
  return out;
}

double ambient_dist(Ambient a, const HeisPoint& x, const HeisPoint& y) {
  if (a == Ambient::Plane) return (x.u - y.u).norm();
  return koranyi_dist(x, y);
}

// --- BallIndex --------------------------------------------------------------------

std::size_t BallIndex::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto v : k.c) h = mix64(h ^ static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

BallIndex::BallIndex(const PointMeasure& mu, double rho) : mu_(&mu), rho_(rho) {
  require(rho > 0.0 && std::isfinite(rho), "ball radius must be positive");
  const int d = mu.dim();
  ncoord_ = 2 * d + (mu.ambient() == Ambient::Heisenberg ? 1 : 0);
  cell_u_ = rho;
  double umax = 0.0;
  for (const auto& p : mu.points()) umax = std::max(umax, p.u.norm());
  cell_s_ = 0.5 * rho * rho + umax * rho;
  cells_.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) cells_[cell_of(mu.points()[i])].push_back(static_cast<std::uint32_t>(i));
}

BallIndex::Key BallIndex::cell_of(const HeisPoint& p) const {
  Key k;
  for (int c = 0; c < 2 * mu_->dim(); ++c) {
    const double v = (c % 2 == 0) ? p.u[c / 2].real() : p.u[c / 2].imag();
    k.c[c] = static_cast<std::int64_t>(std::floor(v / cell_u_));
  }
  if (ncoord_ > 2 * mu_->dim()) k.c[ncoord_ - 1] = static_cast<std::int64_t>(std::floor(p.s / cell_s_));
  return k;
}

template <class F>
void BallIndex::visit(const HeisPoint& x, F&& f) const {
  if (x.dim() != mu_->dim()) throw DimensionMismatch("ball query dimension differs from the measure");
  const int nu = 2 * mu_->dim();
  std::array<std::int64_t, 2 * kMaxDim + 1> lo{}, hi{};
  for (int c = 0; c < nu; ++c) {
    const double v = (c % 2 == 0) ? x.u[c / 2].real() : x.u[c / 2].imag();
    lo[c] = static_cast<std::int64_t>(std::floor((v - rho_) / cell_u_));
    hi[c] = static_cast<std::int64_t>(std::floor((v + rho_) / cell_u_));
  }
  if (ncoord_ > nu) {
    // |s_y - s_x| <= rho^2/2 + |u_x| rho inside the Koranyi ball.
    const double w = 0.5 * rho_ * rho_ + x.u.norm() * rho_;
    lo[nu] = static_cast<std::int64_t>(std::floor((x.s - w) / cell_s_));
    hi[nu] = static_cast<std::int64_t>(std::floor((x.s + w) / cell_s_));
  }
  Key k;
  for (int c = 0; c < ncoord_; ++c) k.c[c] = lo[c];
  const Ambient amb = mu_->ambient();
  while (true) {
    if (auto it = cells_.find(k); it != cells_.end()) {
      for (auto i : it->second) {
        if (ambient_dist(amb, x, mu_->points()[i]) <= rho_) f(i);
      }
    }
    int c = 0;
    while (c < ncoord_ && k.c[c] == hi[c]) {
      k.c[c] = lo[c];
      ++c;
    }
    if (c == ncoord_) break;
    ++k.c[c];
  }
}

double BallIndex::mass(const HeisPoint& x) const {
  double m = 0.0;
  visit(x, [&](std::uint32_t i) { m += mu_->weights()[i]; });
  return m;
}

std::size_t BallIndex::count(const HeisPoint& x) const {
  std::size_t n = 0;
  visit(x, [&](std::uint32_t) { ++n; });
  return n;
}

// --- conditioning and magnification ------------------------------------------------

namespace {

void require_heisenberg(const PointMeasure& mu) {
  require(mu.ambient() == Ambient::Heisenberg, "operation needs a measure on the Heisenberg group");
}

}  // namespace

PointMeasure normalize_star(const PointMeasure& mu, const TileSystem& ts) {
  require_heisenberg(mu);
  if (mu.empty()) throw ZeroMass("no mass on the unit tile");
  if (mu.dim() != ts.dim()) throw DimensionMismatch("measure and tile system dimensions differ");
  double on_tile = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    try {
      if (atom_address(ts, mu.points()[i], 0).base.is_zero()) on_tile += mu.weights()[i];
    } catch (const BoundaryAmbiguous&) {
    }
  }
  if (on_tile <= 0.0) throw ZeroMass("no mass on the unit tile");
  return mu.scaled(1.0 / on_tile);
}

PointMeasure condition_on_atom(const PointMeasure& mu, const TileSystem& ts, const TileAddress& addr) {
  require_heisenberg(mu);
  if (mu.dim() != ts.dim()) throw DimensionMismatch("measure and tile system dimensions differ");
  std::vector<HeisPoint> pts;
  std::vector<double> w;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    try {
      if (atom_address(ts, mu.points()[i], addr.depth()) == addr) {
        pts.push_back(mu.points()[i]);
        w.push_back(mu.weights()[i]);
      }
    } catch (const BoundaryAmbiguous&) {
    }
  }
  if (pts.empty()) throw ZeroMass("measure gives zero mass to atom " + to_string(addr));
  return PointMeasure(Ambient::Heisenberg, std::move(pts), std::move(w)).normalized();
}

PointMeasure rescale_to_unit(const PointMeasure& mu_q, const TileSystem& ts, const TileAddress& addr) {
  require_heisenberg(mu_q);
  const HeisSimilarity tq = atom_renormalization(ts, addr);
  return pushforward([&](const HeisPoint& p) { return tq.apply(p); }, mu_q);
}

Magnified magnify(const PointMeasure& mu, const HeisPoint& x, const TileSystem& ts) {
  const TileAddress q1 = atom_address(ts, x, 1);
  PointMeasure m = rescale_to_unit(condition_on_atom(mu, ts, q1), ts, q1);
  HeisPoint y = atom_renormalization(ts, q1).apply(x);
  return {std::move(m), std::move(y), q1};
}

// --- entropy ------------------------------------------------------------------------

double scale_entropy(const PointMeasure& nu, double rho) {
  require(nu.is_probability(), "scale_entropy needs a probability measure (total " + std::to_string(nu.total()) + ")");
  const BallIndex index(nu, rho);
  double h = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) h -= nu.weights()[i] * std::log(index.mass(nu.points()[i]));
  return std::max(h, 0.0);
}

bool entropy_saturated(const PointMeasure& nu, double h) {
  return h >= std::log(static_cast<double>(nu.size()) / 10.0);
}

Pushforward pushforward(const ChainProjector& p, const PointMeasure& nu) {
  if (nu.dim() != p.dim()) throw DimensionMismatch("projector and measure dimensions differ");
  Pushforward out{PointMeasure(Ambient::Plane, p.dim())};
  std::vector<HeisPoint> pts;
  std::vector<double> w;
  pts.reserve(nu.size());
  w.reserve(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const ProjectOutcome o = try_project(p, nu.points()[i]);
    if (o.status == ProjectStatus::Ok) {
      pts.emplace_back(o.value, 0.0);
      w.push_back(nu.weights()[i]);
      continue;
    }
    if (o.status == ProjectStatus::Basepoint) ++out.basepoint_atoms;
    ++out.singular_atoms;
    out.singular_mass += nu.weights()[i];
  }
  if (nu.total() > 0.0 && out.singular_mass > 0.01 * nu.total()) {
    throw std::runtime_error("pushforward: " + std::to_string(out.singular_atoms) +
                             " atoms carrying more than 1% of the mass are chart-singular");
  }
  if (!pts.empty()) out.measure = PointMeasure(Ambient::Plane, std::move(pts), std::move(w));
  return out;
}

PointMeasure pushforward(const std::function<HeisPoint(const HeisPoint&)>& f, const PointMeasure& nu) {
  if (nu.empty()) return nu;
  std::vector<HeisPoint> pts;
  pts.reserve(nu.size());
  for (const auto& p : nu.points()) pts.push_back(f(p));
  return {nu.ambient(), std::move(pts), nu.weights()};
}

// --- conditional sources -------------------------------------------------------------

PointMeasure EmpiricalSource::magnified(const TileSystem& ts, const TileAddress& addr, std::size_t,
                                        std::uint64_t) const {
  return rescale_to_unit(condition_on_atom(mu_, ts, addr), ts, addr);
}

PointMeasure HaarTileSource::magnified(const TileSystem& ts, const TileAddress& addr, std::size_t n,
                                       std::uint64_t seed) const {
  require(n >= 1, "need at least one sample");
  std::vector<HeisPoint> in_atom;
  in_atom.reserve(n);
  for (const auto& t : tile_sample(ts, n, seed)) in_atom.push_back(address_to_point(ts, addr, t));
  return rescale_to_unit(PointMeasure::uniform(Ambient::Heisenberg, std::move(in_atom)), ts, addr);
}

LeaReport local_entropy_average(const ConditionalSource& source, const HeisPoint& x, int q, int n_steps,
                                const TileSystem& ts, const ChainProjector& projector,
                                std::size_t samples_per_step, std::uint64_t seed) {
  require(q >= 1 && n_steps >= 1, "local entropy average needs q >= 1 and N >= 1");
  LeaReport rep;
  rep.q = q;
  rep.n_requested = n_steps;
  const double rho = std::pow(static_cast<double>(ts.base()), -q);
  double sum = 0.0;
  for (int n = 0; n < n_steps; ++n) {
    try {
      const TileAddress atom = atom_address(ts, x, n * q);
      const PointMeasure mq = source.magnified(ts, atom, samples_per_step, mix64(seed + static_cast<std::uint64_t>(n)));
      const Pushforward pf = pushforward(projector, mq);
      const double h = scale_entropy(pf.measure.normalized(), rho);
      if (entropy_saturated(pf.measure, h)) ++rep.saturated_steps;
      rep.entropies.push_back(h);
      sum += h;
      ++rep.n_achieved;
    } catch (const ZeroMass&) {
      rep.partial = true;
      break;
    } catch (const BoundaryAmbiguous&) {
      rep.partial = true;
      break;
    }
  }
  if (rep.n_achieved > 0) {
    rep.value = sum / (rep.n_achieved * q * std::log(static_cast<double>(ts.base())));
  }
  return rep;
}

double haar_tile_entropy(const TileSystem& ts, double rho, std::size_t queries, std::size_t probes,
                         std::uint64_t seed) {
  require(rho > 0.0 && queries >= 1 && probes >= 1, "invalid probe estimator parameters");
  const int d = ts.dim();
  const LatticePoint origin = LatticePoint::zero(d);
  const double ball = koranyi_ball_volume(d) * std::pow(rho, 2 * d + 2);
  const auto centres = tile_sample(ts, queries, seed);
  double h = 0.0;
  for (std::size_t i = 0; i < queries; ++i) {
    CounterRng rng(seed ^ 0x5bd1e995ULL, i);
    std::size_t hits = 1;  // the centre itself lies in T
    for (std::size_t j = 0; j < probes; ++j) {
      HeisPoint q = HeisPoint::identity(d);
      do {
        for (int k = 0; k < d; ++k) q.u[k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        q.s = rng.uniform(-0.5, 0.5);
      } while (koranyi_gauge(q) > 1.0);
      if (tile_contains(ts, group_mul(centres[i], dilate(rho, q)), origin)) ++hits;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(probes + 1);
    h -= std::log(ball * frac);
  }
  return std::max(h / static_cast<double>(queries), 0.0);
}

}  // namespace heis
