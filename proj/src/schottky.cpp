#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "heis/generators.hpp"
#include "heis/rng.hpp"

namespace heis {

SchottkyGenerators::SchottkyGenerators(std::vector<BoundaryIsometry> generators, std::vector<BoundaryPoint> bases,
                                       int max_len)
    : gens(std::move(generators)), base_points(std::move(bases)), max_word_len(max_len) {
  require(!gens.empty(), "a Schottky group needs at least one generator");
  require(!base_points.empty(), "a Schottky group needs at least one base point");
  require(max_len >= 1, "maximum word length must be positive");
  const int d = gens.front().dim();
  for (const auto& g : gens) {
    if (g.dim() != d) throw DimensionMismatch("Schottky generators of different dimension");
    require(g.form_defect() <= BoundaryIsometry::kFormTol, "Schottky generator does not preserve the form");
  }
  for (const auto& x : base_points) {
    if (x.dim() != d) throw DimensionMismatch("base point dimension differs from the generators");
  }
  for (const auto& g : gens) {
    letters_.push_back(g);
    letters_.push_back(g.inverse());
  }
}

std::size_t reduced_word_count(std::size_t k, int length) {
  require(k >= 1 && length >= 1, "reduced_word_count needs k >= 1 and length >= 1");
  std::size_t n = 2 * k;
  for (int i = 1; i < length; ++i) n *= 2 * k - 1;
  return n;
}

namespace {

constexpr std::size_t kNoLetter = std::numeric_limits<std::size_t>::max();

bool allowed(std::size_t next, std::size_t prev) {
  return prev == kNoLetter || next != SchottkyGenerators::inverse_letter(prev);
}

}  // namespace

std::vector<BoundaryPoint> schottky_limit_sample(const SchottkyGenerators& sg, int word_len) {
  require(word_len >= 1, "word length must be positive");
  const double total = static_cast<double>(reduced_word_count(sg.gens.size(), word_len)) *
                       static_cast<double>(sg.base_points.size());
  if (total > 5e7) throw BudgetExceeded("Schottky sample would hold " + std::to_string(total) + " points");
  std::vector<BoundaryPoint> out;
  out.reserve(static_cast<std::size_t>(total));
  // Innermost letter first; each new letter is applied on the left.
  auto rec = [&](auto&& self, const BoundaryPoint& p, int level, std::size_t prev) -> void {
    if (level == word_len) {
      out.push_back(p);
      return;
    }
    for (std::size_t a = 0; a < sg.letters(); ++a) {
      if (!allowed(a, prev)) continue;
      self(self, sg.letter(a).apply(p), level + 1, a);
    }
  };
  for (const auto& x : sg.base_points) rec(rec, x, 0, kNoLetter);
  return out;
}

SchottkyConvergence schottky_convergence(const SchottkyGenerators& sg, int max_len) {
  require(max_len >= 2, "convergence audit needs at least two levels");
  SchottkyConvergence out;
  out.level_gap.assign(static_cast<std::size_t>(max_len), 0.0);
  // Track (w a x, w x) as w grows on the left.
  auto rec = [&](auto&& self, const BoundaryPoint& p, const BoundaryPoint& q, int level, std::size_t prev) -> void {
    auto& gap = out.level_gap[static_cast<std::size_t>(level - 1)];
    gap = std::max(gap, visual_metric(p, q));
    if (level == max_len) return;
    for (std::size_t a = 0; a < sg.letters(); ++a) {
      if (!allowed(a, prev)) continue;
      self(self, sg.letter(a).apply(p), sg.letter(a).apply(q), level + 1, a);
    }
  };
  for (const auto& x : sg.base_points) {
    for (std::size_t a = 0; a < sg.letters(); ++a) rec(rec, sg.letter(a).apply(x), x, 1, a);
  }
  double log_sum = 0.0;
  int used = 0;
  for (std::size_t i = 0; i + 1 < out.level_gap.size(); ++i) {
    const double r = out.level_gap[i] > 0.0 ? out.level_gap[i + 1] / out.level_gap[i] : 0.0;
    out.ratios.push_back(r);
    if (r > 0.0) {
      log_sum += std::log(r);
      ++used;
    }
  }
  out.mean_ratio = used > 0 ? std::exp(log_sum / used) : 0.0;
  out.warning = out.mean_ratio >= 0.98;
  return out;
}

BoundaryPoint attracting_fixed_point(const BoundaryIsometry& g) {
  const Eigen::MatrixXcd m = g.matrix();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  require(es.info() == Eigen::Success, "eigen decomposition failed");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[best])) best = i;
  }
  const double top = std::abs(es.eigenvalues()[best]);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (i != best && std::abs(es.eigenvalues()[i]) > top * (1.0 - 1e-9)) {
      throw std::invalid_argument("isometry is not loxodromic: no dominant eigenvalue");
    }
  }
  BVec v = es.eigenvectors().col(best);
  // Remove the tiny non-null part left by the eigen solver.
  const double res = std::abs(hermitian_form(v, v)) / v.squaredNorm();
  if (res > BoundaryPoint::kNullTol) throw std::invalid_argument("dominant eigenvector is not null");
  return BoundaryPoint(v);
}

IsometricSphere isometric_sphere(const BoundaryIsometry& g) {
  const int d = g.dim();
  const BVec q = g.inverse().matrix().col(0);
  const double mu = std::abs(q[d + 1]);
  if (mu <= 1e-12 * q.norm()) throw std::invalid_argument("isometry fixes infinity: no isometric sphere");
  return {phi_inverse(BoundaryPoint(q)), std::sqrt(2.0 / mu)};
}

PingPongReport ping_pong_audit(const SchottkyGenerators& sg, std::size_t probes, std::uint64_t seed) {
  PingPongReport rep;
  const std::size_t L = sg.letters();
  for (std::size_t a = 0; a < L; ++a) {
    rep.attracting.push_back(attracting_fixed_point(sg.letter(a)));
    rep.spheres.push_back(isometric_sphere(sg.letter(a)));
  }
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) {
      const auto& sa = rep.spheres[a];
      const auto& sb = rep.spheres[b];
      rep.min_gap = std::min(rep.min_gap, koranyi_dist(sa.centre, sb.centre) - sa.radius - sb.radius);
    }
  }
  double reach = 0.0;
  for (const auto& sp : rep.spheres) reach = std::max(reach, koranyi_gauge(sp.centre) + sp.radius);

  const int d = sg.dim();
  for (std::size_t i = 0; i < probes; ++i) {
    CounterRng rng(seed, i);
    // Half the probes hug a sphere, the rest spread over a wide region.
    HeisPoint h = HeisPoint::identity(d);
    if (i % 2 == 0) {
      const auto& sp = rep.spheres[rng.below(L)];
      for (int k = 0; k < d; ++k) h.u[k] = cplx(rng.normal(), rng.normal());
      h.s = rng.normal();
      const double g = koranyi_gauge(h);
      h = group_mul(sp.centre, dilate(sp.radius * rng.uniform(0.9, 1.3) / g, h));
    } else {
      const double scale = reach * std::exp(rng.uniform(-3.0, 3.0));
      for (int k = 0; k < d; ++k) h.u[k] = cplx(rng.normal(), rng.normal()) * scale;
      h.s = rng.normal() * scale * scale;
    }
    const BoundaryPoint y = phi(h);
    ++rep.probes;
    for (std::size_t a = 0; a < L; ++a) {
      const auto& own = rep.spheres[a];
      if (koranyi_dist(h, own.centre) <= own.radius) continue;
      const auto& target = rep.spheres[SchottkyGenerators::inverse_letter(a)];
      const BoundaryPoint gy = sg.letter(a).apply(y);
      if (gy.is_infinity() || koranyi_dist(phi_inverse(gy), target.centre) > target.radius * (1.0 + 1e-9)) {
        ++rep.violations;
      }
    }
  }
  rep.ok = rep.violations == 0 && rep.min_gap > 0.0;
  return rep;
}

InvarianceReport schottky_invariance(const SchottkyGenerators& sg, const std::vector<BoundaryPoint>& cloud,
                                     int word_len, std::size_t tested, std::uint64_t seed) {
  require(!cloud.empty(), "invariance audit needs a nonempty cloud");
  InvarianceReport rep;
  const auto conv = schottky_convergence(sg, word_len + 1);
  rep.resolution = std::max(conv.level_gap[static_cast<std::size_t>(word_len - 1)],
                            conv.level_gap[static_cast<std::size_t>(word_len)]);
  std::vector<BVec> unit;
  unit.reserve(cloud.size());
  for (const auto& y : cloud) unit.push_back(y.v() / y.v().norm());
  const BMat J = form_matrix(sg.dim());
  CounterRng rng(seed, 0);
  rep.tested = std::min(tested, cloud.size());
  for (std::size_t t = 0; t < rep.tested; ++t) {
    const auto& x = cloud[rng.below(cloud.size())];
    for (std::size_t a = 0; a < sg.letters(); a += 2) {
      const BoundaryPoint gx = sg.letter(a).apply(x);
      const BVec w = J * (gx.v() / gx.v().norm());
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : unit) best = std::min(best, std::abs(c.dot(w)));
      rep.max_distance = std::max(rep.max_distance, std::sqrt(best));
    }
  }
  rep.ok = rep.max_distance <= std::max(rep.resolution, kVisualFloor);
  return rep;
}

}  // namespace heis
