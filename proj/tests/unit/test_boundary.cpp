#include <doctest.h>

#include <cmath>

#include "heis/boundary.hpp"
#include "heis/multivector.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

BVec random_bvec(CounterRng& rng, int d) {
  BVec v(d + 2);
  for (int k = 0; k < d + 2; ++k) v[k] = cplx(rng.normal(), rng.normal());
  return v;
}

}  // namespace

TEST_CASE("hermitian form agrees with the explicit sum") {
  CounterRng rng(11);
  for (int d = 1; d <= 3; ++d) {
    const BMat j = form_matrix(d);
    CHECK((j * j - BMat::Identity(d + 2, d + 2)).norm() == 0.0);
    for (int i = 0; i < 200; ++i) {
      const BVec x = random_bvec(rng, d);
      const BVec y = random_bvec(rng, d);
      CHECK(std::abs(hermitian_form(x, y) - oracle::hermitian(x, y)) <= 1e-13 * x.norm() * y.norm());
      CHECK(std::abs(hermitian_form(x, y) - std::conj(hermitian_form(y, x))) <= 1e-13 * x.norm() * y.norm());
    }
  }
}

TEST_CASE("phi lands on the null cone and inverts") {
  CounterRng rng(12);
  for (int d = 1; d <= 3; ++d) {
    for (int i = 0; i < 300; ++i) {
      const HeisPoint h = oracle::random_point(rng, d, 2.0);
      const BoundaryPoint x = phi(h);
      CHECK(x.null_residual() <= 1e-12);
      CHECK(std::abs(oracle::hermitian(x.v(), x.v())) <= 1e-12 * x.v().squaredNorm());
      CHECK(koranyi_dist(phi_inverse(x), h) <= 1e-7);
      const HeisPoint g = oracle::random_point(rng, d, 2.0);
      const double gauge = koranyi_dist(h, g);
      CHECK(std::abs(hermitian_form(x.v(), phi(g).v())) == doctest::Approx(0.5 * gauge * gauge).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(phi_inverse(BoundaryPoint::infinity(1)), PointAtInfinity);
  BVec v = BVec::Zero(3);
  v[1] = 1.0;
  CHECK_THROWS_AS(BoundaryPoint{v}, std::invalid_argument);
}

TEST_CASE("isometries preserve the form and conjugate Heisenberg motions") {
  CounterRng rng(13);
  const HeisPoint t = oracle::random_point(rng, 2);
  const auto tr = BoundaryIsometry::heisenberg_translation(t);
  const auto dl = BoundaryIsometry::heisenberg_dilation(2, 2.5);
  CHECK(tr.form_defect() <= 1e-12);
  CHECK(dl.form_defect() <= 1e-12);
  for (int i = 0; i < 100; ++i) {
    const HeisPoint h = oracle::random_point(rng, 2);
    CHECK(tr.apply(phi(h)).same_as(phi(t * h)));
    CHECK(dl.apply(phi(h)).same_as(phi(dilate(2.5, h))));
  }
  CHECK(BoundaryIsometry::inversion(1).apply(BoundaryPoint::infinity(1)).same_as(phi(HeisPoint::identity(1))));
  CHECK_THROWS_AS(BoundaryIsometry(BMat::Identity(3, 3) * 2.0), std::invalid_argument);
}

TEST_CASE("loxodromic elements fix their endpoints") {
  CVec a(1), r(1);
  a[0] = cplx(0.4, -0.2);
  r[0] = cplx(-1.0, 0.5);
  const HeisPoint pa(a, 0.3), pr(r, -0.7);
  const auto g = BoundaryIsometry::loxodromic(pa, pr, 4.0);
  CHECK(g.form_defect() <= 1e-10);
  CHECK(g.apply(phi(pa)).same_as(phi(pa)));
  CHECK(g.apply(phi(pr)).same_as(phi(pr)));
  CHECK(g.compose(g.inverse()).matrix().isApprox(BMat::Identity(3, 3), 1e-12));
}

TEST_CASE("chains: samples are null and lie on one complex line") {
  CounterRng rng(14);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 3;
    const BoundaryPoint x = phi(oracle::random_point(rng, d));
    const BoundaryPoint y = phi(oracle::random_point(rng, d));
    const auto chain = chain_sample(x, y, {-3.0, -0.5, 0.1, 2.0, 40.0});
    for (const auto& z : chain) {
      CHECK(z.null_residual() <= 1e-12);
      CHECK(oracle::third_singular_value(x.v(), y.v(), z.v()) <= 1e-10);
    }
  }
}

TEST_CASE("visual metric is symmetric and vanishes on the diagonal") {
  CounterRng rng(15);
  for (int i = 0; i < 100; ++i) {
    const BoundaryPoint x = phi(oracle::random_point(rng, 1));
    const BoundaryPoint y = phi(oracle::random_point(rng, 1));
    CHECK(visual_metric(x, y) == doctest::Approx(visual_metric(y, x)).epsilon(1e-14));
    CHECK(visual_metric(x, x) <= 1e-7);
  }
}

TEST_CASE("exterior algebra") {
  CounterRng rng(16);
  const int n = 4;
  BVec x(n), y(n);
  for (int k = 0; k < n; ++k) {
    x[k] = cplx(rng.normal(), rng.normal());
    y[k] = cplx(rng.normal(), rng.normal());
  }
  const auto mx = Multivector::from_vector(x);
  const auto my = Multivector::from_vector(y);
  CHECK(progressive(mx, mx).norm() <= 1e-14);
  CHECK((progressive(mx, my) + progressive(my, mx)).norm() <= 1e-14);
  CHECK(wedge_sign(0b01, 0b10) == 1);
  CHECK(wedge_sign(0b10, 0b01) == -1);
  const auto xy = progressive(mx, my);
  CHECK((undual(dual(xy)) - xy).norm() <= 1e-14);
  const auto e = Multivector::pseudoscalar(n);
  CHECK((regressive(e, xy) - xy).norm() <= 1e-13);
}

TEST_CASE("Q map represents the form and is conjugate-linear") {
  CounterRng rng(17);
  for (int d = 1; d <= 3; ++d) {
    for (int i = 0; i < 50; ++i) {
      const BVec x = random_bvec(rng, d);
      const BVec y = random_bvec(rng, d);
      const auto lhs = progressive(qmap(x), Multivector::from_vector(y));
      const auto rhs = oracle::hermitian(x, y) * Multivector::pseudoscalar(d + 2);
      CHECK((lhs - rhs).norm() <= 1e-12 * x.norm() * y.norm());
      const cplx c(0.3, -1.2);
      CHECK((qmap(c * x) - std::conj(c) * qmap(x)).norm() <= 1e-12 * x.norm());
    }
  }
}

TEST_CASE("regressive product sign constant and unit") {
  // J(e01) = e2 and J(e02) = -e1, so e01 ^ e02 = Jinv(e1 v e2) = e0.
  const auto r = regressive(Multivector::basis(3, 0b011), Multivector::basis(3, 0b101));
  CHECK(r.grade() == 1);
  CHECK(r.coeff(0b001) == cplx(1.0, 0.0));
  CHECK(r.coeff(0b010) == cplx(0.0, 0.0));
  CHECK(r.coeff(0b100) == cplx(0.0, 0.0));
}

TEST_CASE("phi is bi-Lipschitz on a compact box") {
  const HeisBox box = HeisBox::cube(1, -1.0, 1.0);
  const auto pts = haar_sample(box, 20000, 19);
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    const double ratio = visual_metric(phi(pts[i]), phi(pts[i + 1])) / koranyi_dist(pts[i], pts[i + 1]);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  MESSAGE("visual / Koranyi ratio in [" << lo << ", " << hi << "]");
  CHECK(lo > 0.05);
  CHECK(hi < 2.0);
}
