#include <doctest.h>

#include <cmath>

#include "heis/core.hpp"
#include "heis/tiles.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("group law matches the real-coordinate formula in H^1") {
  CounterRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const HeisPoint a = oracle::random_point(rng, 1);
    const HeisPoint b = oracle::random_point(rng, 1);
    const auto ab = group_mul(a, b);
    const auto ref = oracle::mul_d1({a.u[0].real(), a.u[0].imag(), a.s}, {b.u[0].real(), b.u[0].imag(), b.s});
    CHECK(ab.u[0].real() == doctest::Approx(ref[0]).epsilon(1e-13));
    CHECK(ab.u[0].imag() == doctest::Approx(ref[1]).epsilon(1e-13));
    CHECK(ab.s == doctest::Approx(ref[2]).epsilon(1e-13));
  }
}

TEST_CASE("group axioms, gauge and dilations") {
  CounterRng rng(2);
  for (int d = 1; d <= 3; ++d) {
    for (int i = 0; i < 300; ++i) {
      const HeisPoint a = oracle::random_point(rng, d);
      const HeisPoint b = oracle::random_point(rng, d);
      const HeisPoint c = oracle::random_point(rng, d);
      const HeisPoint l = (a * b) * c;
      const HeisPoint r = a * (b * c);
      CHECK((l.u - r.u).norm() <= 1e-12 * (1 + l.u.norm()));
      CHECK(std::abs(l.s - r.s) <= 1e-12 * (1 + std::abs(l.s)));
      const HeisPoint e = a * inverse(a);
      CHECK(koranyi_gauge(e) <= 1e-7);
      CHECK(koranyi_gauge(a) == doctest::Approx(oracle::gauge(to_real(a))).epsilon(1e-13));
      CHECK(koranyi_dist(c * a, c * b) == doctest::Approx(koranyi_dist(a, b)).epsilon(1e-11));
      const cplx zeta(rng.normal(), rng.normal());
      CHECK(koranyi_dist(dilate(zeta, a), dilate(zeta, b)) ==
            doctest::Approx(std::abs(zeta) * koranyi_dist(a, b)).epsilon(1e-11));
      const HeisPoint da = dilate(zeta, a * b);
      const HeisPoint db = dilate(zeta, a) * dilate(zeta, b);
      CHECK((da.u - db.u).norm() <= 1e-11 * (1 + da.u.norm()));
      CHECK(std::abs(da.s - db.s) <= 1e-11 * (1 + std::abs(da.s)));
    }
  }
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(group_mul(HeisPoint::identity(1), HeisPoint::identity(2)), DimensionMismatch);
  CHECK_THROWS(check_dim(0));
  CHECK_THROWS(check_dim(kMaxDim + 1));
}

TEST_CASE("similarities compose and invert") {
  CounterRng rng(3);
  for (int d = 1; d <= 2; ++d) {
    for (int i = 0; i < 100; ++i) {
      const HeisSimilarity f(oracle::random_unitary(rng, d), 0.2 + rng.uniform(), oracle::random_point(rng, d));
      const HeisSimilarity g(oracle::random_unitary(rng, d), 0.2 + rng.uniform(), oracle::random_point(rng, d));
      const HeisPoint x = oracle::random_point(rng, d);
      const HeisPoint fg = compose_similarities(f, g).apply(x);
      const HeisPoint ref = f.apply(g.apply(x));
      CHECK((fg.u - ref.u).norm() <= 1e-12 * (1 + ref.u.norm()));
      CHECK(std::abs(fg.s - ref.s) <= 1e-12 * (1 + std::abs(ref.s)));
      const HeisPoint back = f.inverse().apply(f.apply(x));
      CHECK((back.u - x.u).norm() <= 1e-12 * (1 + x.u.norm()));
      CHECK(std::abs(back.s - x.s) <= 1e-12 * (1 + std::abs(x.s)));
      const HeisPoint y = oracle::random_point(rng, d);
      CHECK(koranyi_dist(f(x), f(y)) == doctest::Approx(f.ratio() * koranyi_dist(x, y)).epsilon(1e-10));
    }
  }
  CMat bad(1, 1);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(HeisSimilarity(bad, 0.5, HeisPoint::identity(1)), std::invalid_argument);
  CHECK_THROWS_AS(HeisSimilarity(CMat::Identity(1, 1), 0.0, HeisPoint::identity(1)), std::invalid_argument);
}

TEST_CASE("Haar samples stay in their box and the unit ball volume matches quadrature") {
  const HeisBox box = HeisBox::cube(1, -1.0, 1.0);
  const auto pts = haar_sample(box, 20000, 9);
  for (const auto& p : pts) REQUIRE(box.contains(p));
  CHECK(box.volume() == doctest::Approx(8.0));
  for (int d = 1; d <= 2; ++d) CHECK(koranyi_ball_volume(d) == doctest::Approx(oracle::ball_volume(d)).epsilon(1e-6));
  std::size_t inside = 0;
  for (const auto& p : pts) inside += koranyi_gauge(p) <= 1.0;
  const double mc = box.volume() * static_cast<double>(inside) / pts.size();
  CHECK(mc == doctest::Approx(oracle::ball_volume(1)).epsilon(0.03));
}

TEST_CASE("same seed, same samples") {
  const HeisBox box = HeisBox::cube(2, -1.0, 1.0);
  const auto a = haar_sample(box, 100, 5);
  const auto b = haar_sample(box, 100, 5);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
