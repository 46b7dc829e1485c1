#include <doctest.h>

#include <cmath>

#include "heis/measures.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("entropy of a Dirac mass and of separated atoms") {
  CounterRng rng(31);
  const auto dirac = PointMeasure::dirac(Ambient::Heisenberg, oracle::random_point(rng, 1));
  CHECK(scale_entropy(dirac, 0.5) == 0.0);
  for (int n : {2, 7, 50}) {
    std::vector<HeisPoint> pts;
    for (int i = 0; i < n; ++i) {
      CVec u(1);
      u[0] = cplx(10.0 * i, 0.0);
      pts.emplace_back(u, 0.0);
    }
    const auto mu = PointMeasure::uniform(Ambient::Heisenberg, pts);
    CHECK(scale_entropy(mu, 1.0) == doctest::Approx(std::log(n)).epsilon(1e-14));
  }
}

TEST_CASE("ball index agrees with brute force") {
  CounterRng rng(32);
  std::vector<HeisPoint> pts;
  std::vector<double> w;
  for (int i = 0; i < 800; ++i) {
    pts.push_back(oracle::random_point(rng, 1));
    w.push_back(0.5 + rng.uniform());
  }
  for (Ambient amb : {Ambient::Heisenberg, Ambient::Plane}) {
    std::vector<HeisPoint> ps = pts;
    if (amb == Ambient::Plane) {
      for (auto& p : ps) p.s = 0.0;
    }
    const PointMeasure mu(amb, ps, w);
    for (double rho : {0.05, 0.3, 1.0}) {
      const BallIndex idx(mu, rho);
      for (int q = 0; q < 40; ++q) {
        const HeisPoint x = ps[static_cast<std::size_t>(q * 13)];
        double ref = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
          const double dist = amb == Ambient::Plane ? (ps[i].u - x.u).norm()
                                                    : oracle::gauge(to_real(group_mul(inverse(x), ps[i])));
          if (dist <= rho) ref += w[i];
        }
        CHECK(idx.mass(x) == doctest::Approx(ref).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("measure bookkeeping") {
  CounterRng rng(33);
  std::vector<HeisPoint> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(oracle::random_point(rng, 1));
  const PointMeasure mu(Ambient::Heisenberg, pts, std::vector<double>(10, 2.0));
  CHECK(mu.total() == doctest::Approx(20.0));
  CHECK(mu.normalized().is_probability());
  CHECK_THROWS_AS(PointMeasure(Ambient::Heisenberg, 1).normalized(), ZeroMass);
  CHECK_THROWS_AS(PointMeasure(Ambient::Heisenberg, pts, std::vector<double>(10, -1.0)), std::invalid_argument);
  const auto half = mu.scaled(0.5);
  const auto mix = PointMeasure::combine({{0.5, &half}, {0.5, &half}});
  CHECK(mix.total() == doctest::Approx(10.0));
}

TEST_CASE("pushforward under the quotient map and saturation guard") {
  CounterRng rng(34);
  std::vector<HeisPoint> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(oracle::random_point(rng, 1));
  const auto mu = PointMeasure::uniform(Ambient::Heisenberg, pts);
  const auto pf = pushforward(ChainProjector::infinity(1), mu);
  CHECK(pf.measure.ambient() == Ambient::Plane);
  CHECK(pf.measure.size() == 100);
  CHECK(pf.measure.points()[7].u == pts[7].u);
  CHECK(entropy_saturated(mu, std::log(100.0 / 10.0) + 1e-9));
  CHECK_FALSE(entropy_saturated(mu, 1.0));
}

TEST_CASE("conditioning and magnification stay on T") {
  const TileSystem ts(1, 3);
  const auto mu = PointMeasure::uniform(Ambient::Heisenberg, tile_sample(ts, 5000, 8));
  const auto star = normalize_star(mu, ts);
  CHECK(star.total() == doctest::Approx(1.0));
  const auto mg = magnify(mu, mu.points()[3], ts);
  CHECK(mg.measure.is_probability());
  CHECK(mg.atom.depth() == 1);
  for (const auto& p : mg.measure.points()) CHECK(koranyi_gauge(p) <= ts.radius() + 1e-6);
  CHECK(koranyi_gauge(mg.point) <= ts.radius() + 1e-6);
  const auto haar = HaarTileSource{}.magnified(ts, mg.atom, 200, 1);
  CHECK(haar.size() == 200);
}

TEST_CASE("local entropy average of Haar measure is bounded by 2d+2") {
  const TileSystem ts(1, 3);
  const auto rep = local_entropy_average(HaarTileSource{}, tile_sample(ts, 1, 2)[0], 1, 2, ts,
                                         ChainProjector::infinity(1), 2000, 3);
  CHECK(rep.n_achieved == 2);
  CHECK(rep.value > 0.0);
  CHECK(rep.value <= 2.0 + 0.2);
}
