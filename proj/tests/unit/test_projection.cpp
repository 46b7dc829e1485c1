#include <doctest.h>

#include "heis/chain_projection.hpp"
#include "oracles.hpp"
#include "probes.hpp"

using namespace heis;

TEST_CASE("projection at infinity is the quotient map") {
  CounterRng rng(21);
  const auto p = ChainProjector::infinity(2);
  for (int i = 0; i < 50; ++i) {
    const HeisPoint h = oracle::random_point(rng, 2);
    CHECK(project(p, h) == h.u);
  }
  const auto pd = pansu_derivative(p, oracle::random_point(rng, 2));
  CHECK(pd.m == CMat::Identity(2, 2));
}

TEST_CASE("chains through the basepoint collapse to one point") {
  CounterRng rng(22);
  for (int d = 1; d <= 2; ++d) {
    for (int i = 0; i < 20; ++i) {
      const auto p = ChainProjector::at(oracle::random_point(rng, d));
      const auto f = probe::fiber(p, oracle::random_point(rng, d), 30, rng);
      CHECK(f.spread <= 1e-8);
      CHECK(f.projected >= 25);
    }
  }
}

TEST_CASE("distinct chains give distinct images") {
  CounterRng rng(23);
  const auto p = ChainProjector::at(oracle::random_point(rng, 1));
  const HeisPoint a = oracle::random_point(rng, 1);
  const HeisPoint b = oracle::random_point(rng, 1);
  CHECK((project(p, a) - project(p, b)).norm() > 1e-6);
}

TEST_CASE("basepoint and chart identity") {
  CounterRng rng(24);
  const HeisPoint h0 = oracle::random_point(rng, 1);
  const auto p = ChainProjector::at(h0);
  CHECK_THROWS_AS(project(p, h0), BasepointError);
  CHECK(try_project(p, h0).status == ProjectStatus::Basepoint);
  CHECK(p.fingerprint() == ChainProjector::at(h0).fingerprint());
  CHECK(p.fingerprint() != ChainProjector::at(oracle::random_point(rng, 1)).fingerprint());
  CHECK(p.kernel_spectrum().back() <= ChainProjector::kKernelTol);
}

TEST_CASE("Pansu derivative: quadratic remainder and continuity") {
  CounterRng rng(25);
  for (int i = 0; i < 10; ++i) {
    const auto p = ChainProjector::at(oracle::random_point(rng, 1));
    const HeisPoint h = oracle::random_point(rng, 1);
    CHECK(probe::pansu_remainder_slope(p, h, rng) >= 1.9);
    const auto m1 = pansu_derivative(p, h);
    CVec du(1);
    du[0] = cplx(1e-3, 0.0);
    const auto m2 = pansu_derivative(p, group_mul(h, HeisPoint(du, 0.0)));
    CHECK((m1.m - m2.m).norm() <= 1e-2 * std::max(1.0, m1.m.norm()));
    CHECK(m1.linearity_defect <= 1e-6);
  }
}
