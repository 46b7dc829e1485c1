#include <doctest.h>

#include <cmath>

#include "heis/dimension.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("least squares") {
  const auto f = ols({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  const std::vector<double> x{0.1, 0.4, 0.5, 1.3, 2.0}, y{0.3, 0.2, 1.1, 1.4, 3.0};
  CHECK(ols(x, y).slope == doctest::Approx(oracle::ls_slope(x, y)).epsilon(1e-12));
  CHECK_THROWS_AS(fit_scaling({0.5, 0.25}, {2, 4}, {true, true}, true, "t"), InsufficientScales);
}

TEST_CASE("Euclidean box counts") {
  std::vector<std::vector<double>> square;
  std::vector<std::array<double, 2>> raw;
  CounterRng rng(51);
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform(), y = rng.uniform();
    square.push_back({x, y});
    raw.push_back({x, y});
  }
  const auto e = box_dim_euclidean(square, 3, 7);
  CHECK(e.slope == doctest::Approx(2.0).epsilon(0.03));
  CHECK(e.reliable());
  CHECK(e.method == "box-euclidean-dyadic");
  CHECK(oracle::grid_cells(raw, 5) == 1024);

  std::vector<std::vector<double>> dust;
  std::vector<std::vector<double>> level{{0.0, 0.0}};
  for (int k = 0; k < 8; ++k) {
    std::vector<std::vector<double>> next;
    const double r = std::pow(1.0 / 3.0, k + 1);
    for (const auto& p : level) {
      for (double dx : {0.0, 2.0}) {
        for (double dy : {0.0, 2.0}) next.push_back({p[0] + dx * r, p[1] + dy * r});
      }
    }
    level = std::move(next);
  }
  const auto c = box_dim_euclidean(level, 2, 8);
  CHECK(c.slope == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(0.05));

  const std::vector<std::vector<double>> point(1000, std::vector<double>{0.3, 0.7});
  CHECK(box_dim_euclidean(point).slope == doctest::Approx(0.0));
}

TEST_CASE("Koranyi counts on a Haar sample of T give 2d + 2") {
  const TileSystem ts(1, 3);
  const auto est = box_dim_koranyi(tile_sample(ts, 100000, 6), ts, 0, 2);
  CHECK(est.counts.back() == 6561.0);
  CHECK(est.slope == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(est.method == "box-koranyi-tile-atoms");
}

TEST_CASE("entropy dimension of a planar uniform measure") {
  CounterRng rng(52);
  std::vector<CVec> pts;
  for (int i = 0; i < 20000; ++i) {
    CVec z(1);
    z[0] = cplx(rng.uniform(), rng.uniform());
    pts.push_back(z);
  }
  const auto e = entropy_dim(PointMeasure::plane(pts), {0.2, 0.1, 0.05, 0.025});
  CHECK(e.slope == doctest::Approx(2.0).epsilon(0.1));
  CHECK(e.method == "entropy-euclidean");
}
