#include <doctest.h>

#include <cmath>

#include "heis/generators.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

HeisIFS default_ifs() {
  const double th[3] = {0.0, 1.0, std::sqrt(2.0)};
  const cplx tu[3] = {0.0, cplx(2.0 / 3, 0.0), cplx(0.0, 2.0 / 3)};
  const double ts[3] = {0.0, 0.2, -0.1};
  std::vector<HeisSimilarity> maps;
  for (int i = 0; i < 3; ++i) {
    CMat u(1, 1);
    u(0, 0) = std::polar(1.0, th[i]);
    CVec t(1);
    t[0] = tu[i];
    maps.emplace_back(u, 0.3, HeisPoint(t, ts[i]));
  }
  return HeisIFS(maps);
}

CVec c1(cplx z) {
  CVec v(1);
  v[0] = z;
  return v;
}

}  // namespace

TEST_CASE("similarity dimension solves the Moran equation") {
  const HeisIFS ifs = default_ifs();
  CHECK(ifs.similarity_dimension() == doctest::Approx(oracle::moran_equal(3, 0.3)).epsilon(1e-12));
  std::vector<HeisSimilarity> maps{HeisSimilarity::dilation(1, 0.5), HeisSimilarity::dilation(1, 0.25)};
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(HeisIFS(maps).similarity_dimension() == doctest::Approx(std::log2(1.0 / golden)).epsilon(1e-12));
  CHECK_THROWS(HeisIFS({HeisSimilarity::dilation(1, 1.2)}));
  CHECK_THROWS(HeisIFS(maps, {0.7, 0.7}));
}

TEST_CASE("fixed points and attractor radius") {
  const HeisIFS ifs = default_ifs();
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    const HeisPoint p = ifs.fixed_point(i);
    const HeisPoint q = ifs.maps()[i].apply(p);
    CHECK((q.u - p.u).norm() <= 1e-12);
    CHECK(std::abs(q.s - p.s) <= 1e-12);
  }
  const HeisPoint c = ifs.fixed_point(0);
  const double r = ifs.attractor_radius(c);
  for (const auto& p : sample_attractor(ifs, Exhaustive{6})) CHECK(koranyi_dist(p, c) <= r + 1e-9);
}

TEST_CASE("exhaustive and random sampling") {
  const HeisIFS ifs = default_ifs();
  CHECK(sample_attractor(ifs, Exhaustive{8}).size() == 6561);
  CHECK_THROWS_AS(sample_attractor(ifs, Exhaustive{20}), BudgetExceeded);
  const auto a = sample_attractor(ifs, RandomWords{500, 12, 4});
  const auto b = sample_attractor(ifs, RandomWords{500, 12, 4});
  CHECK(a == b);
  const auto words = random_words(ifs, 500, 12, 4);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(coding_point(ifs, words[i], HeisPoint::identity(1)) == a[i]);
  }
}

TEST_CASE("cylinder frequencies follow the probabilities") {
  std::vector<HeisSimilarity> maps;
  for (int i = 0; i < 3; ++i) {
    maps.emplace_back(CMat::Identity(1, 1), 0.3, HeisPoint(c1(cplx(i, 0.0)), 0.0));
  }
  const std::vector<double> p{0.5, 0.3, 0.2};
  const HeisIFS ifs(maps, p);
  const std::size_t n = 20000;
  const auto words = random_words(ifs, n, 4, 9);
  std::vector<double> freq(3, 0.0);
  for (const auto& w : words) freq[w.front()] += 1.0 / n;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(freq[i] - p[i]) <= 4.0 * std::sqrt(p[i] * (1 - p[i]) / n));
}

TEST_CASE("the quotient IFS intertwines with pi_Z") {
  const HeisIFS ifs = default_ifs();
  const PlanarIFS q = quotient_ifs(ifs);
  CounterRng rng(41);
  for (int i = 0; i < 200; ++i) {
    const HeisPoint h = oracle::random_point(rng, 1);
    for (std::size_t k = 0; k < ifs.size(); ++k) {
      CHECK((ifs.maps()[k].apply(h).u - q.maps[k].apply(h.u)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("open set condition audit") {
  const PlanarIFS sierpinski = planar_ifs({c1(0.0), c1(0.5), c1(cplx(0.0, 0.5))}, {0.5, 0.5, 0.5});
  const SquareCandidate unit{cplx(0.5, 0.5), 0.5};
  CHECK(osc_audit_quotient(sierpinski, unit).verdict == OscVerdict::PassWithContact);
  const PlanarIFS overlap = planar_ifs({c1(0.0), c1(0.3), c1(cplx(0.0, 0.3))}, {0.6, 0.6, 0.6});
  CHECK(osc_audit_quotient(overlap, unit).verdict == OscVerdict::Fail);
  const PlanarIFS sparse = planar_ifs({c1(0.0), c1(2.0 / 3), c1(cplx(0.0, 2.0 / 3))}, {0.3, 0.3, 0.3});
  CHECK(osc_audit_quotient(sparse, unit).verdict == OscVerdict::PassWithContact);
  CHECK(osc_audit_quotient(sparse, SquareCandidate{cplx(0.45, 0.45), 0.55}).verdict == OscVerdict::Pass);
  CHECK(osc_audit_quotient(quotient_ifs(default_ifs()), DiskCandidate{c1(cplx(0.14, 0.25)), 0.845}).verdict ==
        OscVerdict::Pass);
}

TEST_CASE("Schottky words, limit sets and ping-pong") {
  CHECK(reduced_word_count(2, 12) == 708588);
  CHECK(reduced_word_count(1, 3) == 2);
  const HeisPoint a(c1(cplx(1.0, 0.0)), 0.3), r(c1(cplx(-1.0, 0.0)), -0.3);
  const HeisPoint a2(c1(cplx(0.2, 1.0)), -0.4), r2(c1(cplx(-0.3, -0.9)), 0.5);
  const SchottkyGenerators sg({BoundaryIsometry::loxodromic(a, r, 6.0), BoundaryIsometry::loxodromic(a2, r2, 6.0)},
                              {phi(HeisPoint::identity(1))}, 6);
  for (int len = 1; len <= 5; ++len) CHECK(schottky_limit_sample(sg, len).size() == reduced_word_count(2, len));
  CHECK(attracting_fixed_point(sg.gens[0]).same_as(phi(a)));
  const auto pp = ping_pong_audit(sg, 500, 1);
  CHECK(pp.ok);
  CHECK(pp.min_gap > 0.0);
  const auto conv = schottky_convergence(sg, 6);
  CHECK_FALSE(conv.warning);
  CHECK(conv.mean_ratio < 0.9);
}

TEST_CASE("an isometric sphere is carried onto that of the inverse") {
  const HeisPoint a(c1(cplx(0.5, 0.1)), 0.2), r(c1(cplx(-0.4, 0.6)), -0.1);
  const auto g = BoundaryIsometry::loxodromic(a, r, 3.0);
  const IsometricSphere s = isometric_sphere(g);
  const IsometricSphere si = isometric_sphere(g.inverse());
  CounterRng rng(42);
  for (int i = 0; i < 50; ++i) {
    HeisPoint w = oracle::random_point(rng, 1);
    w = dilate(s.radius / koranyi_gauge(w), w);
    const HeisPoint p = s.centre * w;
    const HeisPoint gp = phi_inverse(g.apply(phi(p)));
    CHECK(koranyi_dist(si.centre, gp) == doctest::Approx(si.radius).epsilon(1e-9));
  }
  CHECK_THROWS(isometric_sphere(BoundaryIsometry::heisenberg_dilation(1, 2.0)));
}
