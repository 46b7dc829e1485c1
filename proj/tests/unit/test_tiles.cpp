#include <doctest.h>

#include "heis/tiles.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("tile construction") {
  CHECK_THROWS_AS(TileSystem(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(TileSystem(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(TileSystem(2, 3), std::invalid_argument);
  const TileSystem ts(1, 3);
  CHECK(ts.digit_count() == 81);
  CHECK(ts.residue_bijection());
  CHECK(ts.digit_index(LatticePoint::zero(1)) >= 0);
  CHECK(ts.radius_lower() <= ts.radius());
  CHECK(ts.radius() <= ts.radius_crude() + 1e-12);
  const TileSystem t5(2, 5);
  CHECK(t5.digit_count() == 5u * 5 * 5 * 5 * 25);
  CHECK(t5.residue_bijection());
}

TEST_CASE("address round trip and nesting") {
  const TileSystem ts(1, 3);
  const auto tails = tile_sample(ts, 200, 3);
  for (int i = 0; i < 200; ++i) {
    const int m = 1 + i % 6;
    TileAddress addr = random_address(ts, m, 5, static_cast<std::uint64_t>(i));
    addr.base.re[0] = i % 3 - 1;
    addr.base.s = i % 5 - 2;
    const HeisPoint x = address_to_point(ts, addr, tails[static_cast<std::size_t>(i)]);
    const Resolution r = resolve(ts, x, m + ts.n_max());
    if (r.ambiguous_at(m)) continue;
    CHECK(atom_address(r, m) == addr);
    for (int k = 0; k < m; ++k) CHECK(atom_address(r, k + 1).prefix(k) == atom_address(r, k));
  }
}

TEST_CASE("tile samples belong to the base tile and renormalize onto T") {
  const TileSystem ts(1, 3);
  const auto pts = tile_sample(ts, 300, 4);
  int claimed = 0;
  for (const auto& p : pts) {
    CHECK(koranyi_gauge(p) <= ts.radius() + 1e-9);
    claimed += tile_contains(ts, p, LatticePoint::zero(1));
    const TileAddress a = atom_address(ts, p, 2);
    const HeisPoint q = atom_renormalization(ts, a).apply(p);
    CHECK(koranyi_gauge(q) <= ts.radius() + 1e-6);
  }
  CHECK(claimed == 300);
}

TEST_CASE("small tiling audit") {
  const TileSystem ts(1, 3);
  const auto a = tiling_audit(ts, 3000, 7);
  CHECK(a.unique_rate >= 0.99);
  CHECK(a.volume == doctest::Approx(1.0).epsilon(4 * a.volume_stderr));
  CHECK(a.volume_fundamental == doctest::Approx(1.0).epsilon(0.05));
  CHECK(a.c_inner > 0.0);
  CHECK(a.c_outer <= ts.radius() + 1e-9);
}
