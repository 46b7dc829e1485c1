#pragma once

#include <cstddef>

#include "heis/chain_projection.hpp"
#include "heis/rng.hpp"

// Property probes shared by the unit and acceptance suites.
namespace probe {

struct FiberResult {
  /// Largest |pi(z) - pi(h)| / max(1, |pi(h)|) over the chain through the basepoint and h.
  double spread = 0.0;
  std::size_t projected = 0;
  std::size_t singular = 0;
};

/// Projects `samples` points of the chain through phi(h0) and phi(h).
FiberResult fiber(const heis::ChainProjector& p, const heis::HeisPoint& h, std::size_t samples, heis::CounterRng& rng);

/// Log-log slope of |pi(h . delta_r w) - pi(h) - D(r v)| against r over [1e-4, 1e-1], where
/// w = (v, t) is a random unit increment.
double pansu_remainder_slope(const heis::ChainProjector& p, const heis::HeisPoint& h, heis::CounterRng& rng);

}  // namespace probe
