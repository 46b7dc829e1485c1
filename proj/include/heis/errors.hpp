#pragma once

#include <stdexcept>
#include <string>

namespace heis {

/// Operands that live in Heisenberg groups (or boundaries) of different dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// phi_inverse applied to [f0].
class PointAtInfinity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Radial projection evaluated at its own basepoint.
class BasepointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Point projectively too close to the hyperplane excluded by the affine chart.
class ChartSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DerivativeUnreliable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning or normalizing on a set that carries no mass.
class ZeroMass : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A dimension regression left with fewer than three usable scales.
class InsufficientScales : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace heis
