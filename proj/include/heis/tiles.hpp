#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heis/core.hpp"

namespace heis {

/// A lattice element of Gamma = Z[i]^d x Z.
struct LatticePoint {
  std::vector<std::int64_t> re;
  std::vector<std::int64_t> im;
  std::int64_t s = 0;

  static LatticePoint zero(int d);
  int dim() const { return static_cast<int>(re.size()); }
  HeisPoint point() const;
  bool is_zero() const;
  auto operator<=>(const LatticePoint&) const = default;
};

/// Symbolic name of the atom gamma0 . f_{delta_1} o ... o f_{delta_m}(T).
struct TileAddress {
  LatticePoint base;
  /// Indices into TileSystem::digits().
  std::vector<std::uint32_t> digits;

  int depth() const { return static_cast<int>(digits.size()); }
  /// First m digits, same base.
  TileAddress prefix(int m) const;
  bool extends(const TileAddress& shorter) const;
  auto operator<=>(const TileAddress&) const = default;
};

std::string to_string(const TileAddress& a);

/// Raised when no lattice translate claims a point. Carries the deepest surviving candidates.
class BoundaryAmbiguous : public std::runtime_error {
 public:
  BoundaryAmbiguous(const std::string& what, std::vector<TileAddress> candidates)
      : std::runtime_error(what), candidates_(std::move(candidates)) {}
  const std::vector<TileAddress>& candidates() const { return candidates_; }

 private:
  std::vector<TileAddress> candidates_;
};

/// All addresses whose atoms contain a point to within tolerance, at a common depth.
struct Resolution {
  /// Surviving addresses, sorted lexicographically.
  std::vector<TileAddress> survivors;
  /// Gauge of the renormalized residual T_Q(x) for each survivor.
  std::vector<double> residuals;

  bool empty() const { return survivors.empty(); }
  /// Number of distinct lattice translates claiming the point.
  int claims() const;
  /// Survivors disagree on their depth-m prefix.
  bool ambiguous_at(int m) const;
};

/// Strichartz tile T for base b: T = union over digits delta of f_delta(T),
/// f_delta(t) = dilate(1/b, delta . t).
class TileSystem {
 public:
  /// Throws std::invalid_argument unless b is odd with b >= 2d+1.
  TileSystem(int d, int b, int n_max = 12, double eps = 1e-9);

  int dim() const { return d_; }
  int base() const { return b_; }
  int n_max() const { return n_max_; }
  double eps() const { return eps_; }
  std::size_t digit_count() const { return digits_.size(); }
  const std::vector<LatticePoint>& digits() const { return digits_; }
  const HeisPoint& digit_point(std::uint32_t i) const { return digit_points_[i]; }
  /// Index of the digit equal to `g`, or -1.
  std::int64_t digit_index(const LatticePoint& g) const;

  /// Rigorous upper bound for max gauge over T.
  double radius() const { return radius_; }
  /// Lower bound found by the same search (attained by a point of T).
  double radius_lower() const { return radius_lower_; }
  /// Crude bound max |delta| / (b - 1).
  double radius_crude() const { return radius_crude_; }

  /// Every residue class of (u mod b, s mod b^2) is hit exactly once.
  bool residue_bijection() const;

 private:
  void refine_radius();

  int d_;
  int b_;
  int n_max_;
  double eps_;
  std::vector<LatticePoint> digits_;
  std::vector<HeisPoint> digit_points_;
  double radius_ = 0.0;
  double radius_lower_ = 0.0;
  double radius_crude_ = 0.0;
};

/// gamma0 . f_{delta_1} o ... o f_{delta_m}(tail).
HeisPoint address_to_point(const TileSystem& ts, const TileAddress& addr, const HeisPoint& tail);

/// All candidate addresses of x, to depth `depth` (defaults to n_max). A depth-k residual
/// survives while its gauge is at most radius() + eps b^min(k, n_max).
Resolution resolve(const TileSystem& ts, const HeisPoint& x, int depth = -1);

/// Depth-m atom containing x, resolved n_max levels below m; boundary points take the
/// lexicographically smallest candidate. Throws BoundaryAmbiguous when nothing survives.
TileAddress atom_address(const TileSystem& ts, const HeisPoint& x, int m);
/// Same, reusing a resolution computed earlier.
TileAddress atom_address(const Resolution& r, int m);

/// T_Q: the similarity of ratio b^m mapping the atom onto T.
HeisSimilarity atom_renormalization(const TileSystem& ts, const TileAddress& addr);

/// Claimed by the lattice translate `base` (any surviving address with that base).
bool tile_contains(const TileSystem& ts, const HeisPoint& x, const LatticePoint& base);

/// i.i.d. Haar-uniform samples of T, from uniform random digit strings of length n_max.
std::vector<HeisPoint> tile_sample(const TileSystem& ts, std::size_t n, std::uint64_t seed);
/// A uniformly random depth-m address with base 0.
TileAddress random_address(const TileSystem& ts, int m, std::uint64_t seed, std::uint64_t stream);

struct TilingAudit {
  std::size_t samples = 0;
  std::size_t unique = 0;
  std::size_t multiple = 0;
  std::size_t unclaimed = 0;
  double unique_rate = 0.0;
  /// Direct Monte Carlo over a box containing T.
  double volume = 0.0;
  double volume_stderr = 0.0;
  /// Mean number of claiming translates over the fundamental box [-1/2, 1/2)^{2d+1}.
  double volume_fundamental = 0.0;
  /// Every sampled atom lies within c_outer b^-m of its centre and contains a ball of radius
  /// c_inner b^-m.
  double c_inner = 0.0;
  double c_outer = 0.0;
  double radius = 0.0;
};

TilingAudit tiling_audit(const TileSystem& ts, std::size_t n, std::uint64_t seed);

/// Volume of the unit Koranyi ball in H^d.
double koranyi_ball_volume(int d);

}  // namespace heis
