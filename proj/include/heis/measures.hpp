#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "heis/chain_projection.hpp"
#include "heis/tiles.hpp"

namespace heis {

/// Metric of the ambient space: Koranyi on H^d, or Euclidean on C^d (atoms stored with s = 0).
enum class Ambient { Heisenberg, Plane };

const char* to_string(Ambient a);

/// Finite positive combination of Dirac masses.
class PointMeasure {
 public:
  PointMeasure(Ambient ambient, int d);
  /// Throws std::invalid_argument on non-positive weights or mixed dimensions.
  PointMeasure(Ambient ambient, std::vector<HeisPoint> points, std::vector<double> weights);

  /// n atoms of weight 1/n.
  static PointMeasure uniform(Ambient ambient, std::vector<HeisPoint> points);
  static PointMeasure dirac(Ambient ambient, HeisPoint p);
  static PointMeasure plane(const std::vector<CVec>& points);

  Ambient ambient() const { return ambient_; }
  int dim() const { return d_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<HeisPoint>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double total() const { return total_; }
  bool is_probability(double tol = 1e-9) const;

  /// Same atoms with weights divided by total(). Throws ZeroMass if empty.
  PointMeasure normalized() const;
  PointMeasure scaled(double c) const;
  /// Mixture sum a_i mu_i of measures with equal ambient and dimension.
  static PointMeasure combine(const std::vector<std::pair<double, const PointMeasure*>>& parts);

  std::vector<CVec> horizontal() const;

 private:
  Ambient ambient_;
  int d_;
  std::vector<HeisPoint> points_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// Distance in the measure's ambient metric.
double ambient_dist(Ambient a, const HeisPoint& x, const HeisPoint& y);

/// Uniform-grid bucketing for closed-ball mass queries at a fixed radius.
///
/// Buckets only prune candidates; every candidate is tested with the exact ambient metric.
class BallIndex {
 public:
  BallIndex(const PointMeasure& mu, double rho);

  double rho() const { return rho_; }
  /// mu(closed ball of radius rho around x).
  double mass(const HeisPoint& x) const;
  /// Number of atoms in the closed ball.
  std::size_t count(const HeisPoint& x) const;

 private:
  struct Key {
    std::array<std::int64_t, 2 * kMaxDim + 1> c{};
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  Key cell_of(const HeisPoint& p) const;
  template <class F>
  void visit(const HeisPoint& x, F&& f) const;

  const PointMeasure* mu_;
  double rho_;
  double cell_u_;
  double cell_s_;
  int ncoord_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
};

/// mu / mu(T). Throws ZeroMass when no atom lies in T.
PointMeasure normalize_star(const PointMeasure& mu, const TileSystem& ts);
/// mu restricted to the atom, renormalized to mass 1. Throws ZeroMass.
PointMeasure condition_on_atom(const PointMeasure& mu, const TileSystem& ts, const TileAddress& addr);
/// Push-forward of a measure on the atom through T_Q.
PointMeasure rescale_to_unit(const PointMeasure& mu_q, const TileSystem& ts, const TileAddress& addr);

struct Magnified {
  PointMeasure measure;
  HeisPoint point;
  TileAddress atom;
};

/// M(mu, x) = (mu^{Q1(x)}, T_{Q1(x)} x).
Magnified magnify(const PointMeasure& mu, const HeisPoint& x, const TileSystem& ts);

/// -sum_x w(x) log mu(B(x, rho)) with closed balls. Requires a probability measure.
double scale_entropy(const PointMeasure& nu, double rho);
/// Entropy values above log(n / 10) are unreliable for an n-atom measure.
bool entropy_saturated(const PointMeasure& nu, double h);

struct Pushforward {
  PointMeasure measure;
  std::size_t singular_atoms = 0;
  double singular_mass = 0.0;
  std::size_t basepoint_atoms = 0;
};

/// Atom-wise image under a chain projection; the result lives in the plane. Atoms the chart
/// cannot map are dropped and counted. Throws std::runtime_error when they carry > 1% of mass.
Pushforward pushforward(const ChainProjector& p, const PointMeasure& nu);
/// Atom-wise image under an arbitrary map, same ambient.
PointMeasure pushforward(const std::function<HeisPoint(const HeisPoint&)>& f, const PointMeasure& nu);

/// Source of the renormalized conditional measures mu^Q for a fixed mu.
class ConditionalSource {
 public:
  virtual ~ConditionalSource() = default;
  /// mu^Q as a probability measure on T (Heisenberg ambient). Throws ZeroMass.
  virtual PointMeasure magnified(const TileSystem& ts, const TileAddress& addr, std::size_t n,
                                 std::uint64_t seed) const = 0;
};

/// Conditions a fixed finite measure; `n` and `seed` are ignored.
class EmpiricalSource : public ConditionalSource {
 public:
  explicit EmpiricalSource(PointMeasure mu) : mu_(std::move(mu)) {}
  PointMeasure magnified(const TileSystem& ts, const TileAddress& addr, std::size_t n,
                         std::uint64_t seed) const override;

 private:
  PointMeasure mu_;
};

/// Normalized Haar measure on T: fresh uniform samples of the atom.
class HaarTileSource : public ConditionalSource {
 public:
  PointMeasure magnified(const TileSystem& ts, const TileAddress& addr, std::size_t n,
                         std::uint64_t seed) const override;
};

struct LeaReport {
  double value = 0.0;
  int q = 0;
  int n_requested = 0;
  int n_achieved = 0;
  /// The orbit stopped early (zero mass or unresolvable atom).
  bool partial = false;
  int saturated_steps = 0;
  std::vector<double> entropies;
};

/// (1 / (N q log b)) sum_{n<N} H_{b^-q}(p_* mu^{Q_{nq}(x)}).
LeaReport local_entropy_average(const ConditionalSource& source, const HeisPoint& x, int q, int n_steps,
                                const TileSystem& ts, const ChainProjector& projector,
                                std::size_t samples_per_step, std::uint64_t seed);

/// H_rho of the normalized Haar measure on T, with ball masses |B_rho| P(probe in T) from
/// `probes` uniform points per ball around each of `queries` points of T.
double haar_tile_entropy(const TileSystem& ts, double rho, std::size_t queries, std::size_t probes,
                         std::uint64_t seed);

}  // namespace heis
