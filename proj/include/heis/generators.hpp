#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "heis/boundary.hpp"
#include "heis/measures.hpp"

namespace heis {

using Word = std::vector<std::uint32_t>;

/// Self-similar iterated function system of contracting Heisenberg similarities.
class HeisIFS {
 public:
  /// Throws unless every ratio is in (0, 1) and the probabilities are positive with sum 1.
  /// Empty `probabilities` means uniform.
  HeisIFS(std::vector<HeisSimilarity> maps, std::vector<double> probabilities = {});

  int dim() const { return maps_.front().dim(); }
  std::size_t size() const { return maps_.size(); }
  const std::vector<HeisSimilarity>& maps() const { return maps_; }
  const std::vector<double>& probabilities() const { return p_; }
  double max_ratio() const;
  /// Root s of sum r_i^s = 1.
  double similarity_dimension() const;
  /// Fixed point of map i.
  HeisPoint fixed_point(std::size_t i) const;
  /// R with X inside the closed ball B(centre, R).
  double attractor_radius(const HeisPoint& centre) const;

 private:
  std::vector<HeisSimilarity> maps_;
  std::vector<double> p_;
};

/// f_{a_0} o ... o f_{a_n}(x0).
HeisPoint coding_point(const HeisIFS& ifs, const Word& word, const HeisPoint& x0);

struct Exhaustive {
  int depth = 1;
};
struct RandomWords {
  std::size_t n = 1;
  int length = 1;
  std::uint64_t seed = 0;
};
using SampleMode = std::variant<Exhaustive, RandomWords>;

inline constexpr std::size_t kExhaustiveBudget = 5'000'000;

/// Exhaustive: all k^depth cylinder points (BudgetExceeded above kExhaustiveBudget).
/// Random: coding points of i.i.d. words drawn from the IFS probabilities. Words start at x0 = 0.
std::vector<HeisPoint> sample_attractor(const HeisIFS& ifs, const SampleMode& mode);
/// The same random words, returned alongside the points.
std::vector<Word> random_words(const HeisIFS& ifs, std::size_t n, int length, std::uint64_t seed);
/// n atoms of weight 1/n at coding points of i.i.d. p-random words.
PointMeasure sample_self_similar_measure(const HeisIFS& ifs, std::size_t n, int length, std::uint64_t seed);

/// z -> t + r U z on C^d.
struct PlanarSimilarity {
  CMat rotation;
  double ratio = 1.0;
  CVec translation;

  CVec apply(const CVec& z) const { return translation + ratio * (rotation * z); }
};

struct PlanarIFS {
  std::vector<PlanarSimilarity> maps;
  std::vector<double> probabilities;
};

PlanarIFS quotient_ifs(const HeisIFS& ifs);
/// Planar IFS with unit-rotation maps z -> t_i + r_i z (d = 1 unless rotations are given).
PlanarIFS planar_ifs(const std::vector<CVec>& translations, const std::vector<double>& ratios);

struct DiskCandidate {
  CVec centre;
  double radius = 1.0;
};
/// Axis-aligned square in C = R^2 (d = 1 only).
struct SquareCandidate {
  cplx centre;
  double half_side = 0.5;
};
using OpenSetCandidate = std::variant<DiskCandidate, SquareCandidate>;

enum class OscVerdict { Pass, PassWithContact, Fail };
const char* to_string(OscVerdict v);

struct OscReport {
  OscVerdict verdict = OscVerdict::Fail;
  /// Smallest gap between two images; negative when they overlap.
  double min_separation = 0.0;
  /// Smallest distance from an image to the candidate's complement; negative when outside.
  double containment_slack = 0.0;
  /// Worst pair (i, j).
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

/// Exact planar geometry for disks (any d) and rotated squares (d = 1).
OscReport osc_audit_quotient(const PlanarIFS& ifs, const OpenSetCandidate& candidate, double tol = 1e-12);

/// Samples of mu^Q for the self-similar measure of an IFS, drawn from the IFS cylinders that
/// can meet the atom Q and accepted by exact atom membership.
class SelfSimilarSource : public ConditionalSource {
 public:
  explicit SelfSimilarSource(HeisIFS ifs, int tail_length = 24, std::size_t attempt_factor = 400);

  PointMeasure magnified(const TileSystem& ts, const TileAddress& addr, std::size_t n,
                         std::uint64_t seed) const override;
  const HeisIFS& ifs() const { return ifs_; }

 private:
  HeisIFS ifs_;
  HeisPoint centre_;
  double radius_;
  int tail_length_;
  std::size_t attempt_factor_;
};

// --- Schottky groups -------------------------------------------------------------------

/// Generators g_1..g_k of a Schottky group (letters 2i and 2i+1 are g_i and its inverse).
struct SchottkyGenerators {
  std::vector<BoundaryIsometry> gens;
  std::vector<BoundaryPoint> base_points;
  int max_word_len = 12;

  SchottkyGenerators(std::vector<BoundaryIsometry> generators, std::vector<BoundaryPoint> bases,
                     int max_len = 12);
  int dim() const { return gens.front().dim(); }
  std::size_t letters() const { return 2 * gens.size(); }
  const BoundaryIsometry& letter(std::size_t a) const { return letters_[a]; }
  static std::size_t inverse_letter(std::size_t a) { return a ^ 1u; }

 private:
  std::vector<BoundaryIsometry> letters_;
};

/// Number of reduced words of length L in k free generators: 2k (2k-1)^(L-1).
std::size_t reduced_word_count(std::size_t k, int length);

/// Images of every base point under all reduced words of length `word_len`.
std::vector<BoundaryPoint> schottky_limit_sample(const SchottkyGenerators& sg, int word_len);

struct SchottkyConvergence {
  /// max over words w.a of d(w.a(x), w(x)) at each length L = 1..L_max (visual metric).
  std::vector<double> level_gap;
  /// Successive ratios level_gap[L+1] / level_gap[L].
  std::vector<double> ratios;
  double mean_ratio = 0.0;
  /// mean_ratio >= 0.98: the cloud does not appear to converge.
  bool warning = false;
};

SchottkyConvergence schottky_convergence(const SchottkyGenerators& sg, int max_len);

/// Isometric sphere of a letter g: the Cygan sphere centred at g^-1(infinity) on which g
/// preserves Koranyi lengths to first order.
struct IsometricSphere {
  HeisPoint centre;
  double radius = 0.0;
};

/// Throws std::invalid_argument when g fixes the point at infinity.
IsometricSphere isometric_sphere(const BoundaryIsometry& g);

struct PingPongReport {
  std::vector<IsometricSphere> spheres;
  /// min over letter pairs of d(c_a, c_b) - r_a - r_b; positive means pairwise disjoint balls.
  double min_gap = 0.0;
  std::size_t probes = 0;
  /// Probes outside the ball of letter a whose image misses the ball of a^-1.
  std::size_t violations = 0;
  bool ok = false;
  std::vector<BoundaryPoint> attracting;
};

/// Attracting fixed point of a loxodromic isometry, from the dominant eigenvector.
BoundaryPoint attracting_fixed_point(const BoundaryIsometry& g);
/// Klein combination audit: disjoint isometric spheres, and every letter maps random probes from
/// the exterior of its sphere into the ball of its inverse.
PingPongReport ping_pong_audit(const SchottkyGenerators& sg, std::size_t probes, std::uint64_t seed);

/// Smallest visual distance resolved between double-precision representatives after long words.
inline constexpr double kVisualFloor = 1e-7;

struct InvarianceReport {
  std::size_t tested = 0;
  /// Largest visual distance from g(x) to the cloud, over generators and sampled x.
  double max_distance = 0.0;
  /// Hausdorff resolution of the cloud (gap between word lengths L and L+1).
  double resolution = 0.0;
  /// max_distance <= max(resolution, kVisualFloor).
  bool ok = false;
};

InvarianceReport schottky_invariance(const SchottkyGenerators& sg, const std::vector<BoundaryPoint>& cloud,
                                     int word_len, std::size_t tested, std::uint64_t seed);

}  // namespace heis
