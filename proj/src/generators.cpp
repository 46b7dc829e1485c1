#include "heis/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "heis/rng.hpp"

namespace heis {

// --- HeisIFS ---------------------------------------------------------------------------

HeisIFS::HeisIFS(std::vector<HeisSimilarity> maps, std::vector<double> probabilities)
    : maps_(std::move(maps)), p_(std::move(probabilities)) {
  require(!maps_.empty(), "an IFS needs at least one map");
  const int d = maps_.front().dim();
  for (const auto& f : maps_) {
    if (f.dim() != d) throw DimensionMismatch("IFS maps of different dimension");
    require(f.ratio() > 0.0 && f.ratio() < 1.0, "IFS ratios must lie in (0, 1)");
  }
  if (p_.empty()) p_.assign(maps_.size(), 1.0 / static_cast<double>(maps_.size()));
  require(p_.size() == maps_.size(), "one probability per map");
  double sum = 0.0;
  for (double p : p_) {
    require(p > 0.0, "IFS probabilities must be positive");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "IFS probabilities must sum to 1");
}

double HeisIFS::max_ratio() const {
  double r = 0.0;
  for (const auto& f : maps_) r = std::max(r, f.ratio());
  return r;
}

double HeisIFS::similarity_dimension() const {
  auto moran = [&](double s) {
    double acc = 0.0;
    for (const auto& f : maps_) acc += std::pow(f.ratio(), s);
    return acc - 1.0;
  };
  if (maps_.size() == 1) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (moran(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (moran(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

HeisPoint HeisIFS::fixed_point(std::size_t i) const {
  const HeisSimilarity& f = maps_.at(i);
  HeisPoint x = HeisPoint::identity(dim());
  for (int it = 0; it < 2000; ++it) {
    HeisPoint y = f.apply(x);
    const double step = koranyi_dist(x, y);
    x = std::move(y);
    if (step <= 1e-16 * (1.0 + koranyi_gauge(x))) break;
  }
  return x;
}

double HeisIFS::attractor_radius(const HeisPoint& centre) const {
  double r = 0.0;
  for (const auto& f : maps_) r = std::max(r, koranyi_dist(f.apply(centre), centre) / (1.0 - f.ratio()));
  return r * (1.0 + 1e-12) + 1e-15;
}

HeisPoint coding_point(const HeisIFS& ifs, const Word& word, const HeisPoint& x0) {
  require(!word.empty(), "coding_point needs a nonempty word");
  HeisPoint y = x0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    require(*it < ifs.size(), "word letter out of range");
    y = ifs.maps()[*it].apply(y);
  }
  return y;
}

namespace {

std::uint32_t draw_letter(CounterRng& rng, const std::vector<double>& cumulative) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), cumulative.size() - 1));
}

std::vector<double> cumulative_of(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  std::partial_sum(p.begin(), p.end(), c.begin());
  return c;
}

}  // namespace

std::vector<Word> random_words(const HeisIFS& ifs, std::size_t n, int length, std::uint64_t seed) {
  require(length >= 1, "word length must be positive");
  const auto cum = cumulative_of(ifs.probabilities());
  std::vector<Word> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, i);
    out[i].resize(static_cast<std::size_t>(length));
    for (auto& a : out[i]) a = draw_letter(rng, cum);
  }
  return out;
}

std::vector<HeisPoint> sample_attractor(const HeisIFS& ifs, const SampleMode& mode) {
  const HeisPoint origin = HeisPoint::identity(ifs.dim());
  std::vector<HeisPoint> out;
  if (const auto* ex = std::get_if<Exhaustive>(&mode)) {
    require(ex->depth >= 1, "exhaustive depth must be positive");
    const double total = std::pow(static_cast<double>(ifs.size()), ex->depth);
    if (total > static_cast<double>(kExhaustiveBudget)) {
      throw BudgetExceeded("exhaustive sampling would produce " + std::to_string(total) +
                           " points; use random mode");
    }
    out.reserve(static_cast<std::size_t>(total));
    // Words in lexicographic order, built as f_{a_0} o ... o f_{a_{depth-1}}(0).
    std::vector<HeisSimilarity> stack{HeisSimilarity::identity(ifs.dim())};
    Word word;
    auto rec = [&](auto&& self, int level) -> void {
      if (level == ex->depth) {
        out.push_back(stack.back().apply(origin));
        return;
      }
      for (std::size_t a = 0; a < ifs.size(); ++a) {
        stack.push_back(compose_similarities(stack.back(), ifs.maps()[a]));
        self(self, level + 1);
        stack.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }
  const auto& rw = std::get<RandomWords>(mode);
  const auto words = random_words(ifs, rw.n, rw.length, rw.seed);
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(coding_point(ifs, w, origin));
  return out;
}

PointMeasure sample_self_similar_measure(const HeisIFS& ifs, std::size_t n, int length, std::uint64_t seed) {
  require(n >= 1, "need at least one atom");
  return PointMeasure::uniform(Ambient::Heisenberg, sample_attractor(ifs, RandomWords{n, length, seed}));
}

// --- quotient and OSC ---------------------------------------------------------------------

PlanarIFS quotient_ifs(const HeisIFS& ifs) {
  PlanarIFS out;
  for (const auto& f : ifs.maps()) out.maps.push_back({f.rotation(), f.ratio(), f.offset().u});
  out.probabilities = ifs.probabilities();
  return out;
}

PlanarIFS planar_ifs(const std::vector<CVec>& translations, const std::vector<double>& ratios) {
  require(translations.size() == ratios.size() && !translations.empty(), "one ratio per translation");
  PlanarIFS out;
  for (std::size_t i = 0; i < translations.size(); ++i) {
    const int d = static_cast<int>(translations[i].size());
    out.maps.push_back({CMat::Identity(d, d), ratios[i], translations[i]});
  }
  out.probabilities.assign(translations.size(), 1.0 / static_cast<double>(translations.size()));
  return out;
}

const char* to_string(OscVerdict v) {
  switch (v) {
    case OscVerdict::Pass:
      return "pass";
    case OscVerdict::PassWithContact:
      return "pass-with-contact";
    case OscVerdict::Fail:
      return "fail";
  }
  return "fail";
}

namespace {

using Polygon = std::array<cplx, 4>;

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

/// Distance between disjoint convex polygons, or minus the smallest axis overlap.
double polygon_separation(const Polygon& p, const Polygon& q) {
  double min_overlap = std::numeric_limits<double>::infinity();
  bool separated = false;
  for (const Polygon* poly : {&p, &q}) {
    for (std::size_t i = 0; i < poly->size(); ++i) {
      const cplx edge = (*poly)[(i + 1) % poly->size()] - (*poly)[i];
      const cplx axis = cplx(-edge.imag(), edge.real()) / std::abs(edge);
      auto range = [&](const Polygon& r) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const cplx& v : r) {
          const double t = (v * std::conj(axis)).real();
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
        return std::pair{lo, hi};
      };
      const auto [plo, phi_] = range(p);
      const auto [qlo, qhi] = range(q);
      const double overlap = std::min(phi_, qhi) - std::max(plo, qlo);
      if (overlap < 0.0) separated = true;
      min_overlap = std::min(min_overlap, overlap);
    }
  }
  if (!separated) return -min_overlap;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      dist = std::min(dist, point_segment_distance(p[i], q[j], q[(j + 1) % 4]));
      dist = std::min(dist, point_segment_distance(q[i], p[j], p[(j + 1) % 4]));
    }
  }
  return dist;
}

}  // namespace

OscReport osc_audit_quotient(const PlanarIFS& ifs, const OpenSetCandidate& candidate, double tol) {
  require(!ifs.maps.empty(), "OSC audit needs at least one map");
  OscReport rep;
  rep.min_separation = std::numeric_limits<double>::infinity();
  rep.containment_slack = std::numeric_limits<double>::infinity();
  const std::size_t k = ifs.maps.size();

  if (const auto* disk = std::get_if<DiskCandidate>(&candidate)) {
    require(disk->radius > 0.0, "candidate disk radius must be positive");
    std::vector<CVec> centres;
    for (const auto& f : ifs.maps) {
      if (f.translation.size() != disk->centre.size()) throw DimensionMismatch("candidate and IFS dimensions differ");
      centres.push_back(f.apply(disk->centre));
      rep.containment_slack = std::min(rep.containment_slack,
                                       disk->radius - ((centres.back() - disk->centre).norm() + f.ratio * disk->radius));
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double sep = (centres[i] - centres[j]).norm() - (ifs.maps[i].ratio + ifs.maps[j].ratio) * disk->radius;
        if (sep < rep.min_separation) {
          rep.min_separation = sep;
          rep.worst_i = i;
          rep.worst_j = j;
        }
      }
    }
  } else {
    const auto& sq = std::get<SquareCandidate>(candidate);
    require(sq.half_side > 0.0, "candidate square must have positive size");
    const double h = sq.half_side;
    const Polygon corners{sq.centre + cplx(-h, -h), sq.centre + cplx(h, -h), sq.centre + cplx(h, h),
                          sq.centre + cplx(-h, h)};
    std::vector<Polygon> images;
    for (const auto& f : ifs.maps) {
      require(f.translation.size() == 1, "square candidates are planar (d = 1)");
      Polygon img;
      for (std::size_t v = 0; v < 4; ++v) {
        CVec z(1);
        z[0] = corners[v];
        img[v] = f.apply(z)[0];
        const cplx rel = img[v] - sq.centre;
        rep.containment_slack =
            std::min(rep.containment_slack, std::min(h - std::abs(rel.real()), h - std::abs(rel.imag())));
      }
      images.push_back(img);
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double sep = polygon_separation(images[i], images[j]);
        if (sep < rep.min_separation) {
          rep.min_separation = sep;
          rep.worst_i = i;
          rep.worst_j = j;
        }
      }
    }
  }
  if (k == 1) rep.min_separation = std::numeric_limits<double>::infinity();
  const double worst = std::min(rep.min_separation, rep.containment_slack);
  if (worst < -tol) {
    rep.verdict = OscVerdict::Fail;
  } else if (worst <= tol) {
    rep.verdict = OscVerdict::PassWithContact;
  } else {
    rep.verdict = OscVerdict::Pass;
  }
  return rep;
}

// --- conditional measures of self-similar measures ------------------------------------------

SelfSimilarSource::SelfSimilarSource(HeisIFS ifs, int tail_length, std::size_t attempt_factor)
    : ifs_(std::move(ifs)), centre_(HeisPoint::identity(ifs_.dim())), radius_(0.0), tail_length_(tail_length),
      attempt_factor_(attempt_factor) {
  require(tail_length >= 1 && attempt_factor >= 1, "invalid sampler parameters");
  CVec u = CVec::Zero(ifs_.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < ifs_.size(); ++i) {
    const HeisPoint f = ifs_.fixed_point(i);
    u += f.u;
    s += f.s;
  }
  centre_ = HeisPoint(u / static_cast<double>(ifs_.size()), s / static_cast<double>(ifs_.size()));
  radius_ = ifs_.attractor_radius(centre_);
}

PointMeasure SelfSimilarSource::magnified(const TileSystem& ts, const TileAddress& addr, std::size_t n,
                                          std::uint64_t seed) const {
  require(n >= 1, "need at least one sample");
  if (ts.dim() != ifs_.dim()) throw DimensionMismatch("IFS and tile system dimensions differ");
  const int m = addr.depth();
  const HeisPoint atom_centre = address_to_point(ts, addr, HeisPoint::identity(ts.dim()));
  const double atom_radius = ts.radius() * std::pow(static_cast<double>(ts.base()), -m) * (1.0 + 1e-9);

  struct Cylinder {
    HeisSimilarity f;
    double weight;
  };
  std::vector<Cylinder> frontier{{HeisSimilarity::identity(ifs_.dim()), 1.0}};
  std::vector<Cylinder> leaves;
  std::size_t visited = 0;
  while (!frontier.empty()) {
    std::vector<Cylinder> next;
    for (auto& c : frontier) {
      const double reach = c.f.ratio() * radius_;
      if (koranyi_dist(c.f.apply(centre_), atom_centre) > reach + atom_radius) continue;
      if (reach <= atom_radius) {
        leaves.push_back(std::move(c));
        continue;
      }
      for (std::size_t a = 0; a < ifs_.size(); ++a) {
        next.push_back({compose_similarities(c.f, ifs_.maps()[a]), c.weight * ifs_.probabilities()[a]});
      }
    }
    visited += next.size();
    if (visited > 2'000'000) throw BudgetExceeded("too many IFS cylinders meet atom " + to_string(addr));
    frontier = std::move(next);
  }
  if (leaves.empty()) throw ZeroMass("self-similar measure gives zero mass to atom " + to_string(addr));

  std::vector<double> cum(leaves.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < leaves.size(); ++i) cum[i] = (acc += leaves[i].weight);
  const auto pcum = cumulative_of(ifs_.probabilities());

  std::vector<HeisPoint> accepted;
  accepted.reserve(n);
  const std::size_t max_attempts = attempt_factor_ * n;
  for (std::size_t j = 0; j < max_attempts && accepted.size() < n; ++j) {
    CounterRng rng(seed, j);
    const std::uint32_t leaf = draw_letter(rng, cum);
    HeisPoint y = centre_;
    Word tail(static_cast<std::size_t>(tail_length_));
    for (auto& a : tail) a = draw_letter(rng, pcum);
    y = coding_point(ifs_, tail, y);
    y = leaves[leaf].f.apply(y);
    try {
      if (atom_address(ts, y, m) == addr) accepted.push_back(std::move(y));
    } catch (const BoundaryAmbiguous&) {
    }
  }
  if (accepted.empty()) throw ZeroMass("no self-similar samples landed in atom " + to_string(addr));
  return rescale_to_unit(PointMeasure::uniform(Ambient::Heisenberg, std::move(accepted)), ts, addr);
}

}  // namespace heis
