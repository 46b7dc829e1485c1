#include "heis/multivector.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace heis {

namespace {

constexpr int kMaxN = kMaxDim + 2;

struct GradeTables {
  // masks[n][k]: k-subsets of {0..n-1} in increasing mask order; index[n][mask]: position.
  std::array<std::array<std::vector<std::uint32_t>, kMaxN + 1>, kMaxN + 1> masks;
  std::array<std::array<int, 1u << kMaxN>, kMaxN + 1> index{};

  GradeTables() {
    for (int n = 0; n <= kMaxN; ++n) {
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        auto& list = masks[n][std::popcount(m)];
        index[n][m] = static_cast<int>(list.size());
        list.push_back(m);
      }
    }
  }
};

const GradeTables& tables() {
  static const GradeTables t;
  return t;
}

void check_n(int n) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("exterior algebra dimension out of range");
}

void check_compatible(const Multivector& a, const Multivector& b) {
  if (a.n() != b.n()) throw DimensionMismatch("multivectors over different spaces");
  if (a.grade() != b.grade()) throw std::invalid_argument("multivector grades differ");
}

std::uint32_t full_mask(int n) { return (1u << n) - 1u; }

}  // namespace

Multivector::Multivector(int n, int grade) : n_(n), grade_(grade) {
  check_n(n);
  require(grade >= 0 && grade <= n, "multivector grade out of range");
  coeffs_.assign(tables().masks[n][grade].size(), cplx(0.0));
}

Multivector Multivector::scalar(int n, cplx c) {
  Multivector m(n, 0);
  m.coeffs_[0] = c;
  return m;
}

Multivector Multivector::basis(int n, std::uint32_t mask) {
  check_n(n);
  require(mask <= full_mask(n), "basis mask out of range");
  Multivector m(n, std::popcount(mask));
  m.set_coeff(mask, 1.0);
  return m;
}

Multivector Multivector::pseudoscalar(int n) { return basis(n, full_mask(n)); }

Multivector Multivector::from_vector(const BVec& v) {
  Multivector m(static_cast<int>(v.size()), 1);
  for (Eigen::Index k = 0; k < v.size(); ++k) m.set_coeff(1u << k, v[k]);
  return m;
}

const std::vector<std::uint32_t>& Multivector::masks() const { return tables().masks[n_][grade_]; }

cplx Multivector::coeff(std::uint32_t mask) const {
  require(std::popcount(mask) == grade_ && mask <= full_mask(n_), "mask does not match grade");
  return coeffs_[tables().index[n_][mask]];
}

void Multivector::set_coeff(std::uint32_t mask, cplx c) {
  require(std::popcount(mask) == grade_ && mask <= full_mask(n_), "mask does not match grade");
  coeffs_[tables().index[n_][mask]] = c;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_compatible(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_compatible(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(cplx c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

cplx Multivector::dot(const Multivector& o) const {
  check_compatible(*this, o);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += std::conj(coeffs_[i]) * o.coeffs_[i];
  return acc;
}

double Multivector::norm() const {
  double acc = 0.0;
  for (const auto& x : coeffs_) acc += std::norm(x);
  return std::sqrt(acc);
}

int wedge_sign(std::uint32_t s, std::uint32_t t) {
  int inversions = 0;
  for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(s >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

Multivector progressive(const Multivector& a, const Multivector& b) {
  if (a.n() != b.n()) throw DimensionMismatch("progressive: multivectors over different spaces");
  const int n = a.n();
  if (a.grade() + b.grade() > n) throw std::invalid_argument("progressive: grade overflow");
  Multivector out(n, a.grade() + b.grade());
  const auto& ma = a.masks();
  const auto& mb = b.masks();
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const cplx ca = a.coeffs()[i];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if ((ma[i] & mb[j]) != 0) continue;
      const cplx cb = b.coeffs()[j];
      if (cb == 0.0) continue;
      const std::uint32_t m = ma[i] | mb[j];
      out.coeffs()[tables().index[n][m]] += static_cast<double>(wedge_sign(ma[i], mb[j])) * ca * cb;
    }
  }
  return out;
}

Multivector dual(const Multivector& a) {
  const int n = a.n();
  Multivector out(n, n - a.grade());
  const auto& ma = a.masks();
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const std::uint32_t c = full_mask(n) & ~ma[i];
    out.set_coeff(c, static_cast<double>(wedge_sign(ma[i], c)) * a.coeffs()[i]);
  }
  return out;
}

Multivector undual(const Multivector& a) {
  const int n = a.n();
  Multivector out(n, n - a.grade());
  const auto& ma = a.masks();
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const std::uint32_t c = full_mask(n) & ~ma[i];
    out.set_coeff(c, static_cast<double>(wedge_sign(c, ma[i])) * a.coeffs()[i]);
  }
  return out;
}

Multivector regressive(const Multivector& a, const Multivector& b) {
  if (a.n() != b.n()) throw DimensionMismatch("regressive: multivectors over different spaces");
  if (a.grade() + b.grade() < a.n()) throw std::invalid_argument("regressive: grade underflow");
  return undual(progressive(dual(a), dual(b)));
}

Multivector qmap(const BVec& x) {
  const int n = static_cast<int>(x.size());
  const int d = n - 2;
  check_dim(d);
  require(x.squaredNorm() > 0.0, "qmap: zero vector");
  const BMat j = form_matrix(d);
  const BVec jx = j * x;
  Multivector q(n, n - 1);
  for (int k = 0; k < n; ++k) {
    const double sign = ((n - 1 - k) & 1) ? -1.0 : 1.0;
    q.set_coeff(full_mask(n) & ~(1u << k), sign * std::conj(jx[k]));
  }
  return q;
}

}  // namespace heis
