#pragma once

#include <cstdint>
#include <vector>

#include "heis/boundary.hpp"

namespace heis {

/// Homogeneous element of the exterior algebra over C^n, n = d+2.
///
/// Basis k-vectors e_S are indexed by k-subsets S of {0, ..., n-1}, stored in increasing
/// order of their bitmask. Coefficients are complex.
class Multivector {
 public:
  Multivector(int n, int grade);

  static Multivector zero(int n, int grade) { return Multivector(n, grade); }
  static Multivector scalar(int n, cplx c);
  /// e_S for the subset encoded by `mask`.
  static Multivector basis(int n, std::uint32_t mask);
  /// e_0 ^ ... ^ e_{n-1}.
  static Multivector pseudoscalar(int n);
  static Multivector from_vector(const BVec& v);

  int n() const { return n_; }
  int grade() const { return grade_; }
  std::size_t size() const { return coeffs_.size(); }
  /// Bitmasks of the basis k-vectors, aligned with coeffs().
  const std::vector<std::uint32_t>& masks() const;
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }

  cplx coeff(std::uint32_t mask) const;
  void set_coeff(std::uint32_t mask, cplx c);

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(cplx c);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(cplx c, Multivector a) { return a *= c; }

  /// Coefficientwise Hermitian inner product sum conj(a_S) b_S.
  cplx dot(const Multivector& o) const;
  double norm() const;

 private:
  int n_;
  int grade_;
  std::vector<cplx> coeffs_;
};

/// Sign of e_S ^ e_T for disjoint S, T: (-1)^{#{(s, t) in S x T : s > t}}.
int wedge_sign(std::uint32_t s, std::uint32_t t);

/// Exterior product a v b.
Multivector progressive(const Multivector& a, const Multivector& b);
/// e_S -> sign(S, S^c) e_{S^c}.
Multivector dual(const Multivector& a);
/// Inverse of dual: e_T -> sign(T^c, T) e_{T^c}.
Multivector undual(const Multivector& a);
/// undual(dual(a) v dual(b)).
Multivector regressive(const Multivector& a, const Multivector& b);

/// Grade-(n-1) multivector with <x, y> f = Q(x) v y for all y. Conjugate-linear in x.
Multivector qmap(const BVec& x);

}  // namespace heis
