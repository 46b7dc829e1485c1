#pragma once

#include <array>
#include <vector>

#include "heis/boundary.hpp"
#include "heis/rng.hpp"

// Independent reference formulas. Nothing here calls into the library's algebra.
namespace oracle {

using heis::cplx;

/// H^1 group law written out in real coordinates (x, y, s).
std::array<double, 3> mul_d1(const std::array<double, 3>& a, const std::array<double, 3>& b);
/// Korányi gauge from real coordinates (re u1, im u1, ..., s).
double gauge(const std::vector<double>& coords);
/// Unit Korányi ball volume by Simpson quadrature of the slice volumes over s.
double ball_volume(int d);
/// Root of k r^s = 1.
double moran_equal(int k, double r);
/// Explicit sum for the form of signature (1, d+1).
cplx hermitian(const heis::BVec& x, const heis::BVec& y);
/// Smallest singular value of [x/|x|, y/|y|, z/|z|].
double third_singular_value(const heis::BVec& x, const heis::BVec& y, const heis::BVec& z);
/// Number of distinct cells of side 1/2^k met by points of the unit square.
std::size_t grid_cells(const std::vector<std::array<double, 2>>& pts, int k);
/// Plain ordinary least-squares slope.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

heis::HeisPoint random_point(heis::CounterRng& rng, int d, double scale = 1.0);
heis::CMat random_unitary(heis::CounterRng& rng, int d);

}  // namespace oracle
