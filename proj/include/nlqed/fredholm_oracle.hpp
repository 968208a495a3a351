#pragma once

#include "nlqed/coupling.hpp"

namespace nlqed {

/// Brute-force alpha: assembles the Fredholm kernel
///   M(r, s) = g23(r, s) w_s eps(s, W23) sqrt(eps''(s, W23))
/// and the right-hand side K sqrt(eps''(x2) eps''(x3)) chi2(r) g2(r, x2) g3(r, x3),
/// then solves M alpha = rhs column by column with a dense LU factorization.
/// Meant for small grids only (n^2 right-hand sides).
CouplingTensor solve_fredholm_dense(const Geometry1D& geom, const GreenField& g2, const GreenField& g3,
                                    const GreenField& g23, double eps_min = 1e-6);

/// max |a - b| / max |b| over all entries.
double tensor_deviation(const CouplingTensor& a, const CouplingTensor& b);

}  // namespace nlqed
