#pragma once

#include <vector>

#include "numeric.hpp"

namespace mc {

// Eigenvalues (ascending) of a real symmetric matrix given by its lower triangle in packed
// row-major order (entry (i,k), k <= i, at i(i+1)/2 + k). Householder tridiagonalization
// followed by implicit QL, carried out in MPFR at the requested precision.
std::vector<Real> symmetric_eigenvalues(const std::vector<Real>& lower, size_t n, unsigned bits);

// Hermitian A = Re + i Im, both full row-major n x n. Uses the real symmetric embedding
// [[Re, -Im], [Im, Re]] whose spectrum is that of A with every eigenvalue doubled.
std::vector<Real> hermitian_eigenvalues(const std::vector<Real>& re, const std::vector<Real>& im, size_t n, unsigned bits);

// Eigenvalues of a symmetric tridiagonal matrix (diagonal d, off-diagonal e[i] = T(i+1,i)).
std::vector<Real> tridiagonal_eigenvalues(std::vector<Real> d, std::vector<Real> e);

}  // namespace mc
