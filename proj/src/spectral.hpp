#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "numeric.hpp"

namespace mc {

struct Monomial {
  int m1 = 0, m2 = 0;
  mpq_class a;  // curve coefficient a_m
  // Coefficient of x1^m1 x2^m2 in the ordered-product form; the Weyl symbol carries a_m itself.
  mpq_class signed_coeff() const { return (m1 * m2) % 2 ? mpq_class(-a) : a; }
};

struct SpectralProblem {
  std::string family_id;
  std::vector<Monomial> monomials;
  double hbar = 2 * M_PI;
  size_t basis_size = 200;
  int r_polar = 0;
  double c() const { return std::sqrt(hbar / 2); }
};

// Boundary monomials of a tempered genus-one family at hbar.
SpectralProblem make_problem(const CurveFamily& f, size_t basis_size = 200, double hbar = 2 * M_PI);

// Dense complex matrix, row-major.
struct ComplexMatrix {
  size_t n = 0;
  std::vector<Real> re, im;
};

// <j| exp(m1 x + m2 y) |k> in the oscillator basis, x = c(A + A^+), y = ic(A^+ - A).
ComplexMatrix exp_linear_matrix(int m1, int m2, double hbar, size_t n, unsigned bits = 128);

// Operator with the basis phases |k> -> e^{i phase k}|k>; real when the monomial set has a
// reflection symmetry, and block diagonal by index mod period under a rotation symmetry.
struct OperatorMatrix {
  ComplexMatrix h;
  double phase = 0;
  bool real = false;
  int period = 1;
  unsigned bits = 0;
  double hermiticity_defect = 0;  // max |H - H^+| / max |H|
};

unsigned working_bits(const SpectralProblem& p);
OperatorMatrix build_operator(const SpectralProblem& p, unsigned bits = 0);
std::vector<Real> operator_eigenvalues(const OperatorMatrix& op);

struct SpectrumResult {
  std::string family_id;
  std::vector<double> eigenvalues;
  std::vector<size_t> basis_sizes;
  std::vector<std::vector<double>> history;  // lowest k at each basis size
  std::vector<double> convergence;           // |lambda(N) - lambda(previous N)|
  bool converged = false;
};

SpectrumResult low_spectrum(SpectralProblem p, size_t k, const std::vector<size_t>& schedule = {100, 200, 400},
                            double rel_tol = 1e-6, size_t cap = 800);

struct FredholmValue {
  double value = 0;
  double tail = 0;   // log of the modelled contribution of unresolved modes
  double error = 0;  // uncertainty assigned to the tail model
};

// prod_{j <= k_modes} (1 - a/lambda_j) times the Weyl-growth model of the remaining factors.
FredholmValue fredholm_det(const SpectrumResult& s, double a, size_t k_modes, double tol = 1e-6);

}  // namespace mc
