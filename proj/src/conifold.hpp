#pragma once

#include <gmpxx.h>

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "numeric.hpp"

namespace mc {

// Maximal conifold point of F_{g,g}: x + y + sum_j a_j x^{1-j} y^{1-j} + x^{-g} y^{-g}.
struct ConifoldData {
  int g = 0;
  std::vector<mpz_class> a_hat;     // index j - 1
  std::vector<double> nodes;        // x_j = y_j
  std::vector<double> residuals;    // max(|F(x,x)|, |d/dx F(x,x)|) at each node
  std::vector<double> second_derivative;  // d^2/dx^2 F(x,x) at each node, nonzero for a double root
  std::vector<double> hessian_det;  // of x^g y^g F at each node
  std::vector<double> hessian_rel;  // |det| / (sum of squared entries)
  std::vector<mpz_class> chebyshev;  // coefficients of T_{2g+1}, index = power
};

// T_n by the integer recurrence T_{k+1} = 2w T_k - T_{k-1}; index = power of w.
std::vector<mpz_class> chebyshev_t(int n);
ConifoldData chebyshev_conifold(int g);

struct RingPoint {
  double a_ring = 0, x_ring = 0;
  double residual = 0;  // max(|F|, |dF/dx|) at (x, x)
  double residue = 0;   // Res of varpi_j at the node
};
RingPoint ring_point(int g, int j);

struct ConifoldMultiple {
  long kappa = 0;
  double limit = 0;   // lim b_r c^r r
  double spread = 0;  // of the extrapolated values over the last 20 terms
  double ratio = 0;   // limit / residue before rounding
};
// kappa = lim b_r c^r r / residue, with 3-level Richardson extrapolation in 1/r.
ConifoldMultiple conifold_multiple(const std::vector<Real>& b, const Real& c, const Real& residue);

// Coefficients b_r of the a_j-axis period S = sum_r b_r s^r, s = a_j^{-m_j}, exact.
std::vector<mpz_class> axis_period_coefficients(int g, int j, unsigned rmax);
ConifoldMultiple conifold_multiple_gg(int g, int j, unsigned rmax = 400);

// D_2(z) = Im Li_2(z) + arg(1 - z) log|z|.
double bloch_wigner(std::complex<double> z);
double dmn(int m, int n);

// zeta_order^num, optionally shifted to 1 + zeta_order^num.
struct DivisorPoint {
  int num = 0, order = 1;
  bool one_plus = false;
  std::complex<double> value() const;
  friend bool operator<(const DivisorPoint& a, const DivisorPoint& b) {
    return std::tie(a.order, a.num, a.one_plus) < std::tie(b.order, b.num, b.one_plus);
  }
};
struct FormalDivisor {
  std::map<DivisorPoint, long> terms;
  void add(DivisorPoint p, long mult);
  double d2() const;
  long degree() const;
};

struct Uniformization {
  int g = 0, j = 0;
  std::function<std::complex<double>(std::complex<double>)> X, Y;
  FormalDivisor divisor;  // sum d_a e_b [alpha_a / beta_b]
  FormalDivisor reduced;  // 2(2g+1)[1 + zeta^{g-j+1}]
  double max_residual = 0;
};
Uniformization uniformization(int g, int j);
// Uses [x] + [1/x] = 0 and [x] + [conj x] = 0 on roots of unity; drops [1].
FormalDivisor reduce_roots_of_unity(const FormalDivisor& d);

struct IdentityReport {
  int g = 0, j = 0;
  double lhs = 0, rhs = 0;
  double rhs_truncated = 0;  // log|a_j| minus the partial sum through degree_max
  double tail = 0, tail_bound = 0;
  double residual = 0;
  double fit_c = 0, fit_d = 0, fit_rms = 0;
  long terms = 0;
  int degree_max = 0;
  std::vector<double> increments;  // per total degree, index = degree
};
// Lattice sum grouped by the total GKZ degree of the monomial.
IdentityReport theorem_b_check(int g, int j, int degree_max);
double theorem_b_lhs(int g, int j);
// sum_k l_k c_k = total GKZ degree of the term indexed by l.
std::vector<mpq_class> gkz_degree_weights(int g, int j);

}  // namespace mc
