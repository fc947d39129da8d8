#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "lattice.hpp"
#include "numeric.hpp"
#include "series.hpp"

namespace mc {

// L = sum_{i,d} p[i][d] x^d theta^i acting on series in x = 1/a.
struct PicardFuchs {
  std::vector<std::vector<mpq_class>> p;
  unsigned order() const { return static_cast<unsigned>(p.size()) - 1; }
  unsigned degree() const { return p.empty() ? 0 : static_cast<unsigned>(p[0].size()) - 1; }
  mpq_class poly_at(unsigned d, const mpq_class& s) const;  // P_d(s) = sum_i p[i][d] s^i
  RationalSeries apply(const RationalSeries& f) const;
  std::string str() const;
};

PicardFuchs pf_discover(const RationalSeries& omega, unsigned max_order, unsigned max_degree);
PicardFuchs pf_discover(const CurveFamily& f, unsigned max_order = 3, unsigned max_degree = 12);

RationalSeries omega_gamma_series(const CurveFamily& f, unsigned n);
RationalSeries mirror_map_series(const CurveFamily& f, unsigned n);

// Exact genus-one data at series order n (all series in x = 1/a).
struct GenusOneData {
  std::string family_id;
  unsigned order = 0;
  int r = 0, r_polar = 0;
  mpq_class T, B_circ;
  std::vector<mpq_class> ct;  // [phi^k]_0
  RationalSeries omega, s, h, H, G;
  PicardFuchs pf;
  std::vector<mpq_class> N;  // N[k] for k <= order, N[0] = 0
  double a_hat = 0;          // < 0
};

GenusOneData genus_one_data(const CurveFamily& f, unsigned order = 120);

struct GWTable {
  unsigned kmax = 0;
  std::vector<mpq_class> N;  // index k
  int r = 0, r_polar = 0;
  mpq_class T, B_circ;
};

GWTable gw_extract(const CurveFamily& f, unsigned kmax);
// n_k with N_k = sum_{j | k} n_{k/j} / j^3.
std::vector<mpq_class> gv_from_gw(const std::vector<mpq_class>& N);

struct ConifoldLocation {
  double a_hat = 0;
  double x = 0, y = 0;
  double grad_norm = 0;
};
ConifoldLocation conifold_locate(const CurveFamily& f);

struct PeriodValue {
  Real a, t, omega;
  Real Omega_re, Omega_im;
  Real R_gamma_im;  // R_gamma = -2 pi i t is purely imaginary
  Real R_beta_re, R_beta_im;
  Real nu, V;
  Real nu_functional;  // (R_gamma Omega - R_beta)/4pi^2 from the x-series route
  double error = 0;
  unsigned order = 0, bits = 0;
};

// Evaluates at real a > |a_hat| using the current Real precision.
PeriodValue evaluate_periods(const GenusOneData& d, const Real& a, double tol = 1e-20);

// R_beta at a = -u from the instanton expansion, u > |a_hat|.
Real regulator_beta_negative_series(const GenusOneData& d, const Real& u, double* error = nullptr);

struct QuadratureResult {
  Real value;
  double error = 0;
};
QuadratureResult regulator_quadrature_p1xp1(const Real& u, double tol = 1e-25);

// Re t(a_hat) with a tail estimate from fitting c/k^2 to the last terms.
Real real_t_at_conifold(const GenusOneData& d, double* error = nullptr);

// Bound on sum_{k>n} w(k) |c_k| q^k for a geometric majorant fitted to the last
// ten nonzero c_k; infinity when the majorant ratio reaches 1.
double geometric_tail(const std::vector<mpq_class>& c, const Real& q, int weight_power, double weight_t = 0);

}  // namespace mc
