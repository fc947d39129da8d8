#pragma once

#include <complex>
#include <vector>

#include "lattice.hpp"

namespace mc {

struct EigenfunctionReport {
  double a = 0;
  std::complex<double> r_gamma;     // regulator on gamma, lifted to be imaginary
  std::complex<double> w_gamma;     // integral of dz/s over gamma
  std::complex<double> rho;         // r_gamma / w_gamma
  std::vector<double> r;
  std::vector<std::complex<double>> psi;
  double decay_constant = 0;        // C fitted on |r| <= 5
  double decay_violation = 0;       // max |psi(r)| e^{|r|/2} / C over the grid
  double max_abs = 0;
  double path_dependence = 0;       // max |psi_A - psi_B| / max |psi|, paths differing by beta
  double residual = 0;              // max |(phi psi)(r) - a psi(r)| / max (|a psi| + |2 cosh r psi|)
  std::vector<double> branch_points;  // real ramification points in z = log(-x1)
};

// Builds psi(r) = (chi(r) - chi(iota r)) / delta(r) by path integration on the
// z-plane double cover, x1 = -e^z. Needs Delta inside R x [-1, 1] with monomial
// upper and lower parts and four real ramification points.
EigenfunctionReport eigenfunction_check(const CurveFamily& f, double a, const std::vector<double>& r_grid);

}  // namespace mc
