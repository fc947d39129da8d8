#pragma once

#include <string>
#include <vector>

#include "periods.hpp"

namespace mc {

// nu and V at real a > |a_hat| through the period engine.
class NormalFunction {
 public:
  NormalFunction(const CurveFamily& f, unsigned order = 120, unsigned bits = 256);

  const GenusOneData& data() const { return d_; }
  const CurveFamily& family() const { return f_; }
  unsigned bits() const { return bits_; }
  PeriodValue evaluate(double a, double tol = 1e-14) const;
  double nu(double a, double tol = 1e-14) const;
  double V(double a, double tol = 1e-14) const;
  // Left evaluation edge |a_hat|(1 + eps_rel), moved right to the first point where the
  // series tail is below tol; nu is increasing so nu(edge) still bounds from above.
  double edge(double eps_rel = 1e-3, double tol = 1e-8) const;
  double t(double a) const;

 private:
  CurveFamily f_;
  GenusOneData d_;
  unsigned bits_;
};

struct QuantizationRoot {
  int n = 0;
  double a = 0;
  double lo = 0, hi = 0;        // sign-change bracket
  double nu_lo = 0, nu_hi = 0;  // nu at the bracket ends
  double residual = 0;          // |nu(a) - n|
};

struct SpectrumPrediction {
  std::string family_id;
  double a_hat = 0, edge = 0, nu_edge = 0;
  std::vector<QuantizationRoot> roots;
  std::vector<std::string> flags;
};

// All a in (edge, inf) with nu(a) = n for integer n <= n_max.
SpectrumPrediction predicted_spectrum(const NormalFunction& nf, int n_max, double tol = 1e-10);

struct WeylBounds {
  long lower = 0;
  double upper = 0;
  double M = 0;
};

// lower = floor(nu(lambda) - nu(edge)); upper = R_beta(-M lambda)/4pi^2.
WeylBounds weyl_bounds(const NormalFunction& nf, double lambda);
// max over boundary monomials of a_m / (a_m e^{-pi |m|^2 / 2}).
double weyl_M(const CurveFamily& f);

// True when t(a) is real and positive, which certifies that the class is nontorsion.
bool torsion_check(const NormalFunction& nf, double a);

}  // namespace mc
