#include "normal.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "error.hpp"

namespace mc {

NormalFunction::NormalFunction(const CurveFamily& f, unsigned order, unsigned bits)
    : f_(f), d_(genus_one_data(f, order)), bits_(bits) {
  if (bits < 64) throw Error(Err::InvalidArgument, "precision must be at least 64 bits");
}

PeriodValue NormalFunction::evaluate(double a, double tol) const {
  PrecisionScope ps(bits_);
  return evaluate_periods(d_, Real(a), tol);
}

double NormalFunction::nu(double a, double tol) const { return to_double(evaluate(a, tol).nu); }

double NormalFunction::V(double a, double tol) const { return to_double(evaluate(a, tol).V); }

double NormalFunction::t(double a) const {
  PrecisionScope ps(bits_);
  Real x = 1 / Real(a), acc = 0;
  for (unsigned k = d_.order + 1; k-- > 0;) acc = acc * x + (d_.s[k] == 0 ? Real(0) : to_real(d_.s[k]));
  return to_double(log(Real(a)) + acc);
}

double NormalFunction::edge(double eps_rel, double tol) const {
  double a = std::fabs(d_.a_hat) * (1 + eps_rel);
  for (int i = 0; i < 2000; ++i, a *= 1.005) {
    try {
      evaluate(a, tol);
      return a;
    } catch (const Error& e) {
      if (e.code() != Err::InsufficientOrder) throw;
    }
  }
  throw Error(Err::InsufficientOrder, "no admissible evaluation point near a_hat");
}

SpectrumPrediction predicted_spectrum(const NormalFunction& nf, int n_max, double tol) {
  const GenusOneData& d = nf.data();
  SpectrumPrediction sp;
  sp.family_id = d.family_id;
  sp.a_hat = d.a_hat;
  sp.edge = nf.edge();
  sp.nu_edge = nf.nu(sp.edge, 1e-8);
  if (sp.edge > std::fabs(d.a_hat) * (1 + 1e-3) * 1.0001)
    sp.flags.push_back("left edge moved to " + fmt17(sp.edge) + " by the series tail bound");
  const double eval_tol = std::min(1e-12, tol * 1e-2);
  const double T0 = d.T.get_d();
  double prev = sp.edge;
  for (int n = static_cast<int>(std::floor(sp.nu_edge)) + 1; n <= n_max; ++n) {
    auto f = [&](double a) { return nf.nu(a, eval_tol) - n; };
    double guess = n > T0 ? std::exp(std::sqrt(8 * M_PI * M_PI * (n - T0) / d.r_polar)) : prev * 1.1;
    double lo = std::max(prev, std::min(guess / 1.5, guess)), hi = std::max(guess * 1.5, lo * 1.1);
    if (lo <= sp.edge) lo = sp.edge;
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; it < 60 && flo > 0; ++it) {
      lo = std::max(sp.edge, lo / 1.5);
      flo = f(lo);
      if (lo == sp.edge) break;
    }
    for (int it = 0; it < 60 && fhi < 0; ++it) fhi = f(hi *= 1.5);
    if (!(flo <= 0 && fhi >= 0)) throw Error(Err::BracketFailure, "could not bracket level " + std::to_string(n));
    QuantizationRoot q;
    q.n = n;
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    double a = 0.5 * (r.first + r.second);
    q.lo = r.first;
    q.hi = r.second;
    q.nu_lo = f(q.lo) + n;
    q.nu_hi = f(q.hi) + n;
    q.a = a;
    q.residual = std::fabs(f(a));
    if (q.residual >= tol) throw Error(Err::BracketFailure, "level " + std::to_string(n) + " residual " + fmt17(q.residual));
    if (!(q.a > std::fabs(d.a_hat))) sp.flags.push_back("root below |a_hat| at level " + std::to_string(n));
    prev = q.hi;
    sp.roots.push_back(q);
  }
  return sp;
}

double weyl_M(const CurveFamily& f) {
  double M = 0;
  for (const auto& [m, c] : f.boundary_coeffs)
    if (c != 0) M = std::max(M, std::exp(M_PI * (m.x * m.x + m.y * m.y) / 2.0));
  return M;
}

WeylBounds weyl_bounds(const NormalFunction& nf, double lambda) {
  const GenusOneData& d = nf.data();
  if (!(lambda > std::fabs(d.a_hat))) throw Error(Err::OutsideDomain, "lambda must exceed |a_hat|");
  WeylBounds w;
  double e = nf.edge();
  w.lower = lambda > e ? static_cast<long>(std::floor(nf.nu(lambda, 1e-8) - nf.nu(e, 1e-8))) : 0;
  w.M = weyl_M(nf.family());
  PrecisionScope ps(nf.bits());
  Real rb = regulator_beta_negative_series(d, Real(w.M * lambda));
  w.upper = to_double(rb / (4 * real_pi() * real_pi()));
  return w;
}

bool torsion_check(const NormalFunction& nf, double a) {
  if (!(a > std::fabs(nf.data().a_hat))) throw Error(Err::OutsideDomain, "a must exceed |a_hat|");
  double t = nf.t(a);
  return std::isfinite(t) && t > 0;
}

}  // namespace mc
