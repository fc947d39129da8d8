#include "periods.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace mc {

namespace {

// Basis of the right nullspace of a rational matrix (row-major, cols columns).
std::vector<std::vector<mpq_class>> nullspace(std::vector<std::vector<mpq_class>> m, size_t cols) {
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < m.size(); ++c) {
    size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    mpq_class inv = 1 / m[row][c];
    for (size_t k = c; k < cols; ++k) m[row][k] *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (size_t k = c; k < cols; ++k)
        if (m[row][k] != 0) m[r][k] -= f * m[row][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(cols, mpq_class(0));
    v[free] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(v);
  }
  return basis;
}

mpq_class ipow(const mpq_class& s, unsigned i) {
  mpq_class r = 1;
  for (unsigned k = 0; k < i; ++k) r *= s;
  return r;
}

}  // namespace

mpq_class PicardFuchs::poly_at(unsigned d, const mpq_class& s) const {
  mpq_class r = 0;
  for (unsigned i = 0; i <= order(); ++i) r += p[i][d] * ipow(s, i);
  return r;
}

RationalSeries PicardFuchs::apply(const RationalSeries& f) const {
  RationalSeries r = RationalSeries::zero(f.var(), f.order());
  for (unsigned n = 0; n <= f.order(); ++n) {
    mpq_class acc = 0;
    for (unsigned d = 0; d <= degree() && d <= n; ++d)
      if (f[n - d] != 0) acc += poly_at(d, mpq_class(n - d)) * f[n - d];
    r[n] = acc;
  }
  return r;
}

std::string PicardFuchs::str() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i <= order(); ++i)
    for (unsigned d = 0; d <= degree(); ++d) {
      if (p[i][d] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << p[i][d].get_str() << ")*x^" << d << "*theta^" << i;
    }
  return os.str();
}

PicardFuchs pf_discover(const RationalSeries& omega, unsigned max_order, unsigned max_degree) {
  const unsigned n = omega.order();
  const unsigned holdout = 20;
  for (unsigned ord = 1; ord <= max_order; ++ord)
    for (unsigned deg = 0; deg <= max_degree; ++deg) {
      size_t cols = static_cast<size_t>(ord + 1) * (deg + 1);
      if (n < cols + holdout + 1) continue;
      unsigned fit = n - holdout;
      std::vector<std::vector<mpq_class>> m;
      for (unsigned k = 0; k <= fit; ++k) {
        std::vector<mpq_class> row(cols, mpq_class(0));
        bool any = false;
        for (unsigned i = 0; i <= ord; ++i)
          for (unsigned d = 0; d <= deg && d <= k; ++d) {
            const mpq_class& c = omega[k - d];
            if (c == 0) continue;
            row[i * (deg + 1) + d] = ipow(mpq_class(k - d), i) * c;
            any = true;
          }
        if (any) m.push_back(std::move(row));
      }
      auto basis = nullspace(m, cols);
      if (basis.empty()) continue;
      PicardFuchs L;
      L.p.assign(ord + 1, std::vector<mpq_class>(deg + 1, mpq_class(0)));
      for (unsigned i = 0; i <= ord; ++i)
        for (unsigned d = 0; d <= deg; ++d) L.p[i][d] = basis[0][i * (deg + 1) + d];
      mpq_class lead = 0;
      for (unsigned i = ord + 1; i-- > 0 && lead == 0;) lead = L.p[i][0];
      if (lead == 0) continue;
      for (auto& row : L.p)
        for (auto& c : row) c /= lead;
      RationalSeries res = L.apply(omega);
      bool ok = true;
      for (unsigned k = 0; k <= n; ++k)
        if (res[k] != 0) ok = false;
      if (ok) return L;
    }
  throw Error(Err::NoOperatorFound, "no annihilating operator within order " + std::to_string(max_order) + " and degree " +
                                        std::to_string(max_degree));
}

PicardFuchs pf_discover(const CurveFamily& f, unsigned max_order, unsigned max_degree) {
  unsigned n = (max_order + 1) * (max_degree + 1) + 20;
  return pf_discover(omega_gamma_series(f, std::max(n, 60u)), max_order, max_degree);
}

RationalSeries omega_gamma_series(const CurveFamily& f, unsigned n) {
  if (f.genus() != 1) throw Error(Err::InvalidArgument, "omega_gamma_series needs a genus-one family");
  auto ct = constant_terms(f.phi(), n);
  std::vector<mpq_class> c(n + 1);
  for (unsigned k = 0; k <= n; ++k) c[k] = (k % 2 ? -1 : 1) * ct[k];
  return RationalSeries("a_inv", c);
}

RationalSeries mirror_map_series(const CurveFamily& f, unsigned n) {
  if (f.genus() != 1) throw Error(Err::InvalidArgument, "mirror_map_series needs a genus-one family");
  auto ct = constant_terms(f.phi(), n);
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  for (unsigned k = 1; k <= n; ++k) c[k] = (k % 2 ? 1 : -1) * ct[k] / k;
  return RationalSeries("a_inv", c);
}

GenusOneData genus_one_data(const CurveFamily& f, unsigned order) {
  if (f.genus() != 1) throw Error(Err::InvalidArgument, "genus-one family required");
  if (!is_reflexive(f.polygon)) throw Error(Err::NotReflexive, "polygon is not reflexive");
  if (!check_tempered(f)) throw Error(Err::NotTempered, "family is not integrally tempered");
  if (order < 40) throw Error(Err::InvalidArgument, "series order must be at least 40");
  GenusOneData d;
  d.family_id = f.id;
  d.order = order;
  auto cls = classify_points(f.polygon);
  d.r = cls.r;
  d.r_polar = *cls.r_polar;
  d.T = mpq_class(1, 2) + mpq_class(d.r_polar, 12);
  d.T.canonicalize();
  d.B_circ = mpq_class(1, 2) - mpq_class(d.r_polar, 24);
  d.B_circ.canonicalize();
  d.ct = constant_terms(f.phi(), order);
  std::vector<mpq_class> oc(order + 1), sc(order + 1, mpq_class(0));
  for (unsigned k = 0; k <= order; ++k) oc[k] = (k % 2 ? -1 : 1) * d.ct[k];
  for (unsigned k = 1; k <= order; ++k) sc[k] = (k % 2 ? 1 : -1) * d.ct[k] / k;
  d.omega = RationalSeries("a_inv", oc);
  d.s = RationalSeries("a_inv", sc);
  d.pf = pf_discover(d.omega, 3, 12);

  // Logarithmic Frobenius solution omega*log(x) + h with h_0 = 0.
  const PicardFuchs& L = d.pf;
  if (L.poly_at(0, 0) != 0) throw Error(Err::NoOperatorFound, "operator has no logarithmic solution at x = 0");
  std::vector<mpq_class> rhs(order + 1, mpq_class(0));
  for (unsigned n = 0; n <= order; ++n) {
    mpq_class acc = 0;
    for (unsigned j = 0; j <= L.degree() && j <= n; ++j) {
      if (d.omega[n - j] == 0) continue;
      mpq_class sarg = n - j, dp = 0;
      for (unsigned i = 1; i <= L.order(); ++i) dp += L.p[i][j] * i * ipow(sarg, i - 1);
      acc += dp * d.omega[n - j];
    }
    rhs[n] = -acc;
  }
  std::vector<mpq_class> h(order + 1, mpq_class(0));
  for (unsigned n = 1; n <= order; ++n) {
    mpq_class p0 = L.poly_at(0, mpq_class(n));
    if (p0 == 0) throw Error(Err::NoOperatorFound, "indicial polynomial vanishes at a positive integer");
    mpq_class acc = rhs[n];
    for (unsigned j = 1; j <= L.degree() && j <= n; ++j) acc -= L.poly_at(j, mpq_class(n - j)) * h[n - j];
    h[n] = acc / p0;
  }
  d.h = RationalSeries("a_inv", h);

  // H = r°(T - t) with T = log a - h/omega; G solves theta G = H omega.
  RationalSeries hw = d.h / d.omega;
  d.H = (-(hw + d.s)) * mpq_class(d.r_polar);
  d.G = (d.H * d.omega).theta_inverse();

  // Flat coordinate Q = x exp(-s); N_k = [Q^k] H / k^2.
  RationalSeries Qx = RationalSeries::variable("a_inv", order) * (-d.s).exp();
  RationalSeries xQ = Qx.reversion();
  RationalSeries HQ = d.H.compose(xQ);
  d.N.assign(order + 1, mpq_class(0));
  for (unsigned k = 1; k <= order; ++k) d.N[k] = HQ[k] / (mpq_class(k) * k);
  d.a_hat = conifold_locate(f).a_hat;
  return d;
}

GWTable gw_extract(const CurveFamily& f, unsigned kmax) {
  GenusOneData d = genus_one_data(f, std::max(kmax, 40u));
  GWTable t;
  t.kmax = kmax;
  t.N.assign(d.N.begin(), d.N.begin() + kmax + 1);
  t.r = d.r;
  t.r_polar = d.r_polar;
  t.T = d.T;
  t.B_circ = d.B_circ;
  return t;
}

std::vector<mpq_class> gv_from_gw(const std::vector<mpq_class>& N) {
  auto mobius = [](unsigned n) {
    int m = 1;
    for (unsigned p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    if (n > 1) m = -m;
    return m;
  };
  std::vector<mpq_class> n(N.size(), mpq_class(0));
  for (unsigned k = 1; k < N.size(); ++k)
    for (unsigned j = 1; j <= k; ++j)
      if (k % j == 0) {
        int mu = mobius(j);
        if (mu) n[k] += mpq_class(mu) * N[k / j] / (mpq_class(j) * j * j);
      }
  return n;
}

ConifoldLocation conifold_locate(const CurveFamily& f) {
  std::vector<std::pair<Pt, double>> terms;
  for (const auto& [m, c] : f.boundary_coeffs) {
    if (c <= 0) throw Error(Err::NonPositiveCoefficients, "conifold_locate needs positive coefficients");
    terms.emplace_back(m, c.get_d());
  }
  auto eval = [&](double u, double v, double& fx, double g[2], double hm[3]) {
    fx = 0;
    g[0] = g[1] = hm[0] = hm[1] = hm[2] = 0;
    for (const auto& [m, c] : terms) {
      double e = c * std::exp(m.x * u + m.y * v);
      fx += e;
      g[0] += m.x * e;
      g[1] += m.y * e;
      hm[0] += m.x * m.x * e;
      hm[1] += m.x * m.y * e;
      hm[2] += m.y * m.y * e;
    }
  };
  ConifoldLocation best;
  double best_f = std::numeric_limits<double>::infinity();
  const double starts[][2] = {{0, 0}, {1, -1}, {-1, 1}, {0.5, 0.5}, {-0.5, -0.5}};
  for (const auto& st : starts) {
    double u = st[0], v = st[1], fx, g[2], hm[3];
    for (int it = 0; it < 200; ++it) {
      eval(u, v, fx, g, hm);
      double det = hm[0] * hm[2] - hm[1] * hm[1];
      double du = -(hm[2] * g[0] - hm[1] * g[1]) / det;
      double dv = -(-hm[1] * g[0] + hm[0] * g[1]) / det;
      double step = 1;
      for (int ls = 0; ls < 60; ++ls) {
        double f2, g2[2], h2[3];
        eval(u + step * du, v + step * dv, f2, g2, h2);
        if (f2 <= fx + 1e-15 * std::fabs(fx)) break;
        step *= 0.5;
      }
      u += step * du;
      v += step * dv;
      if (std::hypot(du, dv) < 1e-17) break;
    }
    eval(u, v, fx, g, hm);
    if (fx < best_f) {
      best_f = fx;
      best.a_hat = -fx;
      best.x = std::exp(u);
      best.y = std::exp(v);
      // gradient with respect to (x, y)
      best.grad_norm = std::hypot(g[0] / best.x, g[1] / best.y);
    }
  }
  return best;
}

double geometric_tail(const std::vector<mpq_class>& c, const Real& q, int weight_power, double weight_t) {
  const size_t n = c.size() - 1;
  std::vector<std::pair<size_t, double>> last;  // (k, log|c_k|)
  for (size_t k = n; k >= 1 && last.size() < 10; --k)
    if (c[k] != 0) {
      Real v = abs(to_real(c[k]));
      last.emplace_back(k, to_double(log(v)));
    }
  if (last.empty()) return 0;
  double lrho = -std::numeric_limits<double>::infinity();
  for (auto& [k, lc] : last) lrho = std::max(lrho, lc / static_cast<double>(k));
  double lC = -std::numeric_limits<double>::infinity();
  for (auto& [k, lc] : last) lC = std::max(lC, lc - lrho * static_cast<double>(k));
  double lq = lrho + to_double(log(q));
  if (lq >= 0) return std::numeric_limits<double>::infinity();
  // sum_{k>n} e^{lC + k lq} k^p (1 + t k), summed in log space.
  double total = 0;
  for (size_t k = n + 1; k < n + 200000; ++k) {
    double kd = static_cast<double>(k);
    double lt = lC + kd * lq + weight_power * std::log(kd) + std::log1p(std::fabs(weight_t) * kd);
    double term = std::exp(lt);
    total += term;
    if (kd * -lq > 50 + 2 * std::log(kd) && term <= total * 1e-18) break;
    if (term == 0 && k > n + 10) break;
  }
  return total;
}

namespace {

Real eval_series(const RationalSeries& s, const Real& x) {
  Real acc = 0;
  for (unsigned k = s.order() + 1; k-- > 0;) acc = acc * x + (s[k] == 0 ? Real(0) : to_real(s[k]));
  return acc;
}

}  // namespace

PeriodValue evaluate_periods(const GenusOneData& d, const Real& a, double tol) {
  if (!(a > std::fabs(d.a_hat))) throw Error(Err::OutsideDomain, "a must exceed |a_hat| = " + fmt17(std::fabs(d.a_hat)));
  PeriodValue pv;
  pv.order = d.order;
  pv.bits = static_cast<unsigned>(mpfr_get_prec(a.backend().data()));
  pv.a = a;
  const Real pi = real_pi();
  const Real x = 1 / a;
  pv.omega = eval_series(d.omega, x);
  Real s = eval_series(d.s, x);
  pv.t = log(a) + s;
  const Real& t = pv.t;
  Real Q = exp(-t);
  Real G = 0, H = 0, Qk = 1;
  for (unsigned k = 1; k <= d.order; ++k) {
    Qk *= Q;
    if (d.N[k] == 0) continue;
    Real term = to_real(d.N[k]) * Qk * k;
    G += term;
    H += term * k;
  }
  double td = to_double(t);
  double err_omega = geometric_tail(d.omega.coeffs(), x, 0);
  double err_s = geometric_tail(d.s.coeffs(), x, 0);
  double err_nu_sum = geometric_tail(d.N, Q, 1, td) / (4 * M_PI * M_PI);
  double err_H = geometric_tail(d.N, Q, 2, 0);
  const Real rp = d.r_polar;
  const Real T0 = to_real(d.T);
  pv.nu = rp * t * t / (8 * pi * pi) + T0 + (G + t * H) / (4 * pi * pi);
  pv.V = pv.omega * pv.nu;
  pv.Omega_re = -rp / 2;
  pv.Omega_im = (rp * t + H) / (2 * pi);
  pv.R_gamma_im = -2 * pi * t;
  pv.R_beta_re = rp * t * t / 2 - 4 * pi * pi * T0 - G;
  pv.R_beta_im = pi * rp * t;
  // Functional route with H, G summed directly in x.
  Real Hx = eval_series(d.H, x), Gx = eval_series(d.G, x);
  Real Om_im = (rp * t + Hx) / (2 * pi);
  Real Rb_re = rp * t * t / 2 - 4 * pi * pi * T0 - Gx;
  // R_gamma Omega - R_beta with R_gamma = i Rg_im, Omega = -r°/2 + i Om_im:
  // real part = -Rg_im * Om_im - Rb_re
  Real Rg_im = -2 * pi * t;
  pv.nu_functional = (-Rg_im * Om_im - Rb_re) / (4 * pi * pi);
  double err_Hx = geometric_tail(d.H.coeffs(), x, 0), err_Gx = geometric_tail(d.G.coeffs(), x, 0);
  double dnu_dt = std::fabs(to_double(rp * t / (4 * pi * pi) + H / (4 * pi * pi)));
  double err = err_nu_sum + dnu_dt * err_s + err_H * std::fabs(td) / (4 * M_PI * M_PI);
  double err_func = (std::fabs(td) * err_Hx + err_Gx) / (4 * M_PI * M_PI) + dnu_dt * err_s;
  double eps = std::ldexp(1.0, -static_cast<int>(pv.bits) + 8) * (1 + std::fabs(to_double(pv.nu)));
  pv.error = std::max(err, err_func) + err_omega * 0 + eps;
  if (!(pv.error <= tol)) throw Error(Err::InsufficientOrder, "tail bound " + fmt17(pv.error) + " exceeds tolerance " + fmt17(tol));
  (void)err_omega;
  return pv;
}

Real regulator_beta_negative_series(const GenusOneData& d, const Real& u, double* error) {
  if (!(u > std::fabs(d.a_hat))) throw Error(Err::OutsideDomain, "u must exceed |a_hat|");
  const Real pi = real_pi();
  Real x = -1 / u;
  Real tau = log(u) + eval_series(d.s, x);
  Real q = exp(-tau);
  Real G = 0, qk = 1;
  for (unsigned k = 1; k <= d.order; ++k) {
    qk *= q;
    if (d.N[k] == 0) continue;
    Real term = to_real(d.N[k]) * qk * k;
    G += (k % 2 ? -term : term);
  }
  if (error) {
    double e = geometric_tail(d.N, q, 1) + std::fabs(to_double(d.r_polar * tau)) * geometric_tail(d.s.coeffs(), abs(x), 0);
    *error = e + std::ldexp(1.0, -static_cast<int>(mpfr_get_prec(u.backend().data())) + 8) * to_double(tau * tau * d.r_polar);
  }
  return Real(d.r_polar) * tau * tau / 2 - Real(d.r) * pi * pi / 6 - G;
}

QuadratureResult regulator_quadrature_p1xp1(const Real& u, double tol) {
  if (!(u > 4)) throw Error(Err::OutsideDomain, "u must exceed 4");
  // tanh_sinh does not initialise with mpfr types here, so integrate in a fixed 50-digit binary float.
  using Q50 = boost::multiprecision::cpp_bin_float_50;
  static boost::math::quadrature::tanh_sinh<Q50> integrator(15);
  const Q50 uq(u.str(60, std::ios_base::scientific));
  // With x1 = e^s on (xi_2, xi_3): log(x2+/x2-) = 2 arccosh((u - 2 cosh s)/2).
  const Q50 s3 = acosh((uq - 2) / 2);
  auto f = [&](const Q50& s) -> Q50 {
    Q50 arg = (uq - 2 * cosh(s)) / 2;
    if (arg <= 1) return Q50(0);
    return acosh(arg);
  };
  Q50 err = 0, l1 = 0;
  Q50 v = integrator.integrate(f, Q50(0), s3, Q50(std::max(tol, 1e-45)), &err, &l1);
  QuadratureResult r;
  r.value = Real(v.str(55, std::ios_base::scientific));
  r.error = 4 * static_cast<double>(err) * (1 + static_cast<double>(l1));
  r.value *= 4;
  if (!(r.error < 1e-12 * (1 + to_double(abs(r.value))))) throw Error(Err::QuadratureFailure, "quadrature error estimate too large");
  return r;
}

Real real_t_at_conifold(const GenusOneData& d, double* error) {
  // Re t(a_hat) = log|a_hat| + sum s_k a_hat^{-k}; terms decay like c/k^2.
  Real ah = Real(d.a_hat);
  Real inv = 1 / ah;
  Real acc = 0, p = 1;
  std::vector<Real> partial(d.order + 1, Real(0));
  for (unsigned k = 1; k <= d.order; ++k) {
    p *= inv;
    if (d.s[k] != 0) acc += to_real(d.s[k]) * p;
    partial[k] = acc;
  }
  // Fit partial(K) = S + c/K through K/2 and K.
  unsigned K2 = d.order, K1 = d.order / 2;
  Real S = (partial[K2] * K2 - partial[K1] * K1) / (K2 - K1);
  if (error) *error = std::fabs(to_double(S - partial[K2])) * 0.1 + 1e-12;
  return log(abs(ah)) + S;
}

}  // namespace mc
