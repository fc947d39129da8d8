#include "conifold.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace mc {

namespace {

using cplx = std::complex<double>;
using cld = std::complex<long double>;

void check_gj(int g, int j) {
  if (g < 1) throw Error(Err::InvalidArgument, "g must be >= 1");
  if (j < 1 || j > g) throw Error(Err::InvalidArgument, "j must lie in 1..g");
}

// F^a(x, x) and its first two derivatives, with a_j multiplying x^{2-2j}.
void diag_eval(int g, const std::vector<double>& a, long double x, long double& f, long double& f1, long double& f2) {
  f = 2 * x + std::pow(x, -2.0L * g);
  f1 = 2 - 2.0L * g * std::pow(x, -2.0L * g - 1);
  f2 = 2.0L * g * (2 * g + 1) * std::pow(x, -2.0L * g - 2);
  for (int j = 1; j <= g; ++j) {
    long double e = 2 - 2 * j;
    f += a[j - 1] * std::pow(x, e);
    f1 += a[j - 1] * e * std::pow(x, e - 1);
    f2 += a[j - 1] * e * (e - 1) * std::pow(x, e - 2);
  }
}

}  // namespace

std::vector<mpz_class> chebyshev_t(int n) {
  if (n < 0) throw Error(Err::InvalidArgument, "negative Chebyshev index");
  std::vector<mpz_class> t0{1}, t1{0, 1};
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    std::vector<mpz_class> t2(k + 2);
    for (int i = 0; i <= k; ++i) t2[i + 1] += 2 * t1[i];
    for (size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

ConifoldData chebyshev_conifold(int g) {
  if (g < 1) throw Error(Err::InvalidArgument, "g must be >= 1");
  ConifoldData d;
  d.g = g;
  d.chebyshev = chebyshev_t(2 * g + 1);
  // 2x T(1/2x) = sum_k t_{2k+1} 4^{-k} x^{-2k}, matched against a_j x^{2-2j}.
  for (int j = 1; j <= g; ++j) {
    const mpz_class& t = d.chebyshev[2 * j - 1];
    mpz_class p = mpz_class(1) << (2 * (j - 1));
    if (t % p != 0) throw Error(Err::Internal, "Chebyshev coefficient not divisible by 4^{j-1}");
    mpz_class a = t / p;
    mpz_class bin;
    mpz_bin_uiui(bin.get_mpz_t(), g + j - 1, g - j + 1);
    mpz_class closed = bin * (2 * g + 1);
    if (closed % (2 * j - 1) != 0) throw Error(Err::Internal, "closed form for a_hat not integral");
    closed /= (2 * j - 1);
    if ((g - j + 1) % 2) closed = -closed;
    if (closed != a) throw Error(Err::Internal, "Chebyshev and closed-form a_hat disagree at j=" + std::to_string(j));
    d.a_hat.push_back(a);
  }
  if (d.chebyshev[2 * g + 1] != (mpz_class(1) << (2 * g))) throw Error(Err::Internal, "bad Chebyshev leading coefficient");

  std::vector<double> a;
  for (const auto& v : d.a_hat) a.push_back(v.get_d());
  for (int j = 1; j <= g; ++j) {
    long double x = ((g - j) % 2 ? -0.5L : 0.5L) / std::cos((g - j + 1) * 3.14159265358979323846264338327950288L / (2 * g + 1));
    long double f, f1, f2;
    diag_eval(g, a, x, f, f1, f2);
    // Scale by the largest term so the residual is relative for large g.
    long double scale = 2 * std::fabs(x) + std::pow(std::fabs(x), -2.0L * g);
    for (int k = 1; k <= g; ++k) scale = std::max(scale, std::fabs(a[k - 1] * std::pow(x, 2.0L - 2 * k)));
    d.nodes.push_back(static_cast<double>(x));
    d.residuals.push_back(static_cast<double>(std::max(std::fabs(f), std::fabs(f1 * x)) / scale));
    d.second_derivative.push_back(static_cast<double>(f2));
    // Hessian of G(x, y) = x^g y^g F at (x, x), exponents shifted to be nonnegative.
    long double hxx = 0, hxy = 0, hyy = 0;
    auto mono = [&](long double c, long double ex, long double ey) {
      hxx += c * ex * (ex - 1) * std::pow(x, ex - 2) * std::pow(x, ey);
      hyy += c * ey * (ey - 1) * std::pow(x, ex) * std::pow(x, ey - 2);
      hxy += c * ex * ey * std::pow(x, ex - 1) * std::pow(x, ey - 1);
    };
    mono(1, g + 1, g);
    mono(1, g, g + 1);
    mono(1, 0, 0);
    for (int k = 1; k <= g; ++k) mono(a[k - 1], g + 1 - k, g + 1 - k);
    d.hessian_det.push_back(static_cast<double>(hxx * hyy - hxy * hxy));
    d.hessian_rel.push_back(static_cast<double>(std::fabs(hxx * hyy - hxy * hxy) / (hxx * hxx + 2 * hxy * hxy + hyy * hyy)));
  }
  return d;
}

RingPoint ring_point(int g, int j) {
  check_gj(g, j);
  RingPoint r;
  const double p = 2 * g + 1, q = 2 * j - 1, h = g - j + 1;
  r.x_ring = std::pow(h / q, 1.0 / p);
  r.a_ring = -(p / q) * std::pow(q / h, 2 * h / p);
  std::vector<double> a(g, 0.0);
  a[j - 1] = r.a_ring;
  long double f, f1, f2;
  diag_eval(g, a, r.x_ring, f, f1, f2);
  r.residual = static_cast<double>(std::max(std::fabs(f), std::fabs(f1)));
  r.residue = std::sqrt(p) / (2 * M_PI * h * std::sqrt(q));
  return r;
}

ConifoldMultiple conifold_multiple(const std::vector<Real>& b, const Real& c, const Real& residue) {
  const int depth = 3, window = 20;
  if (b.size() < static_cast<size_t>(window + depth + 2)) throw Error(Err::InvalidArgument, "too few coefficients for extrapolation");
  // b[0] is the constant term; A_r = b_r c^r r for r >= 1.
  std::vector<Real> A(b.size());
  Real cr = 1;
  for (size_t r = 1; r < b.size(); ++r) {
    cr *= c;
    A[r] = b[r] * cr * r;
  }
  std::vector<double> ext;
  const size_t last = b.size() - 1;
  for (size_t r = last - depth - window + 1; r + depth <= last; ++r) {
    Real s = 0;
    Real fact = 1;  // N!
    for (int k = 1; k <= depth; ++k) fact *= k;
    for (int k = 0; k <= depth; ++k) {
      Real binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * (depth - i) / (i + 1);
      Real term = A[r + k] * pow(Real(r + k), depth) * binom / fact;
      s += ((k + depth) % 2 ? -term : term);
    }
    ext.push_back(to_double(s));
  }
  ConifoldMultiple out;
  auto [lo, hi] = std::minmax_element(ext.begin(), ext.end());
  out.limit = ext.back();
  out.ratio = to_double(Real(out.limit) / residue);
  out.spread = (*hi - *lo) / to_double(residue);
  if (!(out.spread < 0.1)) throw Error(Err::NotConverged, "conifold multiple extrapolation spread " + fmt17(out.spread));
  out.kappa = std::lround(out.ratio);
  return out;
}

namespace {

// Smallest l_j > 0 for which the axis exponent l' = (g-j+1) l_j / (2j-1) is integral.
long axis_step(int g, int j) {
  for (long s = 1;; ++s)
    if ((s * (g - j + 1)) % (2 * j - 1) == 0) return s;
}

}  // namespace

std::vector<mpz_class> axis_period_coefficients(int g, int j, unsigned rmax) {
  check_gj(g, j);
  const long n = axis_step(g, j);
  const long m = (2L * g + 1) * n / (2 * j - 1);
  const long h = (m - n) / 2;
  // b_r = (-1)^{mr} (mr)! / ((hr)!^2 (nr)!), built by the ratio b_r / b_{r-1}.
  std::vector<mpz_class> b(rmax + 1);
  b[0] = 1;
  for (unsigned r = 1; r <= rmax; ++r) {
    mpz_class num = 1, den = 1;
    for (long i = m * (r - 1) + 1; i <= m * static_cast<long>(r); ++i) num *= i;
    for (long i = h * (r - 1) + 1; i <= h * static_cast<long>(r); ++i) den *= i * i;
    for (long i = n * (r - 1) + 1; i <= n * static_cast<long>(r); ++i) den *= i;
    mpz_class v = b[r - 1] * num;
    mpz_class abs_prev = abs(v);
    if (abs_prev % den != 0) throw Error(Err::Internal, "axis coefficient not integral");
    v /= den;
    if (m % 2) v = -v;
    b[r] = v;
  }
  return b;
}

ConifoldMultiple conifold_multiple_gg(int g, int j, unsigned rmax) {
  check_gj(g, j);
  PrecisionScope ps(256);
  const long n = axis_step(g, j);
  const long m = (2L * g + 1) * n / (2 * j - 1);
  auto bz = axis_period_coefficients(g, j, rmax);
  std::vector<Real> b;
  for (const auto& v : bz) b.push_back(to_real(v));
  // s = a_j^{-m}; the ring point sits at s = a_ring^{-m}.
  const Real p = 2 * g + 1, q = 2 * j - 1, h = g - j + 1;
  Real a_ring = -(p / q) * pow(q / h, 2 * h / p);
  Real c = pow(a_ring, -m);
  Real res = sqrt(p) / (2 * real_pi() * h * sqrt(q));
  return conifold_multiple(b, c, res);
}

double bloch_wigner(std::complex<double> z0) {
  if (z0 == cplx(0, 0) || z0 == cplx(1, 0)) throw Error(Err::PoleAtOneOrZero, "Bloch-Wigner function evaluated at 0 or 1");
  if (z0.imag() == 0) return 0;
  const cld z(z0.real(), z0.imag());
  const cld one(1, 0);
  // The six anharmonic images with D_2 sign; pick the one where -log(1-w) is smallest.
  const std::pair<cld, int> images[6] = {{z, 1}, {one - z, -1}, {one / z, -1}, {one / (one - z), 1}, {(z - one) / z, 1}, {z / (z - one), -1}};
  cld w = z;
  int sign = 1;
  long double best = INFINITY;
  for (const auto& [v, s] : images) {
    if (std::abs(v) > 1 || v.real() > 0.5L) continue;
    long double u = std::abs(std::log(one - v));
    if (u < best) best = u, w = v, sign = s;
  }
  // Li_2(w) = sum_n B_n u^{n+1}/(n+1)!, u = -log(1-w), B_1 = -1/2.
  const cld u = -std::log(one - w);
  cld li = u - u * u / 4.0L;
  cld up = u;  // u^{2k+1} / (2k+1)!
  for (int k = 1; k < 60; ++k) {
    up *= u * u / static_cast<long double>((2 * k) * (2 * k + 1));
    cld term = boost::math::bernoulli_b2n<long double>(k) * up;
    li += term;
    if (std::abs(term) < 1e-22L * std::abs(li)) break;
  }
  long double d = li.imag() + std::arg(one - w) * std::log(std::abs(w));
  return static_cast<double>(sign * d);
}

double dmn(int m, int n) {
  if (m < 1 || n < 1) throw Error(Err::InvalidArgument, "m and n must be positive");
  const long double th = 3.14159265358979323846264338327950288L / (m + n + 1);
  const cld zf = std::polar(1.0L, th);
  const cld w = (std::pow(zf, m) - std::pow(zf, -m)) / (zf - std::pow(zf, -1));
  const cld arg = -std::pow(zf, m + 1) * w;
  return (m + n + 1) / M_PI * bloch_wigner(cplx(static_cast<double>(arg.real()), static_cast<double>(arg.imag())));
}

std::complex<double> DivisorPoint::value() const {
  const long double th = 2 * 3.14159265358979323846264338327950288L * num / order;
  cld v = std::polar(1.0L, th);
  if (one_plus) v += 1.0L;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

void FormalDivisor::add(DivisorPoint p, long mult) {
  p.num = ((p.num % p.order) + p.order) % p.order;
  const int gcd = std::gcd(p.num, p.order);
  if (gcd > 1) p.num /= gcd, p.order /= gcd;
  if (p.num == 0) p.order = 1;
  long& m = terms[p];
  m += mult;
  if (m == 0) terms.erase(p);
}

double FormalDivisor::d2() const {
  double s = 0;
  for (const auto& [p, m] : terms) {
    auto v = p.value();
    if (!p.one_plus && p.num == 0) continue;  // [1] carries D_2 = 0
    s += m * bloch_wigner(v);
  }
  return s;
}

long FormalDivisor::degree() const {
  long s = 0;
  for (const auto& [p, m] : terms) s += m;
  return s;
}

FormalDivisor reduce_roots_of_unity(const FormalDivisor& d) {
  FormalDivisor out;
  for (const auto& [p, m] : d.terms) {
    if (p.one_plus) {
      out.add(p, m);
      continue;
    }
    if (p.num == 0) continue;
    // [zeta^k] = -[zeta^{-k}]: keep the representative with 2k < order.
    if (2 * p.num > p.order) {
      out.add({p.order - p.num, p.order, false}, -m);
    } else if (2 * p.num == p.order) {
      continue;  // -1 is real
    } else {
      out.add(p, m);
    }
  }
  return out;
}

Uniformization uniformization(int g, int j) {
  check_gj(g, j);
  Uniformization u;
  u.g = g;
  u.j = j;
  const int ord = 2 * g + 1, e = g - j + 1;
  const cplx xi = std::polar(1.0, 2 * M_PI * e / ord);
  const double xh = ((g - j) % 2 ? -0.5 : 0.5) / std::cos(e * M_PI / ord);
  u.X = [=](cplx z) { return xh * std::pow(1.0 - 1.0 / z, g + 1) / ((1.0 - xi / z) * std::pow(1.0 - xi * xi / z, g)); };
  u.Y = [=](cplx z) { return xh * std::pow(1.0 - z / (xi * xi), g + 1) / ((1.0 - z / xi) * std::pow(1.0 - z, g)); };

  // Zeros/poles alpha (in X) and beta (in Y) as exponents of zeta_{2g+1}.
  const std::pair<int, long> alpha[3] = {{0, g + 1}, {e, -1}, {2 * e, -g}};
  const std::pair<int, long> beta[3] = {{2 * e, g + 1}, {e, -1}, {0, -g}};
  for (const auto& [ka, da] : alpha)
    for (const auto& [kb, eb] : beta) u.divisor.add({ka - kb, ord, false}, da * eb);
  u.reduced.add({e, ord, true}, 2L * ord);

  ConifoldData cd = chebyshev_conifold(g);
  std::vector<double> a;
  for (const auto& v : cd.a_hat) a.push_back(v.get_d());
  // Deterministic sample points spread over an annulus, away from the poles.
  double worst = 0;
  for (int s = 0; s < 50; ++s) {
    cplx z = std::polar(0.3 + 0.07 * s, 2.3999632297 * s + 0.1);
    cplx X = u.X(z), Y = u.Y(z);
    std::vector<cplx> t{X, Y, std::pow(X, -g) * std::pow(Y, -g)};
    for (int k = 1; k <= g; ++k) t.push_back(a[k - 1] * std::pow(X * Y, 1 - k));
    cplx sum = 0;
    double scale = 0;
    for (auto v : t) sum += v, scale = std::max(scale, std::abs(v));
    worst = std::max(worst, std::abs(sum) / scale);
  }
  u.max_residual = worst;
  if (!(worst < 1e-10)) throw Error(Err::ParametrizationFailure, "uniformization residual " + fmt17(worst));
  return u;
}

std::vector<mpq_class> gkz_degree_weights(int g, int j) {
  check_gj(g, j);
  // w solves C^T w = 1 with C tridiagonal (-2 diagonal, 1 off-diagonal, C_00 = -3).
  std::vector<std::vector<mpq_class>> A(g, std::vector<mpq_class>(g + 1, 0));
  for (int i = 0; i < g; ++i) {
    A[i][i] = -2;
    if (i > 0) A[i][i - 1] = 1;
    if (i + 1 < g) A[i][i + 1] = 1;
    A[i][g] = 1;
  }
  A[0][0] = -3;
  for (int c = 0; c < g; ++c) {
    int p = c;
    while (A[p][c] == 0) ++p;
    std::swap(A[p], A[c]);
    for (int r = 0; r < g; ++r) {
      if (r == c || A[r][c] == 0) continue;
      mpq_class f = A[r][c] / A[c][c];
      for (int k = c; k <= g; ++k) A[r][k] -= f * A[c][k];
    }
  }
  std::vector<mpq_class> w(g);
  for (int i = 0; i < g; ++i) w[i] = A[i][g] / A[i][i];
  // Degree of the monomial a_j^{-L} prod a_k^{l_k}, with L = ((2g+1) l_j + sum (2k-1) l_k)/(2j-1).
  std::vector<mpq_class> c(g);
  for (int k = 1; k <= g; ++k) {
    mpq_class lk = (k == j ? mpq_class(2 * g + 1) : mpq_class(2 * k - 1)) / (2 * j - 1);
    c[k - 1] = (k == j ? mpq_class(0) : w[k - 1]) - w[j - 1] * lk;
  }
  return c;
}

double theorem_b_lhs(int g, int j) {
  check_gj(g, j);
  const int ord = 2 * g + 1;
  const long kappa = std::gcd(2 * j - 1, ord);
  const cplx z = 1.0 + std::polar(1.0, 2 * M_PI * (g - j + 1) / ord);
  return ord * kappa / M_PI * bloch_wigner(z);
}

IdentityReport theorem_b_check(int g, int j, int degree_max) {
  check_gj(g, j);
  if (degree_max < 40) throw Error(Err::InvalidArgument, "degree_max must be at least 40");
  ConifoldData cd = chebyshev_conifold(g);
  const int J = j - 1;
  const long q = 2 * j - 1;
  std::vector<mpq_class> cw = gkz_degree_weights(g, j);
  // Integer form of the degree: deg = sum cn_k l_k / cden.
  mpz_class den = 1;
  for (const auto& v : cw) den = lcm(den, mpz_class(v.get_den()));
  std::vector<long> cn(g);
  for (int k = 0; k < g; ++k) cn[k] = mpz_class(cw[k] * den).get_si();
  const long cden = den.get_si();
  // Coefficients of (2j-1) l' in l.
  std::vector<long> lp(g);
  for (int k = 0; k < g; ++k) lp[k] = (k == J) ? g - j + 1 : (k + 1) - j;

  // Box bound from the extreme rays of the cone {l >= 0, l' >= 0}.
  std::vector<std::vector<long>> rays;
  for (int k = 0; k < g; ++k)
    if (lp[k] >= 0) {
      std::vector<long> r(g, 0);
      r[k] = 1;
      rays.push_back(r);
    }
  for (int p = 0; p < g; ++p)
    for (int s = 0; s < g; ++s)
      if (lp[p] > 0 && lp[s] < 0) {
        std::vector<long> r(g, 0);
        r[p] = -lp[s];
        r[s] = lp[p];
        rays.push_back(r);
      }
  std::vector<long> box(g, 0);
  for (const auto& r : rays) {
    long deg = 0;
    for (int k = 0; k < g; ++k) deg += cn[k] * r[k];
    if (deg <= 0) throw Error(Err::Internal, "degree not positive on the summation cone");
    for (int k = 0; k < g; ++k) box[k] = std::max(box[k], static_cast<long>(std::floor(static_cast<double>(degree_max) * cden * r[k] / deg)));
  }

  std::vector<int> sgn(g);
  for (int k = 0; k < g; ++k) sgn[k] = cd.a_hat[k] < 0 ? -1 : 1;
  long maxL = 0;
  for (int k = 0; k < g; ++k) maxL += box[k] * (k == J ? 2 * g + 1 : 2 * k + 1);
  maxL = maxL / q + 2;
  long maxarg = maxL;
  for (int k = 0; k < g; ++k) maxarg = std::max(maxarg, box[k] + 2);

  IdentityReport rep;
  rep.g = g;
  rep.j = j;
  rep.degree_max = degree_max;
  const int neg_sign = -sgn[J];  // sign of -a_j
  std::vector<long> l(g, 0);
  // Calls visit(deg, L, L', sign) for every admissible multi-index in the box.
  auto enumerate = [&](const auto& visit) {
    std::function<void(int, long, long, long)> rec = [&](int k, long degn, long lpn, long Lq) {
      if (k == g) {
        if (degn == 0 || lpn < 0 || lpn % q || degn % cden) return;
        long deg = degn / cden;
        if (deg > degree_max) return;
        int s = (neg_sign < 0 && ((Lq / q) % 2)) ? -1 : 1;
        for (int i = 0; i < g; ++i)
          if (i != J && sgn[i] < 0 && (l[i] % 2)) s = -s;
        visit(deg, Lq / q, lpn / q, s);
        return;
      }
      for (long v = 0; v <= box[k]; ++v) {
        l[k] = v;
        rec(k + 1, degn + cn[k] * v, lpn + lp[k] * v, Lq + v * (k == J ? 2 * g + 1 : 2 * k + 1));
      }
      l[k] = 0;
    };
    rec(0, 0, 0, 0);
  };

  // Terms within one degree cancel heavily, so first find the largest term and
  // then accumulate with enough bits to absorb the cancellation.
  std::vector<long double> lfd(maxarg + 1, 0.0L), logad(g);
  for (size_t k = 1; k < lfd.size(); ++k) lfd[k] = lfd[k - 1] + std::log(static_cast<long double>(k));
  for (int k = 0; k < g; ++k) logad[k] = std::log(std::fabs(cd.a_hat[k].get_d()));
  auto log_term = [&](const auto& lf, const auto& la, long L, long Lp) {
    using T = std::decay_t<decltype(lf[0])>;
    T lt = lf[L - 1] - 2 * lf[Lp] - L * la[J];
    for (int i = 0; i < g; ++i) {
      lt -= lf[l[i]];
      if (i != J) lt += l[i] * la[i];
    }
    return lt;
  };
  long double max_lt = 0;
  enumerate([&](long, long L, long Lp, int) {
    max_lt = std::max(max_lt, log_term(lfd, logad, L, Lp));
    ++rep.terms;
  });
  const unsigned bits = 96 + static_cast<unsigned>(std::ceil(max_lt / std::log(2.0L))) + 2 * static_cast<unsigned>(std::log2(rep.terms + 2.0));
  PrecisionScope ps(bits);
  std::vector<Real> lf(maxarg + 1), la(g);
  lf[0] = 0;
  for (size_t k = 1; k < lf.size(); ++k) lf[k] = lf[k - 1] + log(Real(k));
  for (int k = 0; k < g; ++k) la[k] = log(abs(to_real(cd.a_hat[k])));
  std::vector<Real> incr(degree_max + 1, Real(0));
  enumerate([&](long deg, long L, long Lp, int s) {
    Real t = exp(Real(log_term(lf, la, L, Lp)));
    if (s < 0) incr[deg] -= t;
    else incr[deg] += t;
  });
  std::vector<long double> inc(degree_max + 1, 0.0L);
  Real partial_r = 0;
  for (int k = 1; k <= degree_max; ++k) {
    partial_r += incr[k];
    inc[k] = static_cast<long double>(incr[k]);
  }
  const long double partial = static_cast<long double>(partial_r);
  rep.increments.assign(inc.begin(), inc.end());

  // Fit inc_k k^2 = c + d/k over the last tenth of the degrees.
  const int span = std::max(20, degree_max / 10);
  const int k0 = degree_max - span + 1;
  long double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
  for (int k = k0; k <= degree_max; ++k) {
    long double x = 1.0L / k, y = inc[k] * k * static_cast<long double>(k);
    s0 += 1, s1 += x, s2 += x * x, t0 += y, t1 += x * y;
  }
  long double det = s0 * s2 - s1 * s1;
  long double c = (t0 * s2 - t1 * s1) / det, dd = (s0 * t1 - s1 * t0) / det;
  long double rss = 0;
  for (int k = k0; k <= degree_max; ++k) {
    long double r = inc[k] * k * static_cast<long double>(k) - c - dd / k;
    rss += r * r;
  }
  rep.fit_c = static_cast<double>(c);
  rep.fit_d = static_cast<double>(dd);
  rep.fit_rms = static_cast<double>(std::sqrt(rss / span));
  const double K1 = degree_max + 1.0;
  const double z2 = boost::math::trigamma(K1);                    // sum_{k>K} 1/k^2
  const double z3 = -0.5 * boost::math::polygamma(2, K1);         // sum_{k>K} 1/k^3
  rep.tail = static_cast<double>(c) * z2 + static_cast<double>(dd) * z3;
  rep.tail_bound = std::fabs(static_cast<double>(dd)) * z3 + 3 * rep.fit_rms * z2;
  if (!(rep.fit_rms < 0.05 * std::fabs(rep.fit_c)))
    throw Error(Err::TailEstimateUnreliable, "increment fit rms " + fmt17(rep.fit_rms) + " against c = " + fmt17(rep.fit_c));
  const double log_a = std::log(std::fabs(cd.a_hat[J].get_d()));
  rep.rhs_truncated = log_a - static_cast<double>(partial);
  rep.rhs = rep.rhs_truncated - rep.tail;
  rep.lhs = theorem_b_lhs(g, j);
  rep.residual = std::fabs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace mc
