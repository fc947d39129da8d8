#include "eigenfunction.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mc {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// 20-point Gauss-Legendre on [-1, 1].
const double kGx[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195, 0.5108670019508271, 0.6360536807265150,
                        0.7463319064601508, 0.8391169718222188, 0.9122344282513259, 0.9639719272779138, 0.9931285991850949};
const double kGw[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820, 0.1316886384491766, 0.1181945319615184,
                        0.1019301198172404, 0.0832767415767048, 0.0626720483341091, 0.0406014298003869, 0.0176140071391521};

// Nodes in increasing order on [-1, 1].
struct Rule {
  double x[20], w[20];
  Rule() {
    for (int i = 0; i < 10; ++i) {
      x[9 - i] = -kGx[i], w[9 - i] = kGw[i];
      x[10 + i] = kGx[i], w[10 + i] = kGw[i];
    }
  }
};
const Rule kRule;

cplx ipow(cplx x, long e) {
  cplx r = 1, b = e < 0 ? 1.0 / x : x;
  for (unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e); n; n >>= 1, b *= b)
    if (n & 1) r *= b;
  return r;
}

// Laurent polynomial in x1 as exponent -> coefficient.
struct Lp1 {
  std::map<long, double> c;
  // Value and x d/dx value.
  void eval(cplx x, cplx& val, cplx& th) const {
    val = 0, th = 0;
    for (const auto& [e, v] : c) {
      cplx p = ipow(x, e);
      val += v * p;
      th += v * static_cast<double>(e) * p;
    }
  }
  cplx at(cplx x) const {
    cplx v, t;
    eval(x, v, t);
    return v;
  }
};

class Curve {
 public:
  Curve(const CurveFamily& f, double a) : a_(a) {
    const LaurentPolynomial phi = f.phi();
    for (const auto& [p, c] : phi.terms()) {
      if (p.y == 1) up_.c[p.x] += c.get_d();
      else if (p.y == 0) mid_.c[p.x] += c.get_d();
      else if (p.y == -1) low_.c[p.x] += c.get_d();
      else throw Error(Err::InvalidArgument, "Newton polygon not inside R x [-1,1]");
    }
    if (up_.c.size() != 1 || low_.c.size() != 1)
      throw Error(Err::InvalidArgument, "eigenfunction construction implemented for monomial upper and lower parts only");
  }
  struct Point {
    cplx U, Ut, B, Bt, L, Lt;
    cplx disc() const { return B * B - 4.0 * U * L; }
    // x2 on the sheet with 2 U x2 + B = s.
    // Written so that neither branch cancels: x2 x2' = L/U.
    cplx x2(cplx s) const {
      cplx num = s - B;
      if (std::norm(num) >= std::norm(s + B)) return num / (2.0 * U);
      return 2.0 * L / (-s - B);
    }
    // d log x2 / dz = -(U' x2 + B' + L'/x2)/s with ' = x1 d/dx1.
    cplx dlog_x2(cplx s) const {
      cplx X2 = x2(s);
      return -(Ut * X2 + Bt + Lt / X2) / s;
    }
  };
  Point at(cplx z) const {
    Point p;
    cplx x = -std::exp(z);
    up_.eval(x, p.U, p.Ut);
    mid_.eval(x, p.B, p.Bt);
    low_.eval(x, p.L, p.Lt);
    p.B += a_;
    return p;
  }
  cplx disc(cplx z) const { return at(z).disc(); }
  cplx x2(cplx z, cplx s) const { return at(z).x2(s); }
  // Roots of D in x1 (all, complex), via Durand-Kerner on x1^k D.
  std::vector<cplx> disc_roots() const {
    long lo = 0, hi = 0;
    auto range = [&](const Lp1& p, long mult, long shift) {
      for (const auto& [e, v] : p.c) lo = std::min(lo, mult * e + shift), hi = std::max(hi, mult * e + shift);
    };
    range(mid_, 2, 0);
    range(mid_, 1, 0);
    long ul = up_.c.begin()->first + low_.c.begin()->first;
    lo = std::min(lo, ul), hi = std::max(hi, ul);
    // Coefficients of D as a Laurent polynomial.
    std::map<long, double> d;
    for (const auto& [e1, v1] : mid_.c)
      for (const auto& [e2, v2] : mid_.c) d[e1 + e2] += v1 * v2;
    for (const auto& [e, v] : mid_.c) d[e] += 2 * a_ * v;
    d[0] += a_ * a_;
    d[ul] -= 4 * up_.c.begin()->second * low_.c.begin()->second;
    while (!d.empty() && d.begin()->second == 0) d.erase(d.begin());
    while (!d.empty() && d.rbegin()->second == 0) d.erase(std::prev(d.end()));
    const long e0 = d.begin()->first, deg = d.rbegin()->first - e0;
    std::vector<double> c(deg + 1, 0.0);
    for (const auto& [e, v] : d) c[e - e0] = v / d.rbegin()->second;
    std::vector<std::complex<long double>> r(deg);
    for (long i = 0; i < deg; ++i) r[i] = std::pow(std::complex<long double>(0.4L, 0.9L), static_cast<long double>(i));
    auto P = [&](std::complex<long double> x) {
      std::complex<long double> s = 0;
      for (long i = deg; i >= 0; --i) s = s * x + static_cast<long double>(c[i]);
      return s;
    };
    for (int it = 0; it < 500; ++it) {
      long double move = 0;
      for (long i = 0; i < deg; ++i) {
        std::complex<long double> den = 1;
        for (long k = 0; k < deg; ++k)
          if (k != i) den *= r[i] - r[k];
        std::complex<long double> step = P(r[i]) / den;
        r[i] -= step;
        move = std::max(move, std::abs(step) / std::max(1.0L, std::abs(r[i])));
      }
      if (move < 1e-18L) break;
    }
    std::vector<cplx> out;
    for (auto v : r) out.push_back({static_cast<double>(v.real()), static_cast<double>(v.imag())});
    return out;
  }
  double a() const { return a_; }

 private:
  double a_;
  Lp1 up_, mid_, low_;
};

cplx track(const Curve::Point& p, cplx prev) {
  cplx s = std::sqrt(p.disc());
  return std::norm(s - prev) <= std::norm(s + prev) ? s : -s;
}
cplx track(const Curve& c, cplx z, cplx prev) { return track(c.at(z), prev); }

struct PathIntegral {
  cplx I = 0, W = 0;  // int z dlog x2, int dz/s
  cplx s_end = 0;
};

// Piecewise-linear path; vertex 0 is a ramification point, left with the
// substitution z = b + (v1 - b) t^2. sign picks the sheet.
PathIntegral integrate_path(const Curve& c, const std::vector<cplx>& v, int sign, int refine) {
  PathIntegral out;
  const cplx b = v[0], d = v[1] - v[0];
  bool first = true;
  cplx s = 0;
  const int n0 = 8 * refine;
  for (int k = 0; k < n0; ++k) {
    double t0 = double(k) / n0, t1 = double(k + 1) / n0;
    for (int i = 0; i < 20; ++i) {
      double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * kRule.x[i];
      double w = 0.5 * (t1 - t0) * kRule.w[i];
      cplx z = b + d * t * t;
      const Curve::Point pt = c.at(z);
      if (first) {
        s = std::sqrt(pt.disc()) * double(sign);
        first = false;
      } else {
        s = track(pt, s);
      }
      cplx dz = 2.0 * d * t * w;
      out.I += z * pt.dlog_x2(s) * dz;
      out.W += dz / s;
    }
  }
  s = track(c, v[1], s);
  for (size_t k = 1; k + 1 < v.size(); ++k) {
    const cplx z0 = v[k], z1 = v[k + 1];
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(z1 - z0) / 0.05))) * refine;
    for (int j = 0; j < n; ++j) {
      cplx a0 = z0 + (z1 - z0) * (double(j) / n), a1 = z0 + (z1 - z0) * (double(j + 1) / n);
      for (int i = 0; i < 20; ++i) {
        cplx z = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * kRule.x[i];
        cplx dz = 0.5 * (a1 - a0) * kRule.w[i];
        const Curve::Point pt = c.at(z);
        s = track(pt, s);
        out.I += z * pt.dlog_x2(s) * dz;
        out.W += dz / s;
      }
    }
    s = track(c, z1, s);
  }
  out.s_end = s;
  return out;
}

// Psi at the end of the path: (chi_+ - chi_-) / delta, refined until stable.
cplx psi_along(const Curve& c, const std::vector<cplx>& v, cplx rho) {
  cplx prev = 0;
  for (int refine = 1; refine <= 16; refine *= 2) {
    PathIntegral p = integrate_path(c, v, 1, refine), m = integrate_path(c, v, -1, refine);
    const cplx k(0, 1.0 / (2 * kPi));
    cplx chi_p = std::exp(k * (p.I - rho * p.W)), chi_m = std::exp(k * (m.I - rho * m.W));
    cplx val = (chi_p - chi_m) / p.s_end;
    if (refine > 1 && std::abs(val - prev) <= 1e-11 * std::max(std::abs(val), 1e-300)) return val;
    prev = val;
  }
  return prev;
}

}  // namespace

EigenfunctionReport eigenfunction_check(const CurveFamily& f, double a, const std::vector<double>& r_grid) {
  if (f.genus() != 1) throw Error(Err::InvalidArgument, "eigenfunction construction needs a genus-one family");
  Curve c(f, a);
  EigenfunctionReport rep;
  rep.a = a;
  std::vector<double> b;
  for (cplx x : c.disc_roots()) {
    cplx z = std::log(-x);
    if (std::fabs(z.imag()) > 1e-9) throw Error(Err::InvalidArgument, "ramification point off the real z-axis; path planning not implemented");
    b.push_back(z.real());
  }
  std::sort(b.begin(), b.end());
  if (b.size() != 4) throw Error(Err::InvalidArgument, "expected four ramification points");
  rep.branch_points = b;
  const double mid = 0.5 * (b[1] + b[2]);
  const double eps = 0.5 * std::min(b[1] - b[0], b[2] - b[1]);
  const cplx h(0, kPi / 2);

  // gamma: z from mid to mid + 2 pi i on one sheet; base point on the loop.
  {
    PathIntegral best;
    cplx prevR = 0;
    for (int refine = 1; refine <= 16; refine *= 2) {
      cplx s = std::sqrt(c.disc(mid));
      PathIntegral g;
      const int n = 160 * refine;
      for (int j = 0; j < n; ++j) {
        cplx a0(mid, 2 * kPi * j / n), a1(mid, 2 * kPi * (j + 1) / n);
        for (int i = 0; i < 20; ++i) {
          cplx z = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * kRule.x[i];
          cplx dz = 0.5 * (a1 - a0) * kRule.w[i];
          const Curve::Point pt = c.at(z);
          s = track(pt, s);
          g.I += z * pt.dlog_x2(s) * dz;
          g.W += dz / s;
        }
      }
      cplx s0 = std::sqrt(c.disc(mid));
      cplx R = g.I - std::log(-c.x2(mid, s0)) * cplx(0, 2 * kPi);
      R -= 4 * kPi * kPi * std::round(R.real() / (4 * kPi * kPi));
      cplx rho = R / g.W;
      rep.r_gamma = R;
      rep.w_gamma = g.W;
      if (refine > 1 && std::abs(rho - prevR) < 1e-12 * std::abs(rho)) break;
      prevR = rho;
    }
    rep.rho = prevR;
  }

  const cplx z0 = b[2];
  auto nudge = [&](double r) {
    for (double bp : b)
      if (std::fabs(r - bp) < 1e-6) r += 2e-6;
    return r;
  };
  auto path_upper = [&](double r, cplx shift, cplx hh) {
    std::vector<cplx> v{z0, mid, mid + hh};
    if (shift != 0.0) v.push_back(mid + hh + shift);
    v.push_back(r + hh + shift);
    v.push_back(r + shift);
    return v;
  };
  const LaurentPolynomial phi = f.phi();
  double scale = 0;
  for (double r0 : r_grid) {
    const double r = nudge(r0);
    cplx pa = psi_along(c, path_upper(r, 0, h), rep.rho);
    // Same endpoint, but first around b[1] from below: differs from the above by beta.
    std::vector<cplx> vb{z0, mid, b[1] + eps, cplx(b[1] + eps, -eps), cplx(b[1] - eps, -eps), b[1] - eps, b[1] - eps + h, r + h, r};
    cplx pb = psi_along(c, vb, rep.rho);
    cplx up = psi_along(c, path_upper(r, cplx(0, 2 * kPi), h), rep.rho);
    cplx dn = psi_along(c, path_upper(r, cplx(0, -2 * kPi), -h), rep.rho);
    rep.r.push_back(r);
    rep.psi.push_back(pa);
    rep.max_abs = std::max(rep.max_abs, std::abs(pa));
    rep.path_dependence = std::max(rep.path_dependence, std::abs(pa - pb));
    // phi-hat psi = 2 cosh(r) psi + Psi(r - 2 pi i) + Psi(r + 2 pi i) for x1 + 1/x1 + x2 + 1/x2;
    // in general -phi(-e^r, -S) with S the shift by -2 pi i.
    const double x1 = std::exp(r);
    cplx act = 0;
    for (const auto& [p, coef] : phi.terms()) {
      cplx term = coef.get_d() * std::pow(-x1, static_cast<double>(p.x)) * std::pow(-1.0, static_cast<double>(p.y));
      if (p.y == 0) act += term * pa;
      else if (p.y == 1) act += term * dn;
      else act += term * up;
    }
    act = -act;
    rep.residual = std::max(rep.residual, std::abs(act - a * pa));
    scale = std::max(scale, std::abs(a * pa) + 2 * std::cosh(r) * std::abs(pa));
  }
  if (rep.max_abs > 0) rep.path_dependence /= rep.max_abs;
  if (scale > 0) rep.residual /= scale;
  for (size_t i = 0; i < rep.r.size(); ++i)
    if (std::fabs(rep.r[i]) <= 5) rep.decay_constant = std::max(rep.decay_constant, std::abs(rep.psi[i]) * std::exp(std::fabs(rep.r[i]) / 2));
  if (rep.decay_constant > 0)
    for (size_t i = 0; i < rep.r.size(); ++i)
      rep.decay_violation = std::max(rep.decay_violation, std::abs(rep.psi[i]) * std::exp(std::fabs(rep.r[i]) / 2) / rep.decay_constant);
  return rep;
}

}  // namespace mc
