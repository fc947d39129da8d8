#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "error.hpp"
#include "symeig.hpp"

namespace mc {

SpectralProblem make_problem(const CurveFamily& f, size_t basis_size, double hbar) {
  if (f.genus() != 1) throw Error(Err::InvalidArgument, "spectral problems need a genus-one family");
  if (!check_tempered(f)) throw Error(Err::NotTempered, "family is not integrally tempered");
  if (basis_size < 1) throw Error(Err::InvalidArgument, "basis size must be positive");
  SpectralProblem p;
  p.family_id = f.id;
  p.hbar = hbar;
  p.basis_size = basis_size;
  for (const auto& [m, c] : f.boundary_coeffs)
    if (c != 0) p.monomials.push_back({static_cast<int>(m.x), static_cast<int>(m.y), c});
  p.r_polar = *classify_points(f.polygon).r_polar;
  return p;
}

namespace {

// Magnitudes R(j,k) = e^{x/2} x^{d/2} sqrt(k!/(k+d)!) L_k^{(d)}(-x), d = j - k >= 0, x = |alpha|^2.
// The entry is R(j,k) e^{i theta (j - k)}; R is symmetric.
std::vector<Real> magnitudes(const Real& X, size_t n) {
  std::vector<Real> R(n * n, Real(0));
  const Real pre = exp(X / 2);
  const Real sx = sqrt(X);
  Real xd = 1;  // x^{d/2}
  for (size_t d = 0; d < n; ++d) {
    Real lm1 = 0, l = 1, fac = 1;  // fac = sqrt(k!/(k+d)!)
    for (size_t i = 1; i <= d; ++i) fac /= sqrt(Real(i));
    for (size_t k = 0; k + d < n; ++k) {
      Real v = X == 0 ? Real(d == 0 ? 1 : 0) : Real(pre * xd * fac * l);
      R[(k + d) * n + k] = v;
      R[k * n + k + d] = v;
      Real next = ((2 * k + 1 + d + X) * l - (k + d) * lm1) / (k + 1);
      lm1 = l;
      l = next;
      fac *= sqrt(Real(k + 1) / Real(k + 1 + d));
    }
    xd *= sx;
  }
  return R;
}

double alpha_sq(double hbar, int m1, int m2) { return hbar / 2 * (double(m1) * m1 + double(m2) * m2); }

// hbar = 2 pi given as a double is taken to mean exactly 2 pi.
Real alpha_sq_real(double hbar, int m1, int m2) {
  Real h = hbar == 2 * M_PI ? Real(2 * real_pi()) : Real(hbar);
  return h / 2 * (m1 * m1 + m2 * m2);
}

bool invariant(const std::vector<Monomial>& ms, int a, int b, int c, int d) {
  std::map<std::pair<int, int>, mpq_class> s;
  for (const auto& m : ms) s[{m.m1, m.m2}] = m.a;
  for (const auto& m : ms) {
    auto it = s.find({a * m.m1 + b * m.m2, c * m.m1 + d * m.m2});
    if (it == s.end() || it->second != m.a) return false;
  }
  return true;
}

}  // namespace

ComplexMatrix exp_linear_matrix(int m1, int m2, double hbar, size_t n, unsigned bits) {
  if (n < 1) throw Error(Err::InvalidArgument, "basis size must be positive");
  double x = alpha_sq(hbar, m1, m2);
  if (x > 700) throw Error(Err::Overflow, "|alpha|^2 exceeds 700");
  PrecisionScope ps(bits);
  ComplexMatrix M;
  M.n = n;
  M.re = magnitudes(alpha_sq_real(hbar, m1, m2), n);
  M.im.assign(n * n, Real(0));
  const Real theta = atan2(Real(m2), Real(m1));
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      Real ang = theta * (double(j) - double(k));
      M.im[j * n + k] = M.re[j * n + k] * sin(ang);
      M.re[j * n + k] *= cos(ang);
    }
  return M;
}

unsigned working_bits(const SpectralProblem& p) {
  // log of the largest diagonal entry, from the Laguerre recurrence in doubles.
  double lmax = 0;
  for (const auto& m : p.monomials) {
    double x = alpha_sq(p.hbar, m.m1, m.m2);
    double lm1 = 0, l = 1, lg = 0;  // L_k(-x) = l e^{lg}
    for (size_t k = 0; k + 1 < p.basis_size; ++k) {
      double next = ((2 * k + 1 + x) * l - k * lm1) / (k + 1);
      lm1 = l;
      l = next;
      if (l > 1e100) {
        l *= 1e-100;
        lm1 *= 1e-100;
        lg += 100 * std::log(10.0);
      }
    }
    lmax = std::max(lmax, x / 2 + lg + std::log(l) + std::log(std::fabs(m.a.get_d())));
  }
  return 96 + static_cast<unsigned>(std::ceil(lmax / std::log(2.0)));
}

OperatorMatrix build_operator(const SpectralProblem& p, unsigned bits) {
  OperatorMatrix op;
  op.bits = bits ? bits : working_bits(p);
  PrecisionScope ps(op.bits);
  const size_t n = p.basis_size;
  // Reflection across the line at angle psi conjugates the phases once they are rotated by -psi.
  const struct {
    int a, b, c, d;
    int quarter_turns;  // phase in units of pi/4
  } refl[] = {{1, 0, 0, -1, 0}, {0, 1, 1, 0, -1}, {0, -1, -1, 0, 1}, {-1, 0, 0, 1, -2}};
  int quarters = 0;
  for (const auto& r : refl)
    if (invariant(p.monomials, r.a, r.b, r.c, r.d)) {
      op.real = true;
      quarters = r.quarter_turns;
      op.phase = quarters * M_PI / 4;
      break;
    }
  if (invariant(p.monomials, 0, -1, 1, 0))
    op.period = 4;
  else if (invariant(p.monomials, -1, 0, 0, -1))
    op.period = 2;
  op.h.n = n;
  op.h.re.assign(n * n, Real(0));
  op.h.im.assign(n * n, Real(0));
  const Real phase = real_pi() * quarters / 4;
  for (const auto& m : p.monomials) {
    double x = alpha_sq(p.hbar, m.m1, m.m2);
    if (x > 700) throw Error(Err::Overflow, "|alpha|^2 exceeds 700");
    auto R = magnitudes(alpha_sq_real(p.hbar, m.m1, m.m2), n);
    Real coeff = to_real(m.a);
    Real theta = atan2(Real(m.m2), Real(m.m1)) + phase;
    std::vector<Real> cs(n), sn(n);  // cos, sin of theta d for d >= 0
    for (size_t d = 0; d < n; ++d) {
      cs[d] = cos(theta * double(d));
      sn[d] = sin(theta * double(d));
    }
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        long dj = static_cast<long>(j) - static_cast<long>(k);
        if (op.period > 1 && dj % op.period != 0) continue;
        Real v = coeff * R[j * n + k];
        if (dj == 0) {
          op.h.re[j * n + k] += v;
        } else {
          size_t ad = static_cast<size_t>(dj > 0 ? dj : -dj);
          op.h.re[j * n + k] += v * cs[ad];
          if (dj > 0)
            op.h.im[j * n + k] += v * sn[ad];
          else
            op.h.im[j * n + k] -= v * sn[ad];
        }
      }
  }
  Real big = 0, defect = 0, imag = 0;
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) {
      big = max(big, abs(op.h.re[j * n + k]));
      defect = max(defect, abs(op.h.re[j * n + k] - op.h.re[k * n + j]) + abs(op.h.im[j * n + k] + op.h.im[k * n + j]));
      imag = max(imag, abs(op.h.im[j * n + k]));
    }
  op.hermiticity_defect = big > 0 ? to_double(defect / big) : 0;
  if (op.hermiticity_defect > 1e-12) throw Error(Err::Internal, "operator matrix is not self-adjoint");
  if (op.real && big > 0 && to_double(imag / big) > 1e-20) throw Error(Err::Internal, "expected a real operator matrix, imaginary part " + fmt17(to_double(imag / big)));
  return op;
}

std::vector<Real> operator_eigenvalues(const OperatorMatrix& op) {
  const size_t n = op.h.n;
  PrecisionScope ps(op.bits);
  if (!op.real) return hermitian_eigenvalues(op.h.re, op.h.im, n, op.bits);
  std::vector<Real> all;
  for (int r = 0; r < op.period; ++r) {
    std::vector<size_t> idx;
    for (size_t j = r; j < n; j += op.period) idx.push_back(j);
    const size_t m = idx.size();
    if (m == 0) continue;
    std::vector<Real> packed(m * (m + 1) / 2);
    for (size_t i = 0; i < m; ++i)
      for (size_t k = 0; k <= i; ++k) packed[i * (i + 1) / 2 + k] = op.h.re[idx[i] * n + idx[k]];
    auto ev = symmetric_eigenvalues(packed, m, op.bits);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

SpectrumResult low_spectrum(SpectralProblem p, size_t k, const std::vector<size_t>& schedule, double rel_tol, size_t cap) {
  if (k == 0 || schedule.empty()) throw Error(Err::InvalidArgument, "need k >= 1 and a nonempty schedule");
  SpectrumResult s;
  s.family_id = p.family_id;
  std::vector<size_t> sizes = schedule;
  while (sizes.back() * 2 <= cap) sizes.push_back(sizes.back() * 2);
  for (size_t nb : sizes) {
    if (nb < k) continue;
    if (nb > cap) break;
    p.basis_size = nb;
    auto op = build_operator(p);
    auto ev = operator_eigenvalues(op);
    std::vector<double> low;
    for (size_t i = 0; i < k && i < ev.size(); ++i) low.push_back(to_double(ev[i]));
    s.basis_sizes.push_back(nb);
    s.history.push_back(low);
    s.eigenvalues = low;
    if (s.history.size() >= 2) {
      const auto& prev = s.history[s.history.size() - 2];
      s.convergence.assign(k, 0);
      bool ok = true;
      for (size_t i = 0; i < k; ++i) {
        s.convergence[i] = std::fabs(low[i] - prev[i]);
        if (s.convergence[i] > rel_tol * std::fabs(low[i])) ok = false;
      }
      if (ok && nb >= schedule.back()) {
        s.converged = true;
        break;
      }
      if (ok && s.history.size() >= 2 && nb >= schedule.front() * 2) {
        s.converged = true;
        break;
      }
    }
  }
  return s;
}

FredholmValue fredholm_det(const SpectrumResult& s, double a, size_t k_modes, double tol) {
  if (k_modes == 0 || k_modes > s.eigenvalues.size()) throw Error(Err::InvalidArgument, "k_modes exceeds the computed spectrum");
  FredholmValue fv;
  double prod = 1;
  for (size_t j = 0; j < k_modes; ++j) prod *= 1 - a / s.eigenvalues[j];
  if (k_modes >= 2) {
    // log lambda_j ~ A sqrt(j) + B through the last two resolved modes.
    double j1 = k_modes - 1, j2 = k_modes;
    double l1 = std::log(s.eigenvalues[k_modes - 2]), l2 = std::log(s.eigenvalues[k_modes - 1]);
    double A = (l2 - l1) / (std::sqrt(j2) - std::sqrt(j1)), B = l2 - A * std::sqrt(j2);
    double tail = 0;
    for (size_t j = k_modes + 1; j < 1000000; ++j) {
      double q = a / std::exp(A * std::sqrt(double(j)) + B);
      if (q >= 1) throw Error(Err::TailDominates, "a lies beyond the resolved part of the spectrum");
      double term = std::log1p(-q);
      tail += term;
      if (std::fabs(term) < 1e-18 * (1 + std::fabs(tail))) break;
    }
    fv.tail = tail;
    fv.error = 0.5 * std::fabs(std::expm1(tail)) * std::fabs(prod);
  }
  fv.value = prod * std::exp(fv.tail);
  if (fv.error > tol) throw Error(Err::TailDominates, "unresolved modes contribute " + fmt17(fv.error));
  return fv;
}

}  // namespace mc
