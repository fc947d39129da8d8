#include "symeig.hpp"

#include <mpfr.h>

#include <algorithm>
#include <memory>

#include "error.hpp"

namespace mc {

namespace {

// Packed lower triangle of raw MPFR values.
class Packed {
 public:
  Packed(size_t n, unsigned bits) : n_(n), v_(new __mpfr_struct[n * (n + 1) / 2]), size_(n * (n + 1) / 2) {
    for (size_t i = 0; i < size_; ++i) mpfr_init2(&v_[i], bits);
  }
  ~Packed() {
    for (size_t i = 0; i < size_; ++i) mpfr_clear(&v_[i]);
  }
  mpfr_ptr at(size_t i, size_t k) { return &v_[i * (i + 1) / 2 + k]; }  // k <= i

 private:
  size_t n_;
  std::unique_ptr<__mpfr_struct[]> v_;
  size_t size_;
};

struct Scratch {
  explicit Scratch(unsigned bits) {
    for (auto* p : {f, g, h, hh, scale, t}) mpfr_init2(p, bits);
  }
  ~Scratch() {
    for (auto* p : {f, g, h, hh, scale, t}) mpfr_clear(p);
  }
  mpfr_t f, g, h, hh, scale, t;
};

}  // namespace

std::vector<Real> tridiagonal_eigenvalues(std::vector<Real> d, std::vector<Real> e) {
  const size_t n = d.size();
  if (n == 0) return {};
  e.resize(n, Real(0));
  // e[i] couples i and i+1 after this shift.
  for (size_t l = 0; l < n; ++l) {
    int iter = 0;
    size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        Real dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= std::numeric_limits<Real>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw Error(Err::NotConverged, "implicit QL did not converge");
        Real g = (d[l + 1] - d[l]) / (2 * e[l]);
        Real r = hypot(g, Real(1));
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? Real(abs(r)) : Real(-abs(r))));
        Real s = 1, c = 1, p = 0;
        size_t i;
        bool underflow = false;
        for (i = m; i-- > l;) {
          Real f = s * e[i], b = c * e[i];
          r = hypot(f, g);
          e[i + 1] = r;
          if (r == 0) {
            d[i + 1] -= p;
            e[m] = 0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<Real> symmetric_eigenvalues(const std::vector<Real>& lower, size_t n, unsigned bits) {
  if (lower.size() != n * (n + 1) / 2) throw Error(Err::InvalidArgument, "packed matrix has the wrong size");
  if (n == 0) return {};
  PrecisionScope ps(bits);
  Packed a(n, bits);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k <= i; ++k) mpfr_set(a.at(i, k), lower[i * (i + 1) / 2 + k].backend().data(), MPFR_RNDN);
  std::unique_ptr<__mpfr_struct[]> e(new __mpfr_struct[n]);
  for (size_t i = 0; i < n; ++i) mpfr_init2(&e[i], bits), mpfr_set_ui(&e[i], 0, MPFR_RNDN);
  std::vector<Real> offd(n, Real(0));
  Scratch s(bits);
  const auto R = MPFR_RNDN;

  // Householder reduction (eigenvalue-only variant), row i annihilated below the subdiagonal.
  for (size_t i = n - 1; i > 0; --i) {
    size_t l = i - 1;
    mpfr_set_ui(s.h, 0, R);
    if (l > 0) {
      mpfr_set_ui(s.scale, 0, R);
      for (size_t k = 0; k <= l; ++k) {
        mpfr_abs(s.t, a.at(i, k), R);
        mpfr_add(s.scale, s.scale, s.t, R);
      }
      if (mpfr_zero_p(s.scale)) {
        mpfr_set(&e[i], a.at(i, l), R);
      } else {
        for (size_t k = 0; k <= l; ++k) {
          mpfr_div(a.at(i, k), a.at(i, k), s.scale, R);
          mpfr_fma(s.h, a.at(i, k), a.at(i, k), s.h, R);
        }
        mpfr_set(s.f, a.at(i, l), R);
        mpfr_sqrt(s.g, s.h, R);
        if (mpfr_sgn(s.f) >= 0) mpfr_neg(s.g, s.g, R);
        mpfr_mul(&e[i], s.scale, s.g, R);
        mpfr_fms(s.h, s.f, s.g, s.h, R);  // h - f g, negated below
        mpfr_neg(s.h, s.h, R);
        mpfr_sub(a.at(i, l), s.f, s.g, R);
        mpfr_set_ui(s.f, 0, R);
        for (size_t j = 0; j <= l; ++j) {
          mpfr_set_ui(s.g, 0, R);
          for (size_t k = 0; k <= j; ++k) mpfr_fma(s.g, a.at(j, k), a.at(i, k), s.g, R);
          for (size_t k = j + 1; k <= l; ++k) mpfr_fma(s.g, a.at(k, j), a.at(i, k), s.g, R);
          mpfr_div(&e[j], s.g, s.h, R);
          mpfr_fma(s.f, &e[j], a.at(i, j), s.f, R);
        }
        mpfr_mul_2ui(s.t, s.h, 1, R);
        mpfr_div(s.hh, s.f, s.t, R);
        for (size_t j = 0; j <= l; ++j) {
          mpfr_set(s.f, a.at(i, j), R);
          mpfr_mul(s.t, s.hh, s.f, R);
          mpfr_sub(&e[j], &e[j], s.t, R);
          mpfr_set(s.g, &e[j], R);
          for (size_t k = 0; k <= j; ++k) {
            mpfr_mul(s.t, s.f, &e[k], R);
            mpfr_fma(s.t, s.g, a.at(i, k), s.t, R);
            mpfr_sub(a.at(j, k), a.at(j, k), s.t, R);
          }
        }
      }
    } else {
      mpfr_set(&e[i], a.at(i, l), R);
    }
  }
  std::vector<Real> d(n);
  for (size_t i = 0; i < n; ++i) {
    d[i] = Real(0);
    mpfr_set(d[i].backend().data(), a.at(i, i), R);
    if (i + 1 < n) mpfr_set(offd[i].backend().data(), &e[i + 1], R);
  }
  for (size_t i = 0; i < n; ++i) mpfr_clear(&e[i]);
  return tridiagonal_eigenvalues(std::move(d), std::move(offd));
}

std::vector<Real> hermitian_eigenvalues(const std::vector<Real>& re, const std::vector<Real>& im, size_t n, unsigned bits) {
  if (re.size() != n * n || im.size() != n * n) throw Error(Err::InvalidArgument, "hermitian matrix has the wrong size");
  PrecisionScope ps(bits);
  const size_t m = 2 * n;
  std::vector<Real> packed(m * (m + 1) / 2);
  auto entry = [&](size_t i, size_t k) -> Real {
    bool bi = i >= n, bk = k >= n;
    size_t ii = i % n, kk = k % n;
    if (bi == bk) return re[ii * n + kk];
    return bi ? im[ii * n + kk] : Real(-im[ii * n + kk]);
  };
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k <= i; ++k) packed[i * (i + 1) / 2 + k] = entry(i, k);
  auto ev = symmetric_eigenvalues(packed, m, bits);
  std::vector<Real> out;
  for (size_t i = 0; i < m; i += 2) out.push_back((ev[i] + ev[i + 1]) / 2);
  return out;
}

}  // namespace mc
