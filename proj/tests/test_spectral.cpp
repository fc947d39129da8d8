#include "test_main.hpp"

#include <cmath>
#include <random>

#include "error.hpp"
#include "normal.hpp"
#include "spectral.hpp"
#include "symeig.hpp"

using namespace mc;

namespace {

// exp of a real symmetric matrix by scaling and squaring of the Taylor series.
std::vector<Real> expm(std::vector<Real> x, size_t n) {
  Real norm = 0;
  for (auto& v : x) norm = max(norm, abs(v) * n);
  int sq = 0;
  while (norm > 0.5) norm /= 2, ++sq;
  for (auto& v : x) v = ldexp(v, -sq);
  auto mul = [n](const std::vector<Real>& a, const std::vector<Real>& b) {
    std::vector<Real> c(n * n, Real(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (a[i * n + k] == 0) continue;
        for (size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
      }
    return c;
  };
  std::vector<Real> result(n * n, Real(0)), term(n * n, Real(0));
  for (size_t i = 0; i < n; ++i) result[i * n + i] = term[i * n + i] = 1;
  for (int k = 1; k < 40; ++k) {
    term = mul(term, x);
    for (auto& v : term) v /= k;
    for (size_t i = 0; i < n * n; ++i) result[i] += term[i];
  }
  for (int i = 0; i < sq; ++i) result = mul(result, result);
  return result;
}

}  // namespace

TEST_CASE("exp_linear_matrix against a truncated matrix exponential") {
  PrecisionScope ps(192);
  const double hbar = 2 * M_PI;
  const size_t nb = 80;
  for (auto [m1, m2] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {-1, -1}, {1, -1}}) {
    auto M = exp_linear_matrix(m1, m2, hbar, 40, 192);
    // In the basis e^{-i theta k}|k>, m1 x + m2 y is real tridiagonal with entries |alpha| sqrt(k).
    Real al = sqrt(real_pi() * (m1 * m1 + m2 * m2));
    std::vector<Real> X(nb * nb, Real(0));
    for (size_t k = 1; k < nb; ++k) X[k * nb + k - 1] = X[(k - 1) * nb + k] = al * sqrt(Real(k));
    auto E = expm(X, nb);
    Real theta = atan2(Real(m2), Real(m1));
    Real worst = 0;
    for (size_t j = 0; j < 20; ++j)
      for (size_t k = 0; k < 20; ++k) {
        Real ang = theta * (double(j) - double(k));
        Real dre = M.re[j * 40 + k] - E[j * nb + k] * cos(ang);
        Real dim = M.im[j * 40 + k] - E[j * nb + k] * sin(ang);
        worst = max(worst, (abs(dre) + abs(dim)) / abs(E[j * nb + j]));
      }
    CHECK(worst < 1e-10);
    CHECK(abs(M.re[0] - exp(al * al / 2)) < 1e-40);
  }
  auto I = exp_linear_matrix(0, 0, hbar, 10);
  for (size_t j = 0; j < 10; ++j)
    for (size_t k = 0; k < 10; ++k) {
      CHECK(I.re[j * 10 + k] == (j == k ? 1 : 0));
      CHECK(I.im[j * 10 + k] == 0);
    }
  CHECK_THROWS_AS(exp_linear_matrix(15, 0, hbar, 5), Error);
}

TEST_CASE("symmetric eigensolver oracles") {
  PrecisionScope ps(160);
  // (2, -1) Toeplitz: 2 - 2 cos(k pi / (n + 1))
  const size_t n = 30;
  std::vector<Real> packed(n * (n + 1) / 2, Real(0));
  for (size_t i = 0; i < n; ++i) {
    packed[i * (i + 1) / 2 + i] = 2;
    if (i) packed[i * (i + 1) / 2 + i - 1] = -1;
  }
  auto ev = symmetric_eigenvalues(packed, n, 160);
  for (size_t k = 1; k <= n; ++k) CHECK(abs(ev[k - 1] - (2 - 2 * cos(k * real_pi() / (n + 1)))) < 1e-40);
  // Q diag Q^T with Q a product of random Givens rotations
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(0, 6.28);
  const size_t m = 12;
  std::vector<Real> A(m * m, Real(0));
  for (size_t i = 0; i < m; ++i) A[i * m + i] = Real(int(i * i) - 7);
  for (int r = 0; r < 80; ++r) {
    size_t p = rng() % m, q = rng() % m;
    if (p == q) continue;
    Real c = cos(Real(U(rng))), s = sin(Real(U(rng)));
    Real nn = sqrt(c * c + s * s);
    c /= nn, s /= nn;
    for (size_t k = 0; k < m; ++k) {  // rows
      Real a = A[p * m + k], b = A[q * m + k];
      A[p * m + k] = c * a - s * b;
      A[q * m + k] = s * a + c * b;
    }
    for (size_t k = 0; k < m; ++k) {  // columns
      Real a = A[k * m + p], b = A[k * m + q];
      A[k * m + p] = c * a - s * b;
      A[k * m + q] = s * a + c * b;
    }
  }
  std::vector<Real> pk(m * (m + 1) / 2);
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k <= i; ++k) pk[i * (i + 1) / 2 + k] = A[i * m + k];
  auto e2 = symmetric_eigenvalues(pk, m, 160);
  for (size_t i = 0; i < m; ++i) CHECK(abs(e2[i] - Real(int(i * i) - 7)) < 1e-35);
  // Hermitian route on a real matrix
  std::vector<Real> zero(m * m, Real(0));
  auto e3 = hermitian_eigenvalues(A, zero, m, 160);
  for (size_t i = 0; i < m; ++i) CHECK(abs(e3[i] - e2[i]) < 1e-35);
}

TEST_CASE("operator structure") {
  auto p = make_problem(builtin_family("local_p1xp1"), 40);
  auto op = build_operator(p);
  CHECK(op.real);
  CHECK(op.period == 4);
  CHECK(op.hermiticity_defect < 1e-12);
  auto q = make_problem(builtin_family("local_p2"), 40);
  auto oq = build_operator(q);
  CHECK(oq.real);
  CHECK(oq.period == 1);
  auto f1 = build_operator(make_problem(builtin_family("local_f1"), 30));
  CHECK_FALSE(f1.real);
  CHECK(f1.hermiticity_defect < 1e-12);
  // x <-> y for the square leaves the problem and spectrum unchanged
  Monomial mm{1, 1, 1};
  CHECK(mm.signed_coeff() == -1);
}

TEST_CASE("spectrum invariant under swapping the coordinates") {
  for (auto id : {"local_p1xp1", "local_f1"}) {
    auto p = make_problem(builtin_family(id), 60);
    auto q = p;
    for (auto& m : q.monomials) std::swap(m.m1, m.m2);
    auto a = operator_eigenvalues(build_operator(p));
    auto b = operator_eigenvalues(build_operator(q));
    for (size_t i = 0; i < 5; ++i) CHECK(std::fabs(to_double(a[i] / b[i]) - 1) < 1e-9);
  }
}

TEST_CASE("variational monotonicity and positivity") {
  for (auto id : {"local_p1xp1", "local_p2"}) {
    std::vector<double> prev;
    for (size_t nb : {20, 40, 60, 80}) {
      auto ev = operator_eigenvalues(build_operator(make_problem(builtin_family(id), nb)));
      CHECK(ev[0] > 0);
      for (size_t i = 0; i < prev.size(); ++i) CHECK(to_double(ev[i]) <= prev[i] * (1 + 1e-15));
      prev.clear();
      for (size_t i = 0; i < 4; ++i) prev.push_back(to_double(ev[i]));
    }
  }
}

TEST_CASE("low spectrum, Weyl consistency and Fredholm determinant") {
  auto s = low_spectrum(make_problem(builtin_family("local_p1xp1")), 6, {50, 100, 200});
  CHECK(s.converged);
  CHECK(s.eigenvalues[0] > 4);
  for (size_t i = 1; i < s.eigenvalues.size(); ++i) CHECK(s.eigenvalues[i] > s.eigenvalues[i - 1]);
  NormalFunction nf(builtin_family("local_p1xp1"));
  for (size_t k = 1; k < s.eigenvalues.size(); ++k) {
    double mid = std::sqrt(s.eigenvalues[k - 1] * s.eigenvalues[k]);
    auto w = weyl_bounds(nf, mid);
    CHECK(w.lower <= static_cast<long>(k));
    CHECK(static_cast<double>(k) <= w.upper);
  }
  CHECK(fredholm_det(s, 0, 6).value == 1);
  double l1 = s.eigenvalues[0];
  CHECK(fredholm_det(s, l1 * (1 - 1e-7), 6).value > 0);
  CHECK(fredholm_det(s, l1 * (1 + 1e-7), 6).value < 0);
  double l2 = s.eigenvalues[1];
  CHECK(fredholm_det(s, l2 * (1 + 1e-7), 6).value > 0);
  CHECK_THROWS_AS(fredholm_det(s, 1e9, 2, 1e-12), Error);
}
