#include "test_main.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "conifold.hpp"
#include "error.hpp"
#include "periods.hpp"
#include "regulator.hpp"

using namespace mc;
using cplx = std::complex<double>;

namespace {

// T_n(w) = (n/2) sum_k (-1)^k (n-k-1)!/(k!(n-2k)!) (2w)^{n-2k}.
mpz_class chebyshev_coeff(int n, int power) {
  if ((n - power) % 2) return 0;
  int k = (n - power) / 2;
  mpz_class a, b, c;
  mpz_fac_ui(a.get_mpz_t(), n - k - 1);
  mpz_fac_ui(b.get_mpz_t(), k);
  mpz_fac_ui(c.get_mpz_t(), n - 2 * k);
  mpz_class v = (a * n * (mpz_class(1) << (n - 2 * k))) / (b * c * 2);
  return k % 2 ? mpz_class(-v) : v;
}

// Li_2 by its defining series, for |z| < 1.
cplx li2_series(cplx z) {
  cplx s = 0, p = 1;
  for (int n = 1; n < 20000; ++n) {
    p *= z;
    s += p / double(n) / double(n);
    if (std::abs(p) < 1e-18) break;
  }
  return s;
}

double d2_oracle(cplx z) { return li2_series(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z)); }

cplx root(int k, int n) { return std::polar(1.0, 2 * M_PI * k / n); }

}  // namespace

TEST_CASE("Chebyshev conifold points") {
  auto d1 = chebyshev_conifold(1);
  CHECK(d1.a_hat == std::vector<mpz_class>{-3});
  CHECK(d1.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(chebyshev_conifold(2).a_hat == std::vector<mpz_class>{5, -5});
  CHECK(chebyshev_conifold(3).a_hat == std::vector<mpz_class>{-7, 14, -7});
  for (int g = 1; g <= 50; ++g) {
    auto d = chebyshev_conifold(g);
    for (int p = 0; p <= 2 * g + 1; ++p) CHECK(d.chebyshev[p] == chebyshev_coeff(2 * g + 1, p));
    for (int j = 1; j <= g; ++j) {
      mpz_class t = chebyshev_coeff(2 * g + 1, 2 * j - 1);
      CHECK(d.a_hat[j - 1] * (mpz_class(1) << (2 * j - 2)) == t);
    }
  }
  for (int g = 1; g <= 12; ++g) {
    auto d = chebyshev_conifold(g);
    for (int j = 0; j < g; ++j) {
      CHECK(d.residuals[j] < 1e-12);
      CHECK(std::fabs(d.second_derivative[j]) > 1e-6);
      CHECK(d.hessian_rel[j] > 1e-6);
    }
  }
}

TEST_CASE("ring points on the coordinate axes") {
  auto r11 = ring_point(1, 1);
  CHECK(r11.a_ring == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(r11.x_ring == doctest::Approx(1.0).epsilon(1e-15));
  for (int g = 1; g <= 8; ++g)
    for (int j = 1; j <= g; ++j) {
      auto r = ring_point(g, j);
      CHECK(r.residual < 1e-12);
      CHECK(r.a_ring * std::pow(r.x_ring, 2 * (g - j + 1)) == doctest::Approx(-(2.0 * g + 1) / (2 * j - 1)).epsilon(1e-13));
      CHECK(r.residue == doctest::Approx(std::sqrt(2.0 * g + 1) / (2 * M_PI * (g - j + 1) * std::sqrt(2.0 * j - 1))));
    }
}

TEST_CASE("conifold multiples") {
  PrecisionScope ps(256);
  const unsigned M = 300;
  std::vector<Real> leg(M + 1), ner(M + 1);
  Real c = 1;
  for (unsigned m = 0; m <= M; ++m) {
    leg[m] = 2 * real_pi() * c * c;  // c = binom(-1/2, m)^2 magnitude
    c = c * (2 * m + 1) / (2 * (m + 1));
  }
  Real f = 1;
  for (unsigned m = 0; m <= M; ++m) {
    ner[m] = f;
    f = f * (3 * m + 1) * (3 * m + 2) * (3 * m + 3) / ((m + 1) * (m + 1) * (m + 1));
  }
  CHECK(conifold_multiple(leg, Real(1), Real(1)).kappa == 2);
  CHECK(conifold_multiple(ner, Real(1) / 27, 1 / (2 * real_pi() * sqrt(Real(3)))).kappa == 3);

  // Table of gcd(2j-1, 2g+1).
  const std::vector<std::vector<long>> table{{1}, {1, 1}, {1, 1, 1}, {1, 3, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}, {1, 3, 5, 1, 3, 1, 1}};
  for (int g = 1; g <= 7; ++g)
    for (int j = 1; j <= g; ++j) {
      auto k = conifold_multiple_gg(g, j);
      CHECK(k.kappa == table[g - 1][j - 1]);
      CHECK(k.kappa == std::gcd(2 * j - 1, 2 * g + 1));
      CHECK(k.spread < 0.1);
      CHECK(std::fabs(k.ratio - k.kappa) < 1e-3);
    }
  // Sequence that never settles.
  std::vector<Real> bad(M + 1);
  for (unsigned m = 0; m <= M; ++m) bad[m] = (m % 2 ? 2 : 1) / Real(m + 1);
  CHECK_THROWS_AS(conifold_multiple(bad, Real(1), Real(1)), Error);
}

TEST_CASE("axis period coefficients") {
  // F_{2,2}, j=1: (-1)^{5l} (5l)!/((2l)!^2 l!).
  auto b = axis_period_coefficients(2, 1, 30);
  for (unsigned l = 0; l <= 30; ++l) {
    mpz_class a, d, e;
    mpz_fac_ui(a.get_mpz_t(), 5 * l);
    mpz_fac_ui(d.get_mpz_t(), 2 * l);
    mpz_fac_ui(e.get_mpz_t(), l);
    mpz_class v = a / (d * d * e);
    CHECK(b[l] == (l % 2 ? mpz_class(-v) : v));
  }
  // Agreement with the classical period series restricted to the axis.
  for (int g = 2; g <= 4; ++g) {
    CurveFamily f = family_mn(g, g);
    for (int j = 1; j <= g; ++j) {
      auto pi = classical_period_series(f, j, j, 40);
      auto bj = axis_period_coefficients(g, j, 40);
      for (const auto& [e, c] : pi.coeffs) {
        bool axis = true;
        for (int k = 0; k < g; ++k)
          if (k != j - 1 && e[k] != 0) axis = false;
        if (!axis) continue;
        long L = -e[j - 1];
        // Support spacing from the integrality of l'.
        long step = 1;
        while ((step * (g - j + 1)) % (2 * j - 1)) ++step;
        long m = (2 * g + 1) * step / (2 * j - 1);
        REQUIRE(L % m == 0);
        CHECK(c == mpq_class(bj[L / m]));
      }
    }
  }
}

TEST_CASE("regulator and classical period series") {
  CurveFamily p2 = builtin_family("local_p2");
  auto reg = regulator_gamma_series(p2, 1, 24);
  auto mm = mirror_map_series(p2, 24);
  for (unsigned k = 1; k <= 24; ++k) CHECK(reg.coeff({-static_cast<long>(k)}) == mm[k]);
  auto pi11 = classical_period_series(family_mn(1, 1), 1, 1, 24);
  auto om = omega_gamma_series(p2, 24);
  for (unsigned k = 0; k <= 24; ++k) CHECK(pi11.coeff({-static_cast<long>(k)}) == om[k]);
  CHECK(regulator_gamma_series(family_mn(1, 1), 1, 24).coeffs == reg.coeffs);

  // Brute-force constant terms of phi_j = x^{j-1} y^{j-1} (F - a_j x^{1-j} y^{1-j}) with a_k numeric.
  CurveFamily f = family_mn(2, 2);
  for (int j = 1; j <= 2; ++j) {
    auto s = regulator_gamma_series(f, j, 12);
    for (const mpq_class ak : {mpq_class(3, 7), mpq_class(-2, 5)}) {
      std::vector<mpq_class> a{ak, ak};
      a[j - 1] = 0;
      LaurentPolynomial phi = f.with_moduli(a).shifted({j - 1, j - 1});
      auto ct = constant_terms(phi, 12);
      for (long m = 1; m <= 12; ++m) {
        mpq_class lattice = 0;
        for (const auto& [e, c] : s.coeffs) {
          if (e[j - 1] != -m) continue;
          mpq_class v = c;
          for (int k = 0; k < 2; ++k)
            if (k != j - 1)
              for (long i = 0; i < e[k]; ++i) v *= ak;
          lattice += v;
        }
        mpq_class brute = ct[m] / m;
        if (m % 2 == 0) brute = -brute;
        CHECK(lattice == brute);
      }
    }
  }
  // Only multi-indices with integral nonnegative l' appear, and Pi_{jl} vanishes on the a_j-axis.
  for (int g = 2; g <= 4; ++g) {
    CurveFamily fg = family_mn(g, g);
    for (int j = 1; j <= g; ++j) {
      auto s = regulator_gamma_series(fg, j, 30);
      CHECK(!s.coeffs.empty());
      for (const auto& [e, c] : s.coeffs) {
        long lp = (g - j + 1) * 0L, L = -e[j - 1];
        long lsum = 0;
        for (int k = 0; k < g; ++k)
          if (k != j - 1) lsum += e[k];
        // L = 2 l' + |l| with l_j recovered from L.
        long num = (2 * j - 1) * L;
        for (int k = 0; k < g; ++k)
          if (k != j - 1) num -= (2 * k + 1) * e[k];
        REQUIRE(num % (2 * g + 1) == 0);
        long lj = num / (2 * g + 1);
        lp = L - lsum - lj;
        CHECK(lj >= 0);
        CHECK(lp >= 0);
        CHECK(lp % 2 == 0);
        CHECK(c != 0);
      }
      for (int l = 1; l <= g; ++l) {
        if (l == j) continue;
        auto p = classical_period_series(fg, j, l, 30);
        for (const auto& [e, c] : p.coeffs) {
          bool axis = true;
          for (int k = 0; k < g; ++k)
            if (k != j - 1 && e[k] != 0) axis = false;
          CHECK(!axis);
        }
      }
    }
  }
  CHECK_THROWS_AS(regulator_gamma_series(builtin_family("m_n:3,1"), 1, 5), Error);
}

TEST_CASE("Bloch-Wigner dilogarithm") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (double x : {-5.0, -1.0, 0.3, 0.5, 2.0, 7.5}) CHECK(bloch_wigner({x, 0}) == 0);
  const double catalan = 0.91596559417721901505;
  CHECK(bloch_wigner({0, 1}) == doctest::Approx(catalan).epsilon(1e-15));
  CHECK(bloch_wigner(std::polar(1.0, M_PI / 3)) == doctest::Approx(1.0149416064096536250).epsilon(1e-15));
  for (int i = 0; i < 100; ++i) {
    cplx z(u(rng), u(rng));
    CHECK(std::fabs(bloch_wigner(std::conj(z)) + bloch_wigner(z)) < 1e-13);
    CHECK(std::fabs(bloch_wigner(1.0 / z) + bloch_wigner(z)) < 1e-13);
    cplx w = z / (std::abs(z) * 1.0);  // on the unit circle
    CHECK(std::fabs(bloch_wigner(1.0 / w) + bloch_wigner(w)) < 1e-13);
    CHECK(std::fabs(bloch_wigner(std::conj(w)) + bloch_wigner(w)) < 1e-13);
    // Five-term relation.
    cplx x(u(rng), u(rng)), y(u(rng), u(rng));
    double five = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / (1.0 - x * y)) + bloch_wigner(1.0 - x * y) +
                  bloch_wigner((1.0 - y) / (1.0 - x * y));
    CHECK(std::fabs(five) < 1e-12);
    cplx s = std::polar(0.85 * std::fabs(u(rng)) / 3, u(rng));
    if (std::abs(s) > 1e-3) CHECK(std::fabs(bloch_wigner(s) - d2_oracle(s)) < 1e-14);
  }
  CHECK_THROWS_AS(bloch_wigner({1, 0}), Error);
  CHECK_THROWS_AS(bloch_wigner({0, 0}), Error);
}

TEST_CASE("D_{m,n} values") {
  for (int g = 1; g <= 6; ++g) {
    const int n = 2 * g + 1;
    // 2(2g+1) D_2(1 + zeta^g) = -2 pi D_{g,g}.
    CHECK(dmn(g, g) == doctest::Approx(-n / M_PI * bloch_wigner(1.0 + root(g, n))).epsilon(1e-13));
    CHECK(std::fabs(dmn(2 * g - 1, 1)) == doctest::Approx(std::fabs(n / M_PI * bloch_wigner(1.0 + root(1, n)))).epsilon(1e-13));
  }
  cplx zf = std::polar(1.0, M_PI / 5);
  cplx w = (std::pow(zf, 2) - std::pow(zf, -2)) / (zf - 1.0 / zf);
  // The argument is -(zeta_5 + zeta_5^2) = 1 + zeta_5^3 + zeta_5^4.
  CHECK(std::abs(-std::pow(zf, 3) * w - (1.0 + root(3, 5) + root(4, 5))) < 1e-14);
  CHECK(dmn(2, 2) == doctest::Approx(5 / M_PI * bloch_wigner(1.0 + root(3, 5) + root(4, 5))).epsilon(1e-14));
}

TEST_CASE("uniformizations and divisors") {
  for (int g = 1; g <= 5; ++g) {
    auto cd = chebyshev_conifold(g);
    for (int j = 1; j <= g; ++j) {
      auto u = uniformization(g, j);
      CHECK(u.max_residual < 1e-10);
      const double xh = cd.nodes[j - 1];
      for (cplx z : {cplx(1e-7, 1e-8), cplx(1e7, -3e6)}) {
        CHECK(std::abs(u.X(z) - xh) < 1e-5);
        CHECK(std::abs(u.Y(z) - xh) < 1e-5);
      }
      const cplx xi = root(g - j + 1, 2 * g + 1);
      for (cplx z : {cplx(0.3, 0.7), cplx(-1.4, 0.2)}) {
        cplx ratio = u.X(z) / u.Y(z), expect = std::pow((z - 1.0) / (z - xi * xi), 2 * g + 1);
        CHECK(std::abs(ratio / expect - 1.0) < 1e-10);
      }
      const double target = 2 * (2 * g + 1) * bloch_wigner(1.0 + xi);
      CHECK(u.divisor.d2() == doctest::Approx(target).epsilon(1e-12));
      CHECK(u.reduced.d2() == doctest::Approx(target).epsilon(1e-12));
      auto red = reduce_roots_of_unity(u.divisor);
      CHECK(red.d2() == doctest::Approx(target).epsilon(1e-12));
      for (const auto& [p, m] : red.terms) CHECK(2 * p.num < p.order);
      // (g+1 - 1 - g)^2 = 0: the divisor has degree zero.
      CHECK(u.divisor.degree() == 0);
    }
  }
}

TEST_CASE("dilogarithm identities at the conifold point") {
  auto r1 = theorem_b_check(1, 1, 100000);
  CHECK(r1.residual < 1e-6);
  CHECK(r1.lhs == doctest::Approx(3 / M_PI * bloch_wigner(1.0 + root(1, 3))));
  // g=1 partial sum oracle: log 3 - sum_{l} (3l-1)!/(l!^3 27^l).
  double s = 0, t = 2.0 / 27;
  for (int l = 1; l <= 200; ++l) {
    s += t;
    t *= double(3 * l) * (3 * l + 1) * (3 * l + 2) / (double(l + 1) * (l + 1) * (l + 1) * 27);
  }
  auto r200 = theorem_b_check(1, 1, 200);
  CHECK(r200.rhs_truncated == doctest::Approx(std::log(3.0) - s).epsilon(1e-13));

  for (int j = 1; j <= 2; ++j) {
    auto r = theorem_b_check(2, j, 400);
    CHECK(r.residual < 1e-6);
    CHECK(r.residual < r.tail_bound + 1e-8);
  }
  CHECK(theorem_b_lhs(2, 1) == doctest::Approx(5 / M_PI * bloch_wigner(1.0 + root(2, 5))));
  for (int j = 1; j <= 3; ++j) {
    auto r = theorem_b_check(3, j, 200);
    CHECK(r.residual < r.tail_bound + 1e-8);
    CHECK(r.terms > 0);
  }
  CHECK_THROWS_AS(theorem_b_check(2, 3, 100), Error);
}

TEST_CASE("toric equivalence of F_{g,g} and F_{2g-1,1}") {
  for (int g = 1; g <= 5; ++g) {
    std::vector<mpq_class> a;
    for (int k = 1; k <= g; ++k) a.push_back(mpq_class(k * k + 1, 2 * k + 3));
    LaurentPolynomial F = family_mn(g, g).with_moduli(a);
    // x^p y^q -> u^{(g-1)p - g q} v^{p-q}, then divide by u^{g-1}.
    LaurentPolynomial G = F.monomial_map(g - 1, -g, 1, -1).shifted({1 - g, 0});
    LaurentPolynomial expect;
    expect.add({1, 0}, 1);
    expect.add({0, 1}, 1);
    expect.add({-(2 * g - 1), -1}, 1);
    for (int n = 1; n <= g; ++n) expect.add({1 - n, 0}, a[g - n]);
    CHECK(G == expect);
    CurveFamily h = family_mn(2 * g - 1, 1);
    CHECK(h.genus() == g);
    for (const Pt& p : h.interior_points) CHECK(G.coeff(p) != 0);
  }
}
