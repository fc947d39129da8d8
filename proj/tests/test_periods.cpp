#include "test_main.hpp"

#include <cmath>

#include "error.hpp"
#include "periods.hpp"

using namespace mc;

namespace {

mpz_class fact(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

}  // namespace

TEST_CASE("omega series for local P2 and P1xP1") {
  auto w = omega_gamma_series(builtin_family("local_p2"), 30);
  CHECK(w[0] == 1);
  CHECK(w[3] == -6);
  CHECK(w[6] == 90);
  for (unsigned m = 0; m <= 10; ++m) {
    mpq_class expect = mpq_class(fact(3 * m) / (fact(m) * fact(m) * fact(m)));
    CHECK(w[3 * m] == (m % 2 ? -expect : expect));
  }
  auto v = omega_gamma_series(builtin_family("local_p1xp1"), 20);
  CHECK(v[2] == 4);
  CHECK(v[4] == 36);
  CHECK(v[1] == 0);
}

TEST_CASE("mirror map satisfies theta s = 1 - omega") {
  for (auto id : {"local_p2", "local_p1xp1", "local_f1", "local_f2"}) {
    auto f = builtin_family(id);
    auto s = mirror_map_series(f, 40), w = omega_gamma_series(f, 40);
    auto lhs = s.theta();
    for (unsigned k = 1; k <= 40; ++k) CHECK(lhs[k] == -w[k]);
  }
}

TEST_CASE("discovered operators") {
  auto L = pf_discover(builtin_family("local_p2"), 3, 12);
  // theta^2 + 27 x^3 (theta + 1)(theta + 2)
  CHECK(L.order() == 2);
  CHECK(L.poly_at(0, 5) == 25);
  CHECK(L.poly_at(3, 5) == 27 * 6 * 7);
  auto M = pf_discover(builtin_family("local_p1xp1"), 3, 12);
  CHECK(M.order() == 2);
  CHECK(M.poly_at(2, 4) == -16 * 25);
  for (auto id : {"local_p2", "local_p1xp1", "local_f1", "local_f2"}) {
    auto w = omega_gamma_series(builtin_family(id), 80);
    auto op = pf_discover(w, 3, 12);
    auto r = op.apply(w);
    for (unsigned k = 0; k <= 80; ++k) CHECK(r[k] == 0);
  }
  std::vector<mpq_class> junk(61);
  for (unsigned k = 0; k <= 60; ++k) junk[k] = mpq_class(fact(k) + k * k + 1, k + 1);
  CHECK_THROWS_AS(pf_discover(RationalSeries("a_inv", junk), 1, 2), Error);
}

TEST_CASE("local P2 genus-zero invariants") {
  auto d = genus_one_data(builtin_family("local_p2"), 60);
  CHECK(d.N[3] == 3);
  CHECK(d.N[6] == mpq_class(-45, 8));
  CHECK(d.N[9] == mpq_class(244, 9));
  CHECK(d.N[12] == mpq_class(-12333, 64));
  for (unsigned k = 1; k <= 60; ++k)
    if (k % 3) CHECK(d.N[k] == 0);
  auto n = gv_from_gw(d.N);
  CHECK(n[3] == 3);
  CHECK(n[6] == -6);
  CHECK(n[9] == 27);
  CHECK(n[12] == -192);
  CHECK(n[15] == 1695);
  for (unsigned k = 1; k <= 60; ++k) CHECK(is_integer(n[k]));
  CHECK(d.T == mpq_class(5, 4));
  CHECK(d.r == 3);
  CHECK(d.r_polar == 9);
  CHECK(std::fabs(d.a_hat + 3) < 1e-12);
}

TEST_CASE("genus-zero invariants are stable under raising the order") {
  for (auto id : {"local_p1xp1", "local_f1", "local_f2"}) {
    auto a = genus_one_data(builtin_family(id), 50);
    auto b = genus_one_data(builtin_family(id), 60);
    for (unsigned k = 1; k <= 50; ++k) CHECK(a.N[k] == b.N[k]);
    auto n = gv_from_gw(a.N);
    for (unsigned k = 1; k <= 50; ++k) CHECK(is_integer(n[k]));
  }
}

TEST_CASE("local P1xP1 invariants") {
  auto d = genus_one_data(builtin_family("local_p1xp1"), 60);
  auto n = gv_from_gw(d.N);
  // degree-d sums of the diagonal-direction GV numbers: -4, -4, -12, -48
  CHECK(n[2] == -4);
  CHECK(n[4] == -4);
  CHECK(n[6] == -12);
  CHECK(n[8] == -48);
  CHECK(d.T == mpq_class(7, 6));
  CHECK(std::fabs(d.a_hat + 4) < 1e-12);
}

TEST_CASE("log solution is annihilated") {
  auto d = genus_one_data(builtin_family("local_p2"), 60);
  // L(omega log x + h) = L_log(omega) + L(h) where L_log comes from d/dtheta of the symbol.
  auto r = d.pf.apply(d.h);
  for (unsigned n = 1; n <= 60; ++n) {
    mpq_class acc = 0;
    for (unsigned j = 0; j <= d.pf.degree() && j <= n; ++j) {
      mpq_class s = n - j, dp = 0, sp = 1;
      for (unsigned i = 1; i <= d.pf.order(); ++i) {
        dp += d.pf.p[i][j] * i * sp;
        sp *= s;
      }
      acc += dp * d.omega[n - j];
    }
    CHECK(r[n] + acc == 0);
  }
}

TEST_CASE("period evaluation") {
  PrecisionScope ps(256);
  auto d = genus_one_data(builtin_family("local_p2"), 120);
  Real prev = -1e9;
  for (int a : {6, 8, 12, 20, 50}) {
    auto pv = evaluate_periods(d, Real(a), 1e-12);
    CHECK(pv.nu > prev);
    prev = pv.nu;
    CHECK(std::fabs(to_double(pv.nu - pv.nu_functional)) < 1e-12);
    CHECK(pv.Omega_re == Real(-4.5));
    CHECK(std::fabs(to_double(pv.R_gamma_im + 2 * real_pi() * pv.t)) < 1e-30);
  }
  CHECK_THROWS_AS(evaluate_periods(d, Real(3), 1e-12), Error);
  CHECK_THROWS_AS(evaluate_periods(d, Real(2.5), 1e-12), Error);
  try {
    evaluate_periods(d, Real(3.05), 1e-30);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == Err::InsufficientOrder);
  }
}

TEST_CASE("precision doubling leaves values unchanged") {
  auto d = genus_one_data(builtin_family("local_p1xp1"), 120);
  double lo, hi;
  {
    PrecisionScope ps(128);
    lo = to_double(evaluate_periods(d, Real(10), 1e-15).nu);
  }
  {
    PrecisionScope ps(256);
    hi = to_double(evaluate_periods(d, Real(10), 1e-15).nu);
  }
  CHECK(std::fabs(lo - hi) < 1e-15);
}

TEST_CASE("large-u regulator asymptotics") {
  PrecisionScope ps(200);
  auto d = genus_one_data(builtin_family("local_p1xp1"), 120);
  for (int u : {20, 50, 200}) {
    double err = 0;
    Real rb = regulator_beta_negative_series(d, Real(u), &err);
    auto q = regulator_quadrature_p1xp1(Real(u));
    CHECK(std::fabs(to_double(rb - q.value)) < 1e-15);
    CHECK(err < 1e-15);
  }
}
