#include "test_main.hpp"

#include <cmath>

#include "error.hpp"
#include "normal.hpp"

using namespace mc;

TEST_CASE("nu is increasing and real on a dense grid") {
  for (auto id : {"local_p2", "local_p1xp1", "local_f1", "local_f2"}) {
    NormalFunction nf(builtin_family(id));
    double e = nf.edge();
    double prev = -1e300;
    for (int i = 0; i <= 200; ++i) {
      double a = e * std::pow(400.0, i / 200.0);
      double v = nf.nu(a, 1e-8);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("nu large-a expansion and V/nu") {
  NormalFunction nf(builtin_family("local_p2"));
  const auto& d = nf.data();
  double rp = d.r_polar;
  for (double a : {1e4, 1e6, 1e8}) {
    double s = nf.t(a) - std::log(a);
    double rest = nf.nu(a) - rp / (8 * M_PI * M_PI) * (std::log(a) * std::log(a) + 2 * std::log(a) * s);
    CHECK(std::fabs(rest - d.T.get_d()) < 20 * std::log(a) / a);
    auto pv = nf.evaluate(a);
    CHECK(std::fabs(to_double(pv.V / pv.nu - pv.omega)) < 1e-30);
  }
  CHECK(std::isfinite(nf.nu(1e6)));
}

TEST_CASE("series and functional routes agree at random points") {
  NormalFunction nf(builtin_family("local_p1xp1"));
  double ah = std::fabs(nf.data().a_hat);
  unsigned state = 12345;
  for (int i = 0; i < 20; ++i) {
    state = state * 1103515245u + 12345u;
    double u = (state >> 8) / double(1 << 24);
    double a = ah * (1.5 + 98.5 * u);
    auto pv = nf.evaluate(a, 1e-12);
    CHECK(std::fabs(to_double(pv.nu - pv.nu_functional)) < 1e-12);
  }
}

TEST_CASE("quantization roots") {
  NormalFunction nf(builtin_family("local_p1xp1"));
  auto sp = predicted_spectrum(nf, 8);
  REQUIRE(sp.roots.size() >= 3);
  CHECK(sp.roots.front().n == 2);
  for (size_t i = 0; i < sp.roots.size(); ++i) {
    const auto& q = sp.roots[i];
    CHECK(q.residual < 1e-10);
    CHECK(q.nu_lo <= q.n);
    CHECK(q.nu_hi >= q.n);
    CHECK(q.a > std::fabs(sp.a_hat));
    if (i) CHECK(q.lo >= sp.roots[i - 1].hi);
  }
  // root count below lambda equals the jump of floor(nu)
  for (double lam : {20.0, 100.0, 500.0}) {
    long count = 0;
    for (const auto& q : sp.roots) count += q.a <= lam;
    CHECK(count == static_cast<long>(std::floor(nf.nu(lam))) - static_cast<long>(std::floor(sp.nu_edge)));
  }
}

TEST_CASE("roots are stable under more terms and more bits") {
  NormalFunction a(builtin_family("local_p2"), 120, 256), b(builtin_family("local_p2"), 160, 512);
  auto sa = predicted_spectrum(a, 5), sb = predicted_spectrum(b, 5);
  REQUIRE(sa.roots.size() == sb.roots.size());
  for (size_t i = 0; i < sa.roots.size(); ++i) CHECK(std::fabs(sa.roots[i].a / sb.roots[i].a - 1) < 1e-9);
}

TEST_CASE("log a_n grows like sqrt(8 pi^2 (n - T) / r_polar)") {
  NormalFunction nf(builtin_family("local_p1xp1"), 160);
  auto sp = predicted_spectrum(nf, 20);
  // slope of log a_n against sqrt(n) over the computed levels
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (const auto& q : sp.roots) {
    double x = std::sqrt(q.n - nf.data().T.get_d()), y = std::log(q.a);
    sx += x, sy += y, sxx += x * x, sxy += x * y, m += 1;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double expect = std::sqrt(8 * M_PI * M_PI / nf.data().r_polar);
  CHECK(std::fabs(slope / expect - 1) < 0.05);
}

TEST_CASE("Weyl bounds") {
  CHECK(std::fabs(weyl_M(builtin_family("local_p1xp1")) - std::exp(M_PI / 2)) < 1e-12);
  CHECK(std::fabs(weyl_M(builtin_family("local_p2")) - std::exp(M_PI)) < 1e-9);
  for (auto id : {"local_p2", "local_p1xp1", "local_f1", "local_f2"}) {
    NormalFunction nf(builtin_family(id));
    for (double lam : {10.0, 100.0, 1000.0}) {
      auto w = weyl_bounds(nf, lam);
      CHECK(w.lower <= w.upper);
    }
    // upper / log^2 lambda tends to r°/8pi^2, approached like (1 + log M / log lambda)^2
    double ll = std::log(1e250);
    auto w = weyl_bounds(nf, 1e250);
    double ratio = w.upper / (ll * ll) / (nf.data().r_polar / (8 * M_PI * M_PI));
    CHECK(std::fabs(ratio - 1) < 0.03);
    CHECK(std::fabs(ratio / std::pow(1 + std::log(w.M) / ll, 2) - 1) < 1e-3);
  }
}

TEST_CASE("nontorsion near and away from the conifold") {
  NormalFunction nf(builtin_family("local_p2"));
  CHECK(torsion_check(nf, 5));
  CHECK(torsion_check(nf, 3 * (1 + 1e-6)));
  CHECK(nf.t(5) > 0);
  CHECK_THROWS_AS(torsion_check(nf, 2.0), Error);
}
