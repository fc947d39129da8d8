#include "regulator.hpp"

#include <functional>

#include "error.hpp"

namespace mc {

mpq_class LatticeSeries::coeff(const std::vector<long>& e) const {
  auto it = coeffs.find(e);
  return it == coeffs.end() ? mpq_class(0) : it->second;
}

namespace {

bool is_gg(const CurveFamily& f) {
  if (f.id.rfind("gg:", 0) != 0) return false;
  for (int j = 1; j <= f.genus(); ++j)
    if (!(f.interior_points[j - 1] == Pt{1 - j, 1 - j})) return false;
  return true;
}

mpz_class fact(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

LatticeSeries regulator_gamma_series(const CurveFamily& f, int j, unsigned n) {
  const int g = f.genus();
  if (j < 1 || j > g) throw Error(Err::InvalidArgument, "j must lie in 1..g");
  if (!check_tempered(f)) throw Error(Err::NotTempered, "family '" + f.id + "' is not tempered");
  LatticeSeries s;
  s.g = g;
  s.j = j;
  s.order = n;
  if (g == 1) {
    auto c = constant_terms(f.phi(), n);
    for (unsigned k = 1; k <= n; ++k) {
      if (c[k] == 0) continue;
      mpq_class v = c[k] / k;
      if (k % 2 == 0) v = -v;
      s.coeffs[{-static_cast<long>(k)}] = v;
    }
    return s;
  }
  if (!is_gg(f)) throw Error(Err::InvalidArgument, "lattice form of the regulator series is implemented for F_{g,g} only");
  const long q = 2 * j - 1;
  std::vector<long> l(g, 0);
  // L = 2 L' + |l| <= n bounds every l_k by n.
  std::function<void(int, long)> rec = [&](int k, long used) {
    if (k == g) {
      if (used == 0) return;
      long lpq = 0, Lq = 0;
      for (int i = 0; i < g; ++i) {
        lpq += (i == j - 1 ? g - j + 1 : (i + 1) - j) * l[i];
        Lq += (i == j - 1 ? 2 * g + 1 : 2 * i + 1) * l[i];
      }
      if (lpq < 0 || lpq % q) return;
      long L = Lq / q, Lp = lpq / q;
      if (L > static_cast<long>(n)) return;
      mpz_class den = fact(Lp) * fact(Lp);
      for (long v : l) den *= fact(v);
      mpq_class c(fact(L - 1), den);
      c.canonicalize();
      if (L % 2 == 0) c = -c;  // -(-1)^L
      std::vector<long> e = l;
      e[j - 1] = -L;
      s.coeffs[e] = c;
      return;
    }
    for (long v = 0; used + v <= static_cast<long>(n); ++v) {
      l[k] = v;
      rec(k + 1, used + v);
    }
    l[k] = 0;
  };
  rec(0, 0);
  return s;
}

LatticeSeries classical_period_series(const CurveFamily& f, int j, int l, unsigned n) {
  const int g = f.genus();
  if (l < 1 || l > g) throw Error(Err::InvalidArgument, "l must lie in 1..g");
  LatticeSeries r = regulator_gamma_series(f, j, n);
  LatticeSeries out;
  out.g = g;
  out.j = j;
  out.order = n;
  if (l == j) out.coeffs[std::vector<long>(g, 0)] = 1;
  for (const auto& [e, c] : r.coeffs) {
    if (e[l - 1] == 0) continue;
    out.coeffs[e] = c * e[l - 1];
  }
  return out;
}

}  // namespace mc
