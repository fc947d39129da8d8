#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "lattice.hpp"

namespace mc {

// Exact multivariate series in the moduli a_1..a_g; key = exponent vector.
struct LatticeSeries {
  int g = 0, j = 0;
  unsigned order = 0;  // largest power of a_j^{-1} kept
  std::map<std::vector<long>, mpq_class> coeffs;
  mpq_class coeff(const std::vector<long>& e) const;
};

// (1/2 pi i) R_{gamma_j} - log a_j, oriented so that R_{gamma_j} ~ 2 pi i log a_j.
// Genus one: sum_k (-1)^{k-1} [phi^k]_0 a^{-k} / k. F_{g,g}: the lattice sum over
// (l_1..l_g) with L' = ((g-j+1) l_j + sum_{k != j} (k-j) l_k)/(2j-1) a nonnegative integer.
LatticeSeries regulator_gamma_series(const CurveFamily& f, int j, unsigned n);
// Pi_{j l} = delta_{a_l} of the above (including delta log a_j = 1 when l = j).
LatticeSeries classical_period_series(const CurveFamily& f, int j, int l, unsigned n);

}  // namespace mc
