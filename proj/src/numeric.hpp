#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <string>

namespace mc {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision (in bits) for newly created Real values while alive.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

unsigned digits_for_bits(unsigned bits);
Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);
Real real_pi();
std::string fmt17(double v);          // 17 significant digits
std::string fmt_real(const Real& v, int digits = 17);
double to_double(const Real& v);

}  // namespace mc
