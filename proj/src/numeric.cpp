#include "numeric.hpp"

#include <cstdio>

namespace mc {

unsigned digits_for_bits(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1; }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) { Real::default_precision(digits_for_bits(bits)); }

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_real(const Real& v, int digits) { return v.str(digits, std::ios_base::scientific); }

double to_double(const Real& v) { return v.convert_to<double>(); }

}  // namespace mc
