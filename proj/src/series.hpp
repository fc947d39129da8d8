#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace mc {

// Truncated power series sum_{k<=N} c_k x^k with exact rational coefficients.
// Binary operations truncate to the smaller order and never extend it.
class RationalSeries {
 public:
  RationalSeries() = default;
  RationalSeries(std::string var, std::vector<mpq_class> coeffs);
  static RationalSeries zero(std::string var, unsigned order);
  static RationalSeries constant(std::string var, unsigned order, const mpq_class& c);
  static RationalSeries variable(std::string var, unsigned order);  // x

  const std::string& var() const { return var_; }
  unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const mpq_class& operator[](unsigned k) const { return c_[k]; }
  mpq_class& operator[](unsigned k) { return c_[k]; }

  RationalSeries truncated(unsigned order) const;
  RationalSeries operator+(const RationalSeries& o) const;
  RationalSeries operator-(const RationalSeries& o) const;
  RationalSeries operator-() const;
  RationalSeries operator*(const RationalSeries& o) const;
  RationalSeries operator*(const mpq_class& s) const;
  RationalSeries reciprocal() const;              // needs c_0 != 0
  RationalSeries operator/(const RationalSeries& o) const;
  RationalSeries theta() const;                   // x d/dx
  RationalSeries theta_inverse() const;           // needs c_0 = 0
  RationalSeries exp() const;                     // needs c_0 = 0
  RationalSeries log() const;                     // needs c_0 = 1
  RationalSeries compose(const RationalSeries& inner) const;  // inner c_0 = 0
  RationalSeries reversion() const;               // compositional inverse; c_0 = 0, c_1 != 0
  friend bool operator==(const RationalSeries& a, const RationalSeries& b) { return a.c_ == b.c_; }

 private:
  void same_var(const RationalSeries& o) const;
  std::string var_;
  std::vector<mpq_class> c_;
};

}  // namespace mc
