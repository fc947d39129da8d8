#include "series.hpp"

#include <algorithm>

#include "error.hpp"

namespace mc {

RationalSeries::RationalSeries(std::string var, std::vector<mpq_class> coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {
  if (c_.empty()) throw Error(Err::InvalidArgument, "series needs at least one coefficient");
}

RationalSeries RationalSeries::zero(std::string var, unsigned order) {
  return RationalSeries(std::move(var), std::vector<mpq_class>(order + 1, mpq_class(0)));
}

RationalSeries RationalSeries::constant(std::string var, unsigned order, const mpq_class& c) {
  RationalSeries s = zero(std::move(var), order);
  s.c_[0] = c;
  return s;
}

RationalSeries RationalSeries::variable(std::string var, unsigned order) {
  RationalSeries s = zero(std::move(var), order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

void RationalSeries::same_var(const RationalSeries& o) const {
  if (var_ != o.var_) throw Error(Err::InvalidArgument, "series variables differ: " + var_ + " vs " + o.var_);
}

RationalSeries RationalSeries::truncated(unsigned order) const {
  std::vector<mpq_class> c(c_.begin(), c_.begin() + std::min<size_t>(order + 1, c_.size()));
  return RationalSeries(var_, c);
}

RationalSeries RationalSeries::operator+(const RationalSeries& o) const {
  same_var(o);
  unsigned n = std::min(order(), o.order());
  RationalSeries r = truncated(n);
  for (unsigned k = 0; k <= n; ++k) r.c_[k] += o.c_[k];
  return r;
}

RationalSeries RationalSeries::operator-(const RationalSeries& o) const { return *this + (-o); }

RationalSeries RationalSeries::operator-() const {
  RationalSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

RationalSeries RationalSeries::operator*(const RationalSeries& o) const {
  same_var(o);
  unsigned n = std::min(order(), o.order());
  RationalSeries r = zero(var_, n);
  for (unsigned i = 0; i <= n; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; i + j <= n; ++j)
      if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
  }
  return r;
}

RationalSeries RationalSeries::operator*(const mpq_class& s) const {
  RationalSeries r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

RationalSeries RationalSeries::reciprocal() const {
  if (c_[0] == 0) throw Error(Err::InvalidArgument, "reciprocal of a series with zero constant term");
  unsigned n = order();
  RationalSeries r = zero(var_, n);
  mpq_class inv = 1 / c_[0];
  r.c_[0] = inv;
  for (unsigned k = 1; k <= n; ++k) {
    mpq_class s = 0;
    for (unsigned j = 1; j <= k; ++j)
      if (c_[j] != 0) s += c_[j] * r.c_[k - j];
    r.c_[k] = -s * inv;
  }
  return r;
}

RationalSeries RationalSeries::operator/(const RationalSeries& o) const { return *this * o.reciprocal(); }

RationalSeries RationalSeries::theta() const {
  RationalSeries r = *this;
  for (unsigned k = 0; k <= order(); ++k) r.c_[k] *= k;
  return r;
}

RationalSeries RationalSeries::theta_inverse() const {
  if (c_[0] != 0) throw Error(Err::InvalidArgument, "theta_inverse needs zero constant term");
  RationalSeries r = *this;
  for (unsigned k = 1; k <= order(); ++k) r.c_[k] /= k;
  return r;
}

RationalSeries RationalSeries::exp() const {
  if (c_[0] != 0) throw Error(Err::InvalidArgument, "exp needs zero constant term");
  // E' = f' E, i.e. k e_k = sum_j j f_j e_{k-j}
  unsigned n = order();
  RationalSeries e = zero(var_, n);
  e.c_[0] = 1;
  for (unsigned k = 1; k <= n; ++k) {
    mpq_class s = 0;
    for (unsigned j = 1; j <= k; ++j)
      if (c_[j] != 0) s += c_[j] * j * e.c_[k - j];
    e.c_[k] = s / k;
  }
  return e;
}

RationalSeries RationalSeries::log() const {
  if (c_[0] != 1) throw Error(Err::InvalidArgument, "log needs constant term 1");
  return (theta() / *this).theta_inverse();
}

RationalSeries RationalSeries::compose(const RationalSeries& inner) const {
  if (inner.c_[0] != 0) throw Error(Err::InvalidArgument, "composition needs inner series without constant term");
  unsigned n = std::min(order(), inner.order());
  RationalSeries in = inner.truncated(n);
  in.var_ = inner.var_;
  // Horner: f(g) = c0 + g (c1 + g (c2 + ...))
  RationalSeries r = constant(inner.var_, n, c_[n]);
  for (unsigned k = n; k-- > 0;) {
    r = r * in;
    r.c_[0] += c_[k];
  }
  return r;
}

RationalSeries RationalSeries::reversion() const {
  if (c_[0] != 0 || c_[1] == 0) throw Error(Err::InvalidArgument, "reversion needs c0 = 0 and c1 != 0");
  unsigned n = order();
  // Lagrange: [y^k] g = (1/k) [x^{k-1}] (x/f)^k
  RationalSeries q = zero(var_, n);  // f/x shifted
  for (unsigned k = 0; k < n; ++k) q.c_[k] = c_[k + 1];
  if (n >= 1) q.c_[n] = 0;
  RationalSeries h = q.reciprocal();  // x/f, valid to order n-1
  RationalSeries r = zero(var_, n);
  RationalSeries pw = constant(var_, n, 1);
  for (unsigned k = 1; k <= n; ++k) {
    pw = pw * h;
    r.c_[k] = pw.c_[k - 1] / k;
  }
  return r;
}

}  // namespace mc
