#include "lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace mc {

namespace {

long cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

}  // namespace

std::string pt_key(const Pt& p) { return std::to_string(p.x) + "," + std::to_string(p.y); }

Pt parse_pt_key(const std::string& s) {
  auto c = s.find(',');
  if (c == std::string::npos) throw Error(Err::InvalidArgument, "bad point key '" + s + "'");
  try {
    size_t p1 = 0, p2 = 0;
    std::string a = s.substr(0, c), b = s.substr(c + 1);
    long x = std::stol(a, &p1), y = std::stol(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::exception&) {
    throw Error(Err::InvalidArgument, "bad point key '" + s + "'");
  }
}

LatticePolygon convex_hull(const std::vector<Pt>& input) {
  std::vector<Pt> p = input;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw Error(Err::NonConvex, "fewer than three distinct points");
  std::vector<Pt> h(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw Error(Err::NonConvex, "points are collinear");
  return LatticePolygon(h, false);
}

LatticePolygon::LatticePolygon(std::vector<Pt> v, bool require_origin_interior) : v_(std::move(v)) {
  const size_t n = v_.size();
  if (n < 3) throw Error(Err::NonConvex, "polygon needs at least three vertices");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (v_[i] == v_[j]) throw Error(Err::NonConvex, "repeated vertex " + pt_key(v_[i]));
  long turn = 0;
  for (size_t i = 0; i < n; ++i) {
    const Pt& a = v_[i];
    const Pt& b = v_[(i + 1) % n];
    const Pt& c = v_[(i + 2) % n];
    if (cross(a, b, c) <= 0) throw Error(Err::NonConvex, "vertex " + pt_key(b) + " is not a strictly convex counterclockwise corner");
    turn += cross(v_[0], a, b);
  }
  area2_ = turn;
  // A star polygon has only left turns but winds more than once; the hull test catches it.
  if (n > 3) {
    std::vector<Pt> s = v_;
    std::sort(s.begin(), s.end());
    std::vector<Pt> lo, hi;
    for (const Pt& q : s) {
      while (lo.size() >= 2 && cross(lo[lo.size() - 2], lo.back(), q) <= 0) lo.pop_back();
      lo.push_back(q);
    }
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      while (hi.size() >= 2 && cross(hi[hi.size() - 2], hi.back(), *it) <= 0) hi.pop_back();
      hi.push_back(*it);
    }
    if (lo.size() + hi.size() - 2 != n) throw Error(Err::NonConvex, "vertices are not in convex position");
  }
  for (size_t i = 0; i < n; ++i) {
    Edge e;
    e.from = v_[i];
    e.to = v_[(i + 1) % n];
    long dx = e.to.x - e.from.x, dy = e.to.y - e.from.y;
    e.length = std::gcd(std::labs(dx), std::labs(dy));
    e.normal = {dy / e.length, -dx / e.length};
    e.dist = e.normal.x * e.from.x + e.normal.y * e.from.y;
    e_.push_back(e);
  }
  if (require_origin_interior)
    for (const Edge& e : e_)
      if (e.dist <= 0) throw Error(Err::OriginNotInterior, "origin is not strictly inside the polygon");
}

bool LatticePolygon::contains(const Pt& p) const {
  for (const Edge& e : e_)
    if (e.normal.x * p.x + e.normal.y * p.y > e.dist) return false;
  return true;
}

bool LatticePolygon::strictly_inside(const Pt& p) const {
  for (const Edge& e : e_)
    if (e.normal.x * p.x + e.normal.y * p.y >= e.dist) return false;
  return true;
}

bool LatticePolygon::on_boundary(const Pt& p) const { return contains(p) && !strictly_inside(p); }

void LatticePolygon::bbox(long& xmin, long& xmax, long& ymin, long& ymax) const {
  xmin = xmax = v_[0].x;
  ymin = ymax = v_[0].y;
  for (const Pt& p : v_) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
}

namespace {

PointClassification classify_raw(const LatticePolygon& p) {
  PointClassification c;
  long x0, x1, y0, y1;
  p.bbox(x0, x1, y0, y1);
  for (long x = x0; x <= x1; ++x)
    for (long y = y0; y <= y1; ++y) {
      Pt q{x, y};
      if (p.strictly_inside(q))
        c.interior.push_back(q);
      else if (p.contains(q))
        c.boundary.push_back(q);
    }
  c.g = static_cast<int>(c.interior.size());
  c.r = static_cast<int>(c.boundary.size());
  if (p.twice_area() != 2L * c.g + c.r - 2) throw Error(Err::Internal, "Pick relation violated");
  return c;
}

}  // namespace

PointClassification classify_points(const LatticePolygon& p) {
  PointClassification c = classify_raw(p);
  if (is_reflexive(p)) c.r_polar = classify_raw(polar(p)).r;
  return c;
}

bool is_reflexive(const LatticePolygon& p) {
  for (const Edge& e : p.edges())
    if (e.dist != 1) return false;
  return true;
}

LatticePolygon polar(const LatticePolygon& p) {
  if (!is_reflexive(p)) throw Error(Err::NotReflexive, "polar polygon of a non-reflexive polygon is not a lattice polygon");
  // Edge <n,x> <= 1 gives the dual vertex -n; edges are ordered counterclockwise so
  // the dual vertices are too.
  std::vector<Pt> v;
  for (const Edge& e : p.edges()) v.push_back(-e.normal);
  return LatticePolygon(v);
}

LatticePolygon canonicalize(const LatticePolygon& p) {
  std::vector<Pt> v = p.vertices();
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return LatticePolygon(v, false);
}

std::optional<std::array<long, 4>> unimodular_equivalent(const LatticePolygon& a, const LatticePolygon& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  if (va.size() != vb.size()) return std::nullopt;
  std::vector<Pt> target = vb;
  std::sort(target.begin(), target.end());
  // Two consecutive vertices of a polygon with the origin inside are linearly
  // independent; their images determine the matrix.
  const Pt p = va[0], q = va[1];
  long det = p.x * q.y - p.y * q.x;
  if (det == 0) return std::nullopt;
  for (const Pt& u : vb)
    for (const Pt& w : vb) {
      if (u == w) continue;
      // A [p q] = [u w]  =>  A = [u w] [p q]^{-1}
      long n00 = u.x * q.y - w.x * p.y, n01 = -u.x * q.x + w.x * p.x;
      long n10 = u.y * q.y - w.y * p.y, n11 = -u.y * q.x + w.y * p.x;
      if (n00 % det || n01 % det || n10 % det || n11 % det) continue;
      std::array<long, 4> m{n00 / det, n01 / det, n10 / det, n11 / det};
      long dm = m[0] * m[3] - m[1] * m[2];
      if (dm != 1 && dm != -1) continue;
      std::vector<Pt> img;
      for (const Pt& s : va) img.push_back({m[0] * s.x + m[1] * s.y, m[2] * s.x + m[3] * s.y});
      std::sort(img.begin(), img.end());
      if (img == target) return m;
    }
  return std::nullopt;
}

LaurentPolynomial::LaurentPolynomial(Terms t) {
  for (auto& [m, c] : t)
    if (c != 0) t_.emplace(m, c);
}

mpq_class LaurentPolynomial::coeff(const Pt& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? mpq_class(0) : it->second;
}

void LaurentPolynomial::add(const Pt& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  LaurentPolynomial r;
  for (const auto& [m1, c1] : t_)
    for (const auto& [m2, c2] : o.t_) r.add(m1 + m2, c1 * c2);
  return r;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial r = *this;
  for (const auto& [m, c] : o.t_) r.add(m, c);
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
  LaurentPolynomial r(Terms{{Pt{0, 0}, mpq_class(1)}});
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

LaurentPolynomial LaurentPolynomial::monomial_map(long a, long b, long c, long d) const {
  LaurentPolynomial r;
  for (const auto& [m, co] : t_) r.add({a * m.x + b * m.y, c * m.x + d * m.y}, co);
  return r;
}

LaurentPolynomial LaurentPolynomial::shifted(const Pt& by) const {
  LaurentPolynomial r;
  for (const auto& [m, co] : t_) r.add(m + by, co);
  return r;
}

LatticePolygon LaurentPolynomial::newton_polygon() const {
  std::vector<Pt> s;
  for (const auto& [m, c] : t_) s.push_back(m);
  return convex_hull(s);
}

std::string LaurentPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*x^" << m.x << "*y^" << m.y;
  }
  if (first) os << "0";
  return os.str();
}

LaurentPolynomial CurveFamily::phi() const { return LaurentPolynomial(LaurentPolynomial::Terms(boundary_coeffs.begin(), boundary_coeffs.end())); }

LaurentPolynomial CurveFamily::with_moduli(const std::vector<mpq_class>& a) const {
  if (a.size() != interior_points.size()) throw Error(Err::InvalidArgument, "wrong number of moduli");
  LaurentPolynomial f = phi();
  for (size_t j = 0; j < a.size(); ++j) f.add(interior_points[j], a[j]);
  return f;
}

CurveFamily make_family(std::string id, const std::vector<Pt>& vertices, const std::map<Pt, mpq_class>& boundary,
                        std::vector<std::string> moduli) {
  CurveFamily f;
  f.id = std::move(id);
  f.polygon = LatticePolygon(vertices);
  PointClassification c = classify_points(f.polygon);
  for (const auto& [m, co] : boundary) {
    if (!f.polygon.on_boundary(m)) throw Error(Err::InvalidArgument, "coefficient given at non-boundary point " + pt_key(m));
  }
  for (const Pt& b : c.boundary) {
    auto it = boundary.find(b);
    mpq_class co = it == boundary.end() ? mpq_class(0) : it->second;
    if (co != 0) f.boundary_coeffs[b] = co;
  }
  for (const Pt& v : f.polygon.vertices()) {
    auto it = f.boundary_coeffs.find(v);
    if (it == f.boundary_coeffs.end() || it->second != 1)
      throw Error(Err::InvalidArgument, "vertex coefficient at " + pt_key(v) + " must be 1");
  }
  // Interior points ordered so that (0,0) comes first, then by decreasing x+y, then x.
  f.interior_points = c.interior;
  std::stable_sort(f.interior_points.begin(), f.interior_points.end(), [](const Pt& a, const Pt& b) {
    if (a.x + a.y != b.x + b.y) return a.x + a.y > b.x + b.y;
    return a.x > b.x;
  });
  if (moduli.empty())
    for (int j = 1; j <= c.g; ++j) moduli.push_back("a" + std::to_string(j));
  if (static_cast<int>(moduli.size()) != c.g) throw Error(Err::InconsistentGenus, "number of moduli differs from genus");
  f.moduli = std::move(moduli);
  return f;
}

std::vector<EdgePolynomial> edge_polynomials(const CurveFamily& f) {
  std::vector<EdgePolynomial> out;
  const auto& edges = f.polygon.edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    Pt step{(e.to.x - e.from.x) / e.length, (e.to.y - e.from.y) / e.length};
    EdgePolynomial p;
    p.edge = static_cast<int>(i);
    auto coeff = [&](const Pt& m) {
      auto it = f.boundary_coeffs.find(m);
      return it == f.boundary_coeffs.end() ? mpq_class(0) : it->second;
    };
    mpq_class lead = coeff(e.from);
    if (lead == 0) throw Error(Err::InvalidArgument, "zero vertex coefficient");
    Pt m = e.from;
    for (long k = 0; k <= e.length; ++k, m = m + step) p.coeffs.push_back(coeff(m) / lead);
    out.push_back(std::move(p));
  }
  return out;
}

bool check_tempered(const CurveFamily& f) {
  for (const EdgePolynomial& p : edge_polynomials(f)) {
    unsigned long d = p.coeffs.size() - 1;
    for (unsigned long k = 0; k <= d; ++k) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), d, k);
      if (p.coeffs[k] != mpq_class(b)) return false;
    }
  }
  return true;
}

CurveFamily family_mn(long m, long n, std::optional<int> g) {
  if (m < 1 || n < 1) throw Error(Err::InvalidArgument, "m and n must be positive");
  std::vector<Pt> v{{1, 0}, {0, 1}, {-m, -n}};
  LatticePolygon poly(v);
  PointClassification c = classify_points(poly);
  if (g && *g != c.g) throw Error(Err::InconsistentGenus, "requested genus " + std::to_string(*g) + " but polygon has " + std::to_string(c.g));
  std::map<Pt, mpq_class> b{{{1, 0}, 1}, {{0, 1}, 1}, {{-m, -n}, 1}};
  // Corrections along the two long edges make every edge polynomial (1+w)^len.
  long g1 = std::gcd(m + 1, n), g2 = std::gcd(m, n + 1);
  for (long l = 1; l < g1; ++l) {
    mpz_class bin;
    mpz_bin_uiui(bin.get_mpz_t(), g1, l);
    b[{1 - l * (m + 1) / g1, -l * n / g1}] = mpq_class(bin);
  }
  for (long l = 1; l < g2; ++l) {
    mpz_class bin;
    mpz_bin_uiui(bin.get_mpz_t(), g2, l);
    b[{-l * m / g2, 1 - l * (n + 1) / g2}] = mpq_class(bin);
  }
  CurveFamily f = make_family("m_n:" + std::to_string(m) + "," + std::to_string(n), v, b);
  if (m == n) f.id = "gg:" + std::to_string(m);
  // For F_{g,g} the j-th modulus multiplies x^{1-j} y^{1-j}.
  if (m == n) {
    std::vector<Pt> ip;
    for (long j = 1; j <= static_cast<long>(f.interior_points.size()); ++j) ip.push_back({1 - j, 1 - j});
    for (const Pt& q : ip)
      if (!f.polygon.strictly_inside(q)) throw Error(Err::Internal, "unexpected interior point layout");
    f.interior_points = ip;
  }
  return f;
}

std::vector<std::string> builtin_family_names() {
  return {"local_p2", "local_p1xp1", "local_f1", "local_f2", "gg:<g>", "m_n:<m>,<n>"};
}

CurveFamily builtin_family(const std::string& id) {
  if (id == "local_p2") return make_family(id, {{1, 0}, {0, 1}, {-1, -1}}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  if (id == "local_p1xp1")
    return make_family(id, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}});
  if (id == "local_f1")
    return make_family(id, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 1}, 1}, {{0, -1}, 1}});
  if (id == "local_f2")
    return make_family(id, {{1, 0}, {-1, 2}, {0, -1}}, {{{1, 0}, 1}, {{0, 1}, 2}, {{-1, 2}, 1}, {{0, -1}, 1}});
  try {
    if (id.rfind("gg:", 0) == 0) {
      size_t pos = 0;
      long g = std::stol(id.substr(3), &pos);
      if (pos + 3 != id.size()) throw std::invalid_argument(id);
      return family_mn(g, g);
    }
    if (id.rfind("m_n:", 0) == 0) {
      std::string rest = id.substr(4);
      auto c = rest.find(',');
      if (c == std::string::npos) throw std::invalid_argument(id);
      size_t p1 = 0, p2 = 0;
      long m = std::stol(rest.substr(0, c), &p1);
      long n = std::stol(rest.substr(c + 1), &p2);
      if (p1 != c || p2 != rest.size() - c - 1) throw std::invalid_argument(id);
      CurveFamily f = family_mn(m, n);
      f.id = id;
      return f;
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw Error(Err::InvalidArgument, "unknown family '" + id + "'");
}

namespace {

// Dense-grid powers of an integral Laurent polynomial, pruned to exponents that can
// still return to the origin within the remaining multiplications.
std::vector<mpz_class> constant_terms_integral(const std::vector<std::pair<Pt, mpz_class>>& terms, unsigned n) {
  std::vector<mpz_class> out(n + 1);
  out[0] = 1;
  if (n == 0) return out;
  std::vector<Pt> supp;
  for (const auto& t : terms) supp.push_back(t.first);
  long x0 = supp[0].x, x1 = x0, y0 = supp[0].y, y1 = y0;
  for (const Pt& p : supp) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  std::vector<Edge> ineq;
  try {
    ineq = convex_hull(supp).edges();
  } catch (const Error&) {
    // Degenerate support: fall back to the bounding box alone.
  }
  auto alive = [&](long ex, long ey, long s) {
    for (const Edge& e : ineq)
      if (-(e.normal.x * ex + e.normal.y * ey) > s * e.dist) return false;
    return true;
  };
  // current grid covers [cx0,cx1]x[cy0,cy1]
  long cx0 = 0, cx1 = 0, cy0 = 0, cy1 = 0;
  std::vector<mpz_class> cur(1, mpz_class(1));
  for (unsigned i = 1; i <= n; ++i) {
    long s = static_cast<long>(n - i);
    long nx0 = std::max(cx0 + x0, -s * x1), nx1 = std::min(cx1 + x1, -s * x0);
    long ny0 = std::max(cy0 + y0, -s * y1), ny1 = std::min(cy1 + y1, -s * y0);
    if (nx0 > nx1 || ny0 > ny1) break;
    long w = ny1 - ny0 + 1, cw = cy1 - cy0 + 1;
    std::vector<mpz_class> nxt(static_cast<size_t>((nx1 - nx0 + 1) * w));
    for (long ex = cx0; ex <= cx1; ++ex)
      for (long ey = cy0; ey <= cy1; ++ey) {
        const mpz_class& c = cur[static_cast<size_t>((ex - cx0) * cw + (ey - cy0))];
        if (c == 0) continue;
        for (const auto& [m, a] : terms) {
          long tx = ex + m.x, ty = ey + m.y;
          if (tx < nx0 || tx > nx1 || ty < ny0 || ty > ny1) continue;
          if (!alive(tx, ty, s)) continue;
          mpz_addmul(nxt[static_cast<size_t>((tx - nx0) * w + (ty - ny0))].get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
        }
      }
    cur.swap(nxt);
    cx0 = nx0;
    cx1 = nx1;
    cy0 = ny0;
    cy1 = ny1;
    if (0 >= cx0 && 0 <= cx1 && 0 >= cy0 && 0 <= cy1) out[i] = cur[static_cast<size_t>((0 - cx0) * w + (0 - cy0))];
  }
  return out;
}

}  // namespace

std::vector<mpq_class> constant_terms(const LaurentPolynomial& phi, unsigned n) {
  std::vector<mpq_class> out(n + 1, mpq_class(0));
  out[0] = 1;
  if (phi.empty()) return out;
  mpz_class den = 1;
  for (const auto& [m, c] : phi.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::pair<Pt, mpz_class>> terms;
  for (const auto& [m, c] : phi.terms()) {
    mpq_class s = c * den;
    terms.emplace_back(m, s.get_num());
  }
  std::vector<mpz_class> raw = constant_terms_integral(terms, n);
  mpz_class dk = 1;
  for (unsigned k = 0; k <= n; ++k) {
    out[k] = mpq_class(raw[k], dk);
    out[k].canonicalize();
    dk *= den;
  }
  return out;
}

mpq_class constant_term_power(const LaurentPolynomial& phi, unsigned k) { return constant_terms(phi, k)[k]; }

}  // namespace mc
