#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mc {

struct Pt {
  long x = 0, y = 0;
  friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Pt& a, const Pt& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
  Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
  Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
  Pt operator-() const { return {-x, -y}; }
};

std::string pt_key(const Pt& p);  // "x,y"
Pt parse_pt_key(const std::string& s);

// Edge i joins vertices[i] and vertices[i+1]; outward primitive normal n with
// <n,p> <= dist on the polygon.
struct Edge {
  Pt from, to;
  Pt normal;
  long dist;
  long length;  // lattice length
};

class LatticePolygon {
 public:
  LatticePolygon() = default;
  // Validates: distinct vertices, strictly convex, counterclockwise, origin interior.
  explicit LatticePolygon(std::vector<Pt> vertices, bool require_origin_interior = true);

  const std::vector<Pt>& vertices() const { return v_; }
  const std::vector<Edge>& edges() const { return e_; }
  long twice_area() const { return area2_; }
  bool contains(const Pt& p) const;
  bool on_boundary(const Pt& p) const;
  bool strictly_inside(const Pt& p) const;
  void bbox(long& xmin, long& xmax, long& ymin, long& ymax) const;

 private:
  std::vector<Pt> v_;
  std::vector<Edge> e_;
  long area2_ = 0;
};

struct PointClassification {
  std::vector<Pt> interior, boundary;  // sorted lexicographically
  int g = 0, r = 0;
  std::optional<int> r_polar;
};

PointClassification classify_points(const LatticePolygon& p);
bool is_reflexive(const LatticePolygon& p);
LatticePolygon polar(const LatticePolygon& p);  // requires reflexive
LatticePolygon convex_hull(const std::vector<Pt>& pts);
LatticePolygon canonicalize(const LatticePolygon& p);
std::optional<std::array<long, 4>> unimodular_equivalent(const LatticePolygon& a, const LatticePolygon& b);

class LaurentPolynomial {
 public:
  using Terms = std::map<Pt, mpq_class>;
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(Terms t);

  const Terms& terms() const { return t_; }
  mpq_class coeff(const Pt& m) const;
  void add(const Pt& m, const mpq_class& c);
  bool empty() const { return t_.empty(); }
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial pow(unsigned k) const;
  // Substitution x -> x^a y^c, y -> x^b y^d (exponent map m -> (a m1 + b m2, c m1 + d m2)).
  LaurentPolynomial monomial_map(long a, long b, long c, long d) const;
  LaurentPolynomial shifted(const Pt& by) const;  // multiply by x^by
  LatticePolygon newton_polygon() const;
  std::string str() const;
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.t_ == b.t_; }

 private:
  Terms t_;
};

struct EdgePolynomial {
  int edge = 0;
  std::vector<mpq_class> coeffs;  // coefficient of w^i
};

struct CurveFamily {
  std::string id;
  LatticePolygon polygon;
  std::map<Pt, mpq_class> boundary_coeffs;
  std::vector<Pt> interior_points;
  std::vector<std::string> moduli;

  int genus() const { return static_cast<int>(interior_points.size()); }
  // Boundary part phi (the curve is F = phi + sum a_j x^{m_j}).
  LaurentPolynomial phi() const;
  LaurentPolynomial with_moduli(const std::vector<mpq_class>& a) const;
};

// Builds and validates a family (boundary coefficients must cover exactly the
// boundary lattice points, vertex coefficients 1).
CurveFamily make_family(std::string id, const std::vector<Pt>& vertices, const std::map<Pt, mpq_class>& boundary,
                        std::vector<std::string> moduli = {});

std::vector<EdgePolynomial> edge_polynomials(const CurveFamily& f);
bool check_tempered(const CurveFamily& f);
CurveFamily family_mn(long m, long n, std::optional<int> g = std::nullopt);
CurveFamily builtin_family(const std::string& id);
std::vector<std::string> builtin_family_names();

// [phi^k]_0 for one k, and for all k = 0..n.
mpq_class constant_term_power(const LaurentPolynomial& phi, unsigned k);
std::vector<mpq_class> constant_terms(const LaurentPolynomial& phi, unsigned n);

}  // namespace mc
