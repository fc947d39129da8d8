#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace mc {

namespace {

void dump_rec(const json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const json& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_rec(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

mpq_class parse_q(const json& v) {
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (!v.is_string()) throw Error(Err::InvalidArgument, "coefficient must be a \"p/q\" string or an integer");
  mpq_class q;
  if (q.set_str(v.get<std::string>(), 10) != 0) throw Error(Err::InvalidArgument, "bad rational '" + v.get<std::string>() + "'");
  q.canonicalize();
  return q;
}

json z_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json pts_json(const std::vector<Pt>& v) {
  json a = json::array();
  for (const Pt& p : v) a.push_back({p.x, p.y});
  return a;
}

}  // namespace

std::string dump17(const json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

CurveFamily family_from_json(const json& j) {
  if (!j.is_object()) throw Error(Err::InvalidArgument, "family description must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "vertices" && it.key() != "boundary_coeffs" && it.key() != "moduli" && it.key() != "id")
      throw Error(Err::InvalidArgument, "unknown key '" + it.key() + "'");
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw Error(Err::InvalidArgument, "missing vertices");
  std::vector<Pt> verts;
  for (const json& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
      throw Error(Err::InvalidArgument, "vertex must be a pair of integers");
    verts.push_back({v[0].get<long>(), v[1].get<long>()});
  }
  std::map<Pt, mpq_class> boundary;
  if (j.contains("boundary_coeffs")) {
    if (!j["boundary_coeffs"].is_object()) throw Error(Err::InvalidArgument, "boundary_coeffs must be an object");
    for (auto it = j["boundary_coeffs"].begin(); it != j["boundary_coeffs"].end(); ++it)
      boundary[parse_pt_key(it.key())] = parse_q(it.value());
  }
  std::vector<std::string> moduli;
  if (j.contains("moduli")) moduli = j["moduli"].get<std::vector<std::string>>();
  std::string id = j.value("id", std::string("custom"));
  return make_family(id, verts, boundary, moduli);
}

json family_to_json(const CurveFamily& f) {
  json b = json::object();
  for (const auto& [p, c] : f.boundary_coeffs) b[pt_key(p)] = q_str(c);
  return {{"id", f.id}, {"vertices", pts_json(f.polygon.vertices())}, {"boundary_coeffs", b}, {"moduli", f.moduli}};
}

std::string family_canonical(const CurveFamily& f) {
  std::ostringstream os;
  os << "v";
  for (const Pt& p : canonicalize(f.polygon).vertices()) os << ' ' << p.x << ',' << p.y;
  os << "|b";
  for (const auto& [p, c] : f.boundary_coeffs) os << ' ' << p.x << ',' << p.y << '=' << c.get_str();
  os << "|i";
  for (const Pt& p : f.interior_points) os << ' ' << p.x << ',' << p.y;
  return os.str();
}

json polygon_report(const CurveFamily& f) {
  PointClassification c = classify_points(f.polygon);
  bool refl = is_reflexive(f.polygon);
  json edges = json::array();
  for (const EdgePolynomial& e : edge_polynomials(f)) {
    json co = json::array();
    for (const mpq_class& q : e.coeffs) co.push_back(q_str(q));
    edges.push_back({{"edge", e.edge}, {"coeffs", co}});
  }
  json r = {{"id", f.id},
            {"vertices", pts_json(f.polygon.vertices())},
            {"canonical_vertices", pts_json(canonicalize(f.polygon).vertices())},
            {"g", c.g},
            {"r", c.r},
            {"interior", pts_json(c.interior)},
            {"boundary", pts_json(c.boundary)},
            {"reflexive", refl},
            {"edge_polynomials", edges},
            {"tempered", check_tempered(f)},
            {"phi", f.phi().str()}};
  r["r_polar"] = c.r_polar ? json(*c.r_polar) : json(nullptr);
  r["polar_vertices"] = refl ? pts_json(polar(f.polygon).vertices()) : json(nullptr);
  return r;
}

json periods_report(const GenusOneData& d, unsigned kmax) {
  if (kmax > d.order) throw Error(Err::InsufficientOrder, "kmax exceeds the series order");
  json gw = json::array();
  for (unsigned k = 1; k <= kmax; ++k) gw.push_back({{"k", k}, {"N_k", q_str(d.N[k])}});
  json omega = json::array();
  for (unsigned k = 0; k <= std::min(d.order, 12u); ++k) omega.push_back(q_str(d.omega[k]));
  return {{"family", d.family_id},
          {"g", 1},
          {"r", d.r},
          {"r_polar", d.r_polar},
          {"a_hat", d.a_hat},
          {"gw", gw},
          {"T", q_str(d.T)},
          {"B_circ", q_str(d.B_circ)},
          {"order", d.order},
          {"picard_fuchs", d.pf.str()},
          {"omega_head", omega}};
}

json gw_report(const GWTable& t) {
  json rows = json::array();
  std::vector<mpq_class> gv = gv_from_gw(t.N);
  for (unsigned k = 1; k <= t.kmax; ++k)
    rows.push_back({{"k", k}, {"N_k", q_str(t.N[k])}, {"n_k", q_str(gv[k])}, {"integral", t.N[k].get_den() == 1}});
  return {{"kmax", t.kmax}, {"r", t.r}, {"r_polar", t.r_polar}, {"T", q_str(t.T)}, {"B_circ", q_str(t.B_circ)}, {"gw", rows}};
}

GWTable gw_from_report(const json& j) {
  GWTable t;
  t.kmax = j.at("kmax").get<unsigned>();
  t.r = j.at("r").get<int>();
  t.r_polar = j.at("r_polar").get<int>();
  t.T = parse_q(j.at("T"));
  t.B_circ = parse_q(j.at("B_circ"));
  t.N.assign(t.kmax + 1, 0);
  for (const json& row : j.at("gw")) t.N.at(row.at("k").get<unsigned>()) = parse_q(row.at("N_k"));
  return t;
}

json period_value_report(const PeriodValue& v) {
  return {{"a", to_double(v.a)},
          {"t", to_double(v.t)},
          {"omega", to_double(v.omega)},
          {"Omega", {to_double(v.Omega_re), to_double(v.Omega_im)}},
          {"R_gamma", {0.0, to_double(v.R_gamma_im)}},
          {"R_beta", {to_double(v.R_beta_re), to_double(v.R_beta_im)}},
          {"nu", to_double(v.nu)},
          {"nu_functional", to_double(v.nu_functional)},
          {"V", to_double(v.V)},
          {"error", v.error},
          {"order", v.order},
          {"bits", v.bits}};
}

json prediction_report(const SpectrumPrediction& p) {
  json roots = json::array();
  for (const QuantizationRoot& r : p.roots)
    roots.push_back({{"n", r.n}, {"a", r.a}, {"bracket", {r.lo, r.hi}}, {"residual", r.residual}, {"error", r.hi - r.lo}});
  return {{"family", p.family_id}, {"a_hat", p.a_hat}, {"edge", p.edge}, {"nu_edge", p.nu_edge}, {"roots", roots},
          {"flags", p.flags}};
}

json spectrum_report(const SpectrumResult& s) {
  json ev = json::array();
  for (size_t i = 0; i < s.eigenvalues.size(); ++i)
    ev.push_back({{"n", i + 1}, {"lambda", s.eigenvalues[i]}, {"error", i < s.convergence.size() ? s.convergence[i] : NAN}});
  return {{"family", s.family_id}, {"eigenvalues", ev}, {"basis_sizes", s.basis_sizes}, {"history", s.history},
          {"converged", s.converged}};
}

json conifold_report(int g, unsigned rmax) {
  ConifoldData d = chebyshev_conifold(g);
  json a = json::array(), cheb = json::array(), nodes = json::array(), kappa = json::array();
  for (const mpz_class& z : d.a_hat) a.push_back(z_json(z));
  for (const mpz_class& z : d.chebyshev) cheb.push_back(z_json(z));
  for (size_t i = 0; i < d.nodes.size(); ++i)
    nodes.push_back({{"j", i + 1}, {"x", d.nodes[i]}, {"residual", d.residuals[i]}, {"hessian_det", d.hessian_det[i]}});
  std::vector<long> row;
  for (int j = 1; j <= g; ++j) {
    RingPoint rp = ring_point(g, j);
    ConifoldMultiple m = conifold_multiple_gg(g, j, rmax);
    long expect = std::gcd(2 * j - 1, 2 * g + 1);
    row.push_back(m.kappa);
    kappa.push_back({{"j", j},
                     {"kappa", m.kappa},
                     {"expected", expect},
                     {"ratio", m.ratio},
                     {"spread", m.spread},
                     {"error", std::fabs(m.ratio - static_cast<double>(m.kappa))},
                     {"a_ring", rp.a_ring},
                     {"x_ring", rp.x_ring},
                     {"residue", rp.residue}});
  }
  return {{"g", g}, {"a_hat", a}, {"chebyshev", cheb}, {"nodes", nodes}, {"kappa", kappa}, {"kappa_row", row},
          {"rmax", rmax}};
}

json identity_report(const IdentityReport& r, bool with_increments) {
  json j = {{"g", r.g},
            {"j", r.j},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"rhs_truncated", r.rhs_truncated},
            {"tail", r.tail},
            {"tail_bound", r.tail_bound},
            {"residual", r.residual},
            {"terms", r.terms},
            {"degree_max", r.degree_max},
            {"fit", {{"c", r.fit_c}, {"d", r.fit_d}, {"rms", r.fit_rms}}}};
  if (with_increments) j["increments"] = r.increments;
  return j;
}

json eigenfunction_report(const EigenfunctionReport& r) {
  json psi = json::array();
  for (size_t i = 0; i < r.r.size(); ++i) psi.push_back({r.r[i], r.psi[i].real(), r.psi[i].imag()});
  return {{"a", r.a},
          {"rho", {r.rho.real(), r.rho.imag()}},
          {"r_gamma", {r.r_gamma.real(), r.r_gamma.imag()}},
          {"w_gamma", {r.w_gamma.real(), r.w_gamma.imag()}},
          {"decay_constant", r.decay_constant},
          {"decay_violation", r.decay_violation},
          {"max_abs", r.max_abs},
          {"path_dependence", r.path_dependence},
          {"residual", r.residual},
          {"branch_points", r.branch_points},
          {"psi", psi}};
}

}  // namespace mc
