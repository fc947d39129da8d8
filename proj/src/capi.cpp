#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "mcurve/mcurve.h"
#include "report.hpp"

static_assert(static_cast<int>(mc::Err::InvalidArgument) == MC_INVALID_ARGUMENT);
static_assert(static_cast<int>(mc::Err::TailEstimateUnreliable) == MC_TAIL_ESTIMATE_UNRELIABLE);
static_assert(static_cast<int>(mc::Err::Internal) == MC_INTERNAL);

struct mc_family {
  mc::CurveFamily f;
};

struct mc_normal {
  mc::NormalFunction nf;
};

namespace {

thread_local std::string last_error;

mc_status fail(mc_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
mc_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return MC_OK;
  } catch (const mc::Error& e) {
    return fail(static_cast<mc_status>(e.code()), std::string(mc::err_name(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(MC_INTERNAL, "Internal: out of memory");
  } catch (const nlohmann::json::exception& e) {
    return fail(MC_INVALID_ARGUMENT, std::string("InvalidArgument: ") + e.what());
  } catch (const std::exception& e) {
    return fail(MC_INTERNAL, std::string("Internal: ") + e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw mc::Error(mc::Err::InvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* mc_status_name(mc_status s) {
  if (s == MC_OK) return "Ok";
  if (s < MC_INVALID_ARGUMENT || s > MC_INTERNAL) return "Unknown";
  return mc::err_name(static_cast<mc::Err>(s));
}

const char* mc_last_error(void) { return last_error.c_str(); }

const char* mc_version(void) { return "0.1.0"; }

void mc_string_free(char* s) { std::free(s); }

mc_status mc_family_builtin(const char* id, mc_family** out) {
  return guard([&] {
    need(id, "id");
    need(out, "out");
    *out = new mc_family{mc::builtin_family(id)};
  });
}

mc_status mc_family_from_json(const char* text, mc_family** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new mc_family{mc::family_from_json(mc::json::parse(text))};
  });
}

void mc_family_free(mc_family* f) { delete f; }

mc_status mc_family_genus(const mc_family* f, int* genus) {
  return guard([&] {
    need(f, "family");
    need(genus, "genus");
    *genus = f->f.genus();
  });
}

mc_status mc_family_canonical(const mc_family* f, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = dup(mc::family_canonical(f->f));
  });
}

mc_status mc_builtin_families(char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(mc::dump17(mc::builtin_family_names()));
  });
}

mc_status mc_polygon_report(const mc_family* f, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = dup(mc::dump17(mc::polygon_report(f->f)));
  });
}

mc_status mc_periods_report(const mc_family* f, unsigned order, unsigned kmax, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = dup(mc::dump17(mc::periods_report(mc::genus_one_data(f->f, order), kmax)));
  });
}

mc_status mc_gw_table(const mc_family* f, unsigned kmax, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = dup(mc::dump17(mc::gw_report(mc::gw_extract(f->f, kmax))));
  });
}

mc_status mc_normal_create(const mc_family* f, unsigned order, unsigned bits, mc_normal** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = new mc_normal{mc::NormalFunction(f->f, order, bits)};
  });
}

void mc_normal_free(mc_normal* nf) { delete nf; }

mc_status mc_normal_nu(const mc_normal* nf, double a, double tol, double* nu, double* error) {
  return guard([&] {
    need(nf, "normal function");
    need(nu, "nu");
    mc::PeriodValue v = nf->nf.evaluate(a, tol);
    *nu = mc::to_double(v.nu);
    if (error) *error = v.error;
  });
}

mc_status mc_normal_edge(const mc_normal* nf, double* edge) {
  return guard([&] {
    need(nf, "normal function");
    need(edge, "edge");
    *edge = nf->nf.edge();
  });
}

mc_status mc_normal_evaluate(const mc_normal* nf, double a, char** out) {
  return guard([&] {
    need(nf, "normal function");
    need(out, "out");
    *out = dup(mc::dump17(mc::period_value_report(nf->nf.evaluate(a))));
  });
}

mc_status mc_quantize(const mc_normal* nf, int levels, double tol, char** out) {
  return guard([&] {
    need(nf, "normal function");
    need(out, "out");
    *out = dup(mc::dump17(mc::prediction_report(mc::predicted_spectrum(nf->nf, levels, tol))));
  });
}

mc_status mc_spectrum(const mc_family* f, int levels, const size_t* schedule, size_t schedule_len, double rel_tol,
                      size_t cap, double hbar, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    if (levels < 1) throw mc::Error(mc::Err::InvalidArgument, "levels must be positive");
    std::vector<size_t> sched;
    if (schedule) sched.assign(schedule, schedule + schedule_len);
    if (sched.empty()) sched = {100, 200, 400};
    mc::SpectralProblem p = mc::make_problem(f->f, sched.front(), hbar);
    mc::SpectrumResult s = mc::low_spectrum(p, static_cast<size_t>(levels), sched, rel_tol, cap);
    *out = dup(mc::dump17(mc::spectrum_report(s)));
  });
}

mc_status mc_conifold_report(int g, unsigned rmax, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(mc::dump17(mc::conifold_report(g, rmax)));
  });
}

mc_status mc_dilog_identity(int g, int j, int degree_max, int with_increments, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(mc::dump17(mc::identity_report(mc::theorem_b_check(g, j, degree_max), with_increments != 0)));
  });
}

mc_status mc_bloch_wigner(double re, double im, double* value) {
  return guard([&] {
    need(value, "value");
    *value = mc::bloch_wigner({re, im});
  });
}

mc_status mc_eigenfunction(const mc_family* f, double a, double r_min, double r_max, double r_step, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    if (!(r_step > 0) || !(r_max >= r_min)) throw mc::Error(mc::Err::InvalidArgument, "bad r grid");
    std::vector<double> grid;
    long n = std::lround((r_max - r_min) / r_step);
    for (long i = 0; i <= n; ++i) grid.push_back(r_min + static_cast<double>(i) * r_step);
    *out = dup(mc::dump17(mc::eigenfunction_report(mc::eigenfunction_check(f->f, a, grid))));
  });
}

}  // extern "C"
