// mcurve: command-line front end over the C interface.
//
// Exit codes: 0 success, 2 tolerance or numerical validation failure, 1 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mcurve/mcurve.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kUsage = 1, kFailed = 2;
constexpr const char* kCacheVersion = "mcurve-cache-1";

struct Failure {
  int code;
  std::string msg;
};

int exit_for(mc_status s) {
  switch (s) {
    case MC_INVALID_ARGUMENT:
    case MC_NON_CONVEX:
    case MC_ORIGIN_NOT_INTERIOR:
    case MC_INCONSISTENT_GENUS:
    case MC_NOT_TEMPERED:
    case MC_NOT_REFLEXIVE:
    case MC_NON_POSITIVE_COEFFICIENTS:
    case MC_OUTSIDE_DOMAIN:
    case MC_IO:
      return kUsage;
    default:
      return kFailed;
  }
}

void check(mc_status s) {
  if (s != MC_OK) throw Failure{exit_for(s), mc_last_error()};
}

// Owning wrapper for strings handed out by the library.
std::string take(char* p) {
  std::string s(p);
  mc_string_free(p);
  return s;
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Settings {
  std::string family, file, output, cache_dir, report, kind = "nu_of_a", basis = "200,400,800";
  unsigned bits = 256, order = 120, kmax = 12, rmax = 400;
  int levels = 3, g = 1, j = 1, degree_max = 400, points = 500;
  double tol = 0, hbar = 2 * M_PI, a_min = 0, a_max = 0;
  size_t cap = 800;
  bool csv = false;
  std::vector<double> at;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::istringstream in(slurp(path));
  std::string line;
  int no = 0;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Failure{kUsage, path + ":" + std::to_string(no) + ": expected key=value"};
    std::string k = trim(line.substr(0, eq));
    for (char& c : k)
      if (c == '-') c = '_';
    kv[k] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string key_of(const CLI::Option* o) {
  std::string n = o->get_single_name();
  for (char& c : n)
    if (c == '-') c = '_';
  return n;
}

// Config values fill options the command line left unset.
void apply_config(CLI::App& app, CLI::App* sub, const std::map<std::string, std::string>& kv) {
  std::set<std::string> known;
  for (CLI::App* s : app.get_subcommands({}))
    for (const CLI::Option* o : s->get_options()) known.insert(key_of(o));
  for (const CLI::Option* o : app.get_options()) known.insert(key_of(o));
  known.erase("help");
  known.erase("config");
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw Failure{kUsage, "unknown config key '" + k + "'"};
  for (CLI::App* scope : {&app, sub})
    for (CLI::Option* o : scope->get_options()) {
      auto it = kv.find(key_of(o));
      if (it == kv.end() || o->count() > 0) continue;
      if (o->get_type_size() == 0) {
        if (it->second == "true" || it->second == "1") o->add_result("true");
        else if (it->second != "false" && it->second != "0") throw Failure{kUsage, "flag '" + it->first + "' needs true/false"};
      } else {
        std::istringstream items(it->second);
        std::string item;
        if (o->get_expected_max() > 1)
          while (std::getline(items, item, ',')) o->add_result(item);
        else
          o->add_result(it->second);
      }
      o->run_callback();
    }
}

struct Family {
  mc_family* h = nullptr;
  ~Family() { mc_family_free(h); }
};

void open_family(const Settings& s, Family& f) {
  if (!s.family.empty() == !s.file.empty()) throw Failure{kUsage, "give exactly one of --family or --file"};
  if (!s.family.empty())
    check(mc_family_builtin(s.family.c_str(), &f.h));
  else
    check(mc_family_from_json(slurp(s.file).c_str(), &f.h));
}

struct Normal {
  mc_normal* h = nullptr;
  ~Normal() { mc_normal_free(h); }
};

void write_out(const Settings& s, const std::string& text) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (s.output.empty() || s.output == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(s.output, std::ios::binary);
  if (!out || !(out << body)) throw Failure{kUsage, "cannot write " + s.output};
}

// FNV-1a, 64-bit: stable across runs and platforms.
std::string hash_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

std::string cache_dir(const Settings& s) {
  if (!s.cache_dir.empty()) return s.cache_dir;
  const char* env = std::getenv("QC_CACHE_DIR");
  return env ? env : "";
}

// Exact payloads only; the key covers the canonical family, the operation and its parameters.
std::string cached(const Settings& s, const std::string& key, const std::function<std::string()>& compute) {
  std::string dir = cache_dir(s);
  if (dir.empty()) return compute();
  std::string full = std::string(kCacheVersion) + "|" + key;
  fs::path path = fs::path(dir) / (hash_hex(full) + ".json");
  std::error_code ec;
  if (fs::exists(path, ec)) {
    try {
      json entry = json::parse(slurp(path.string()));
      if (entry.at("version") == kCacheVersion && entry.at("key") == full) return entry.at("payload").get<std::string>();
    } catch (const std::exception&) {
      // unreadable entry: recompute and overwrite
    }
  }
  std::string payload = compute();
  fs::create_directories(dir, ec);
  json entry = {{"version", kCacheVersion}, {"key", full}, {"payload", payload}};
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << entry.dump();
    if (!out) throw Failure{kUsage, "cannot write cache entry " + tmp.string()};
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Failure{kUsage, "cache rename failed: " + ec.message()};
  return payload;
}

std::vector<size_t> parse_basis(const std::string& text) {
  std::vector<size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t pos = 0;
      long v = std::stol(item, &pos);
      if (pos != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<size_t>(v));
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad basis size '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{kUsage, "empty basis schedule"};
  return out;
}

void validate(const Settings& s) {
  if (s.bits < 64) throw Failure{kUsage, "precision must be at least 64 bits"};
  if (s.order == 0 || s.kmax == 0 || s.rmax == 0 || s.cap == 0) throw Failure{kUsage, "numeric settings must be positive"};
  if (s.levels <= 0 || s.g <= 0 || s.j <= 0 || s.degree_max <= 0 || s.points <= 0)
    throw Failure{kUsage, "numeric settings must be positive"};
  if (s.tol < 0 || !(s.hbar > 0)) throw Failure{kUsage, "numeric settings must be positive"};
}

int cmd_polygon(const Settings& s) {
  Family f;
  open_family(s, f);
  char* out = nullptr;
  check(mc_polygon_report(f.h, &out));
  write_out(s, take(out));
  return kOk;
}

std::string gw_payload(const Settings& s, const Family& f) {
  char* canon = nullptr;
  check(mc_family_canonical(f.h, &canon));
  std::string key = take(canon) + "|gw|kmax=" + std::to_string(s.kmax);
  return cached(s, key, [&] {
    char* out = nullptr;
    check(mc_gw_table(f.h, s.kmax, &out));
    return take(out);
  });
}

int cmd_periods(const Settings& s) {
  Family f;
  open_family(s, f);
  char* out = nullptr;
  check(mc_periods_report(f.h, s.order, s.kmax, &out));
  std::string rep = take(out);
  if (s.at.empty()) {
    write_out(s, rep);
    return kOk;
  }
  Normal nf;
  check(mc_normal_create(f.h, s.order, s.bits, &nf.h));
  std::string text = "{\n\"report\": " + rep + ",\n\"values\": [";
  for (size_t i = 0; i < s.at.size(); ++i) {
    check(mc_normal_evaluate(nf.h, s.at[i], &out));
    text += (i ? ",\n" : "\n") + take(out);
  }
  write_out(s, text + "\n]\n}");
  return kOk;
}

int cmd_gw(const Settings& s) {
  Family f;
  open_family(s, f);
  std::string payload = gw_payload(s, f);
  if (!s.csv) {
    write_out(s, payload);
    return kOk;
  }
  json t = json::parse(payload);
  std::string text = "k,numerator,denominator\n";
  for (const json& row : t["gw"]) {
    std::string q = row["N_k"];
    auto slash = q.find('/');
    std::string num = q.substr(0, slash), den = slash == std::string::npos ? "1" : q.substr(slash + 1);
    text += std::to_string(row["k"].get<int>()) + "," + num + "," + den + "\n";
  }
  write_out(s, text);
  return kOk;
}

json quantize_json(const Settings& s, const Family& f, double tol) {
  Normal nf;
  check(mc_normal_create(f.h, s.order, s.bits, &nf.h));
  // Levels are counted from the first admissible root, which need not be n = 1.
  json q;
  for (int n_max = s.levels; n_max <= s.levels + 8; ++n_max) {
    char* out = nullptr;
    check(mc_quantize(nf.h, n_max, tol, &out));
    q = json::parse(take(out));
    if (static_cast<int>(q["roots"].size()) >= s.levels) break;
  }
  json roots = json::array();
  for (const json& r : q["roots"])
    if (static_cast<int>(roots.size()) < s.levels) roots.push_back(r);
  q["roots"] = roots;
  return q;
}

int cmd_quantize(const Settings& s) {
  Family f;
  open_family(s, f);
  double tol = s.tol > 0 ? s.tol : 1e-10;
  json q = quantize_json(s, f, tol);
  std::string text = "n,a_n,residual,bracket_lo,bracket_hi\n";
  bool ok = static_cast<int>(q["roots"].size()) == s.levels;
  for (const json& r : q["roots"]) {
    text += std::to_string(r["n"].get<int>()) + "," + fmt(r["a"]) + "," + fmt(r["residual"]) + "," +
            fmt(r["bracket"][0]) + "," + fmt(r["bracket"][1]) + "\n";
    ok = ok && r["residual"].get<double>() <= tol;
  }
  write_out(s, text);
  return ok ? kOk : kFailed;
}

json spectrum_json(const Settings& s, const Family& f, double tol) {
  std::vector<size_t> sched = parse_basis(s.basis);
  char* out = nullptr;
  check(mc_spectrum(f.h, s.levels, sched.data(), sched.size(), tol, s.cap, s.hbar, &out));
  return json::parse(take(out));
}

int cmd_spectrum(const Settings& s) {
  Family f;
  open_family(s, f);
  std::vector<size_t> sched = parse_basis(s.basis);
  char* out = nullptr;
  check(mc_spectrum(f.h, s.levels, sched.data(), sched.size(), s.tol > 0 ? s.tol : 1e-6, s.cap, s.hbar, &out));
  std::string text = take(out);
  write_out(s, text);
  return json::parse(text)["converged"].get<bool>() ? kOk : kFailed;
}

struct Ladder {
  std::vector<int> n;
  std::vector<double> a, lambda, gap;
};

Ladder ladder(const Settings& s, const Family& f) {
  json q = quantize_json(s, f, 1e-10);
  json sp = spectrum_json(s, f, 1e-6);
  Ladder l;
  for (size_t i = 0; i < q["roots"].size() && i < sp["eigenvalues"].size(); ++i) {
    double a = q["roots"][i]["a"], lam = sp["eigenvalues"][i]["lambda"];
    l.n.push_back(q["roots"][i]["n"]);
    l.a.push_back(a);
    l.lambda.push_back(lam);
    l.gap.push_back(std::fabs(a - lam) / std::fabs(lam));
  }
  return l;
}

int cmd_compare(const Settings& s) {
  Family f;
  open_family(s, f);
  double tol = s.tol > 0 ? s.tol : 1e-5;
  Ladder l = ladder(s, f);
  std::string text = "n,root_a_n,eigenvalue_lambda_n,relative_gap\n";
  bool ok = static_cast<int>(l.n.size()) == s.levels;
  for (size_t i = 0; i < l.n.size(); ++i) {
    text += std::to_string(l.n[i]) + "," + fmt(l.a[i]) + "," + fmt(l.lambda[i]) + "," + fmt(l.gap[i]) + "\n";
    ok = ok && l.gap[i] < tol;
  }
  write_out(s, text);
  return ok ? kOk : kFailed;
}

int cmd_conifold(const Settings& s) {
  char* out = nullptr;
  check(mc_conifold_report(s.g, s.rmax, &out));
  std::string text = take(out);
  json r = json::parse(text);
  bool ok = true;
  std::string csv = "j,kappa,expected,ratio,spread\n";
  for (const json& k : r["kappa"]) {
    ok = ok && k["kappa"] == k["expected"] && k["spread"].get<double>() < 0.1;
    csv += std::to_string(k["j"].get<int>()) + "," + std::to_string(k["kappa"].get<long>()) + "," +
           std::to_string(k["expected"].get<long>()) + "," + fmt(k["ratio"]) + "," + fmt(k["spread"]) + "\n";
  }
  write_out(s, s.csv ? csv : text);
  return ok ? kOk : kFailed;
}

int cmd_dilog(const Settings& s) {
  char* out = nullptr;
  check(mc_dilog_identity(s.g, s.j, s.degree_max, 0, &out));
  std::string text = take(out);
  json r = json::parse(text);
  double tol = s.tol > 0 ? s.tol : 1e-6;
  if (!s.report.empty()) {
    std::ofstream rep(s.report, std::ios::binary);
    if (!(rep << text << '\n')) throw Failure{kUsage, "cannot write " + s.report};
  }
  write_out(s, text);
  return r["residual"].get<double>() < tol ? kOk : kFailed;
}

int cmd_plotdata(const Settings& s) {
  std::string text;
  if (s.kind == "nu_of_a") {
    Family f;
    open_family(s, f);
    Normal nf;
    check(mc_normal_create(f.h, s.order, s.bits, &nf.h));
    double lo = s.a_min, hi = s.a_max;
    if (lo <= 0) check(mc_normal_edge(nf.h, &lo));
    if (hi <= lo) hi = 20 * lo;
    double tol = s.tol > 0 ? s.tol : 1e-4;
    text = "# nu(a) along real a above the conifold point\n# columns: a  nu  error\n";
    for (int i = 0; i < s.points; ++i) {
      double a = s.points == 1 ? lo : lo + (hi - lo) * i / (s.points - 1);
      double nu = 0, err = 0;
      check(mc_normal_nu(nf.h, a, tol, &nu, &err));
      text += fmt(a) + " " + fmt(nu) + " " + fmt(err) + "\n";
    }
  } else if (s.kind == "spectrum_ladder") {
    Family f;
    open_family(s, f);
    Ladder l = ladder(s, f);
    text = "# quantization roots against operator eigenvalues\n# columns: n  a_n  lambda_n\n";
    for (size_t i = 0; i < l.n.size(); ++i) text += std::to_string(l.n[i]) + " " + fmt(l.a[i]) + " " + fmt(l.lambda[i]) + "\n";
  } else if (s.kind == "identity_partial_sums") {
    char* out = nullptr;
    check(mc_dilog_identity(s.g, s.j, s.degree_max, 1, &out));
    json r = json::parse(take(out));
    text = "# partial sums of the conifold lattice sum by total degree\n# columns: degree  rhs_partial  lhs\n";
    double lhs = r["lhs"], partial = r["rhs_truncated"];
    const json& inc = r["increments"];
    // rhs_truncated already has every increment removed; walk back up from log|a_j|.
    for (const json& v : inc) partial += v.get<double>();
    for (size_t k = 0; k < inc.size(); ++k) {
      partial -= inc[k].get<double>();
      if (k > 0) text += std::to_string(k) + " " + fmt(partial) + " " + fmt(lhs) + "\n";
    }
  } else {
    throw Failure{kUsage, "unknown plot kind '" + s.kind + "'"};
  }
  write_out(s, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  std::string config;
  CLI::App app{"Periods, normal functions and spectra of mirror curves"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", config, "flat key=value file; flags override it");
  app.add_option("-o,--output", s.output, "output path (default stdout)");
  app.add_option("--cache-dir", s.cache_dir, "cache directory (default $QC_CACHE_DIR)");

  auto family_opts = [&](CLI::App* c) {
    c->add_option("--family", s.family, "built-in family id");
    c->add_option("--file", s.file, "polygon JSON file");
  };
  auto precision_opts = [&](CLI::App* c) {
    c->add_option("--order", s.order, "series order");
    c->add_option("--bits", s.bits, "working precision in bits");
  };

  CLI::App* polygon = app.add_subcommand("polygon", "lattice data of a family");
  family_opts(polygon);

  CLI::App* periods = app.add_subcommand("periods", "exact genus-one data and GW invariants");
  family_opts(periods);
  precision_opts(periods);
  periods->add_option("--kmax", s.kmax, "largest degree k");
  periods->add_option("--at", s.at, "evaluate all periods at these a")->delimiter(',');

  CLI::App* gw = app.add_subcommand("gw", "local GW and GV invariants (cached)");
  family_opts(gw);
  gw->add_option("--kmax", s.kmax, "largest degree k");
  gw->add_flag("--csv", s.csv, "rows k,numerator,denominator");

  CLI::App* quantize = app.add_subcommand("quantize", "roots of nu(a) = n");
  family_opts(quantize);
  precision_opts(quantize);
  quantize->add_option("--levels", s.levels, "number of levels");
  quantize->add_option("--tol", s.tol, "root tolerance (default 1e-10)");

  CLI::App* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues of the quantized curve");
  family_opts(spectrum);
  spectrum->add_option("--levels", s.levels, "number of eigenvalues");
  spectrum->add_option("--basis", s.basis, "basis schedule, e.g. 200,400,800");
  spectrum->add_option("--tol", s.tol, "relative convergence (default 1e-6)");
  spectrum->add_option("--cap", s.cap, "largest basis size");
  spectrum->add_option("--hbar", s.hbar, "Planck constant (default 2 pi)");

  CLI::App* compare = app.add_subcommand("compare", "quantization roots against eigenvalues");
  family_opts(compare);
  precision_opts(compare);
  compare->add_option("--levels", s.levels, "number of levels");
  compare->add_option("--basis", s.basis, "basis schedule");
  compare->add_option("--cap", s.cap, "largest basis size");
  compare->add_option("--tol", s.tol, "largest admissible relative gap (default 1e-5)");

  CLI::App* conifold = app.add_subcommand("conifold", "maximal conifold point of F_{g,g} and its multiples");
  conifold->add_option("--g", s.g, "genus")->required();
  conifold->add_option("--rmax", s.rmax, "terms of the axis series");
  conifold->add_flag("--csv", s.csv, "kappa table as CSV");

  CLI::App* dilog = app.add_subcommand("dilog-identity", "dilogarithm identity at the conifold point");
  dilog->add_option("--g", s.g, "genus")->required();
  dilog->add_option("--j", s.j, "modulus index")->required();
  dilog->add_option("--degree-max", s.degree_max, "lattice sum truncation degree");
  dilog->add_option("--report", s.report, "write the report here as well");
  dilog->add_option("--tol", s.tol, "largest admissible residual (default 1e-6)");

  CLI::App* plot = app.add_subcommand("plotdata", "columns for external plotting");
  family_opts(plot);
  precision_opts(plot);
  plot->add_option("--kind", s.kind, "nu_of_a | spectrum_ladder | identity_partial_sums");
  plot->add_option("--a-min", s.a_min, "left end (default: evaluation edge)");
  plot->add_option("--a-max", s.a_max, "right end");
  plot->add_option("--points", s.points, "grid points");
  plot->add_option("--tol", s.tol, "largest admissible tail bound for nu (default 1e-4)");
  plot->add_option("--levels", s.levels, "levels for the ladder");
  plot->add_option("--basis", s.basis, "basis schedule for the ladder");
  plot->add_option("--cap", s.cap, "largest basis size");
  plot->add_option("--g", s.g, "genus");
  plot->add_option("--j", s.j, "modulus index");
  plot->add_option("--degree-max", s.degree_max, "lattice sum truncation degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!config.empty()) apply_config(app, sub, read_config(config));
    validate(s);
    const std::string name = sub->get_name();
    if (name == "polygon") return cmd_polygon(s);
    if (name == "periods") return cmd_periods(s);
    if (name == "gw") return cmd_gw(s);
    if (name == "quantize") return cmd_quantize(s);
    if (name == "spectrum") return cmd_spectrum(s);
    if (name == "compare") return cmd_compare(s);
    if (name == "conifold") return cmd_conifold(s);
    if (name == "dilog-identity") return cmd_dilog(s);
    if (name == "plotdata") return cmd_plotdata(s);
    return kUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.msg << "\n";
    if (f.code == kUsage) std::cerr << sub->help();
    return f.code;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << sub->help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
