"""CLI and C interface checks: report schemas, exit codes, determinism, cache.

usage: test_cli_schemas.py <mcurve binary> <libmcurve.so> <docs dir>
"""

import ctypes
import json
import os
import shutil
import subprocess
import sys
import tempfile

import jsonschema

MCURVE, LIB, DOCS = sys.argv[1:4]
SCHEMAS = os.path.join(DOCS, "schemas")
EXAMPLES = os.path.join(DOCS, "examples")

failures = []


def check(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def conforms(doc, name):
    try:
        jsonschema.validate(doc, schema(name))
        return True
    except jsonschema.ValidationError as e:
        print("      " + e.message)
        return False


def run(*args, env=None):
    p = subprocess.run([MCURVE, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


# every shipped schema is itself well formed
for name in sorted(os.listdir(SCHEMAS)):
    with open(os.path.join(SCHEMAS, name)) as f:
        jsonschema.Draft7Validator.check_schema(json.load(f))
check(True, "schemas are valid draft-07")

with open(os.path.join(EXAMPLES, "local_p2.family.json")) as f:
    check(conforms(json.load(f), "family"), "example family input conforms")

code, out, _ = run("polygon", "--family", "local_p2")
rep = json.loads(out)
check(code == 0 and conforms(rep, "polygon_report"), "polygon report conforms")
check(rep["g"] == 1 and rep["r"] == 3 and rep["r_polar"] == 9 and rep["reflexive"], "local_p2 lattice data")
code, out_file, _ = run("polygon", "--file", os.path.join(EXAMPLES, "local_p2.family.json"))
from_file = json.loads(out_file)
from_file["id"] = rep["id"]
check(code == 0 and from_file == rep, "polygon from file matches the built-in family")

code, _, err = run("polygon", "--file", os.path.join(EXAMPLES, "non_convex.family.json"))
check(code == 1 and "NonConvex" in err, "non-convex polygon exits 1 with NonConvex")

code, out, _ = run("periods", "--family", "local_p1xp1", "--kmax", "8")
check(code == 0 and conforms(json.loads(out), "periods_report"), "periods report conforms")
code2, out2, _ = run("periods", "--family", "local_p1xp1", "--kmax", "8")
check(out == out2, "identical runs give byte-identical JSON")

code, out, _ = run("periods", "--family", "local_p2", "--at", "10,20")
vals = json.loads(out)["values"]
check(code == 0 and all(conforms(v, "period_value") for v in vals), "period values conform")

code, out, _ = run("spectrum", "--family", "local_p2", "--levels", "2", "--basis", "100,200")
check(code in (0, 2) and conforms(json.loads(out), "spectrum"), "spectrum report conforms")

code, out, _ = run("conifold", "--g", "4")
con = json.loads(out)
check(code == 0 and conforms(con, "conifold_report"), "conifold report conforms")
check(con["kappa_row"] == [1, 3, 1, 1], "conifold --g 4 gives kappa row 1,3,1,1")
code, out, _ = run("conifold", "--g", "4", "--csv")
check(code == 0 and out.splitlines()[0] == "j,kappa,expected,ratio,spread", "conifold CSV header")

tmp = tempfile.mkdtemp()
try:
    report = os.path.join(tmp, "report.json")
    code, _, _ = run("dilog-identity", "--g", "1", "--j", "1", "--degree-max", "400", "--report", report)
    with open(report) as f:
        ident = json.load(f)
    check(code == 0 and conforms(ident, "identity_report"), "identity report conforms")
    check(ident["residual"] < 1e-6, "g=1 identity residual below 1e-6")
    code, _, _ = run("dilog-identity", "--g", "1", "--j", "1", "--degree-max", "100", "--tol", "1e-30")
    check(code == 2, "identity above tolerance exits 2")

    code, out, _ = run("compare", "--family", "local_p1xp1", "--levels", "3")
    rows = [r.split(",") for r in out.strip().splitlines()[1:]]
    check(code == 0 and len(rows) == 3 and all(float(r[3]) < 1e-5 for r in rows), "compare local_p1xp1 within 1e-5")

    # configuration: file values fill in, flags override
    code, out, _ = run("--config", os.path.join(EXAMPLES, "run.cfg"), "quantize", "--levels", "1")
    check(code == 0 and len(out.strip().splitlines()) == 2, "flag overrides config value")
    code, out, _ = run("--config", os.path.join(EXAMPLES, "run.cfg"), "quantize")
    check(code == 0 and len(out.strip().splitlines()) == 4, "config value used when no flag")
    bad_cfg = os.path.join(tmp, "bad.cfg")
    with open(bad_cfg, "w") as f:
        f.write("family = local_p2\nwhatever = 3\n")
    code, _, err = run("--config", bad_cfg, "quantize")
    check(code == 1 and "unknown config key" in err, "unknown config key rejected")
    code, _, _ = run("quantize", "--family", "local_p2", "--bits", "32")
    check(code == 1, "precision below 64 bits rejected")
    code, _, _ = run("frobnicate")
    check(code == 1, "unknown subcommand exits 1")
    code, _, _ = run("quantize")
    check(code == 1, "missing family exits 1")

    # cache: entries are written atomically and purge + recompute is byte-identical
    cache = os.path.join(tmp, "cache")
    env = dict(os.environ, QC_CACHE_DIR=cache)
    code, first, _ = run("gw", "--family", "local_p2", "--kmax", "12", env=env)
    entries = os.listdir(cache)
    check(code == 0 and len(entries) == 1 and entries[0].endswith(".json"), "cache entry written")
    with open(os.path.join(cache, entries[0])) as f:
        entry = json.load(f)
    check(conforms(entry, "cache_entry"), "cache entry conforms")
    check(conforms(json.loads(entry["payload"]), "gw_table"), "cached GW table conforms")
    _, second, _ = run("gw", "--family", "local_p2", "--kmax", "12", env=env)
    shutil.rmtree(cache)
    _, third, _ = run("gw", "--family", "local_p2", "--kmax", "12", env=env)
    check(first == second == third, "cache hit and recomputation agree exactly")
    _, csv, _ = run("gw", "--family", "local_p2", "--kmax", "6", "--csv")
    check(csv.splitlines()[0] == "k,numerator,denominator" and csv.splitlines()[6] == "6,-45,8", "GW CSV dump")

    code, out, _ = run("plotdata", "--kind", "nu_of_a", "--family", "local_p2", "--a-min", "3.2", "--a-max", "50",
                       "--points", "500")
    nu = [float(line.split()[1]) for line in out.splitlines() if not line.startswith("#")]
    check(code == 0 and len(nu) == 500 and all(b > a for a, b in zip(nu, nu[1:])), "nu_of_a column is monotone")
    code, out, _ = run("plotdata", "--kind", "identity_partial_sums", "--g", "1", "--j", "1", "--degree-max", "200")
    cols = [line.split() for line in out.splitlines() if not line.startswith("#")]
    gaps = [abs(float(c[1]) - float(c[2])) for c in cols]
    check(code == 0 and gaps[-1] < gaps[len(gaps) // 2] < gaps[0], "identity partial sums approach the lhs")
finally:
    shutil.rmtree(tmp)

# C interface through ctypes
lib = ctypes.CDLL(LIB)
lib.mc_last_error.restype = ctypes.c_char_p
lib.mc_status_name.restype = ctypes.c_char_p
fam = ctypes.c_void_p()
nf = ctypes.c_void_p()
out = ctypes.c_void_p()


def take():
    s = ctypes.cast(out, ctypes.c_char_p).value.decode()
    lib.mc_string_free(out)
    return json.loads(s)


st = lib.mc_family_builtin(b"no_such_family", ctypes.byref(fam))
check(st == 1 and b"unknown family" in lib.mc_last_error(), "C API reports unknown family")
check(lib.mc_status_name(10) == b"NoOperatorFound", "status names follow the error enum")
check(lib.mc_family_builtin(b"local_p1xp1", ctypes.byref(fam)) == 0, "C API opens local_p1xp1")
check(lib.mc_normal_create(fam, 120, 256, ctypes.byref(nf)) == 0, "C API builds the normal function")
check(lib.mc_quantize(nf, 3, ctypes.c_double(1e-10), ctypes.byref(out)) == 0, "C API quantizes")
q = take()
check(conforms(q, "quantization"), "quantization report conforms")
check(lib.mc_normal_evaluate(nf, ctypes.c_double(30.0), ctypes.byref(out)) == 0 and conforms(take(), "period_value"),
      "C API period value conforms")
st = lib.mc_normal_evaluate(nf, ctypes.c_double(1.0), ctypes.byref(out))
check(st == 8, "a below |a_hat| gives OutsideDomain")
a1 = q["roots"][0]["a"]
st = lib.mc_eigenfunction(fam, ctypes.c_double(a1), ctypes.c_double(-4), ctypes.c_double(4), ctypes.c_double(1),
                          ctypes.byref(out))
check(st == 0 and conforms(take(), "eigenfunction_report"), "eigenfunction report conforms")
lib.mc_normal_free(nf)
lib.mc_family_free(fam)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
