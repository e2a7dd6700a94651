"""Run germcalc subcommands and validate each payload against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

GERMCALC, SCHEMAS = sys.argv[1], pathlib.Path(sys.argv[2])

CASES = [
    ("parse", ["parse", "exp(x)*log(x) + 1/2"]),
    ("simplify", ["simplify", "exp(log(x)) + x"]),
    ("limit", ["limit", "(exp(1/x) - 1)*x"]),
    ("limit", ["limit", "--", "-exp(x)"]),
    ("cmp", ["cmp", "x^2", "x*log(x)"]),
    ("lm", ["lm", "3*x*log(x) + x"]),
    ("classify", ["classify", "1/x"]),
    ("level", ["level", "exp(exp(x))"]),
    ("eh", ["eh", "x + exp(-x)"]),
    ("eh", ["eh", "5"]),
    ("alevel", ["alevel", "1/exp(x)"]),
    ("decompose", ["decompose", "x + 1 + 1/x"]),
    ("components", ["components", "exp(x) + x + log(x)"]),
    ("simple", ["simple", "x + exp(-x)"]),
    ("inv-eh-bound", ["inv-eh-bound", "2", "1", "1"]),
    ("inv-level", ["inv-level", "1"]),
    ("domain-class", ["domain", "class", "1/x"]),
    ("domain-bound", ["domain", "nu-mr", "1/x", "2"]),
    ("domain-bound", ["domain", "nu-pr", "1/x", "1/2"]),
    ("domain-nu-log", ["domain", "nu-log", "pi/2"]),
    ("domain-nu-exp", ["domain", "nu-exp", "1/x"]),
    ("domain-standard", ["domain", "standard", "1/x"]),
    ("domain-sandwich", ["domain", "sandwich", "log(x)", "1"]),
    ("domain-angle-bounded", ["domain", "angle-bounded", "x"]),
    ("continue-eval", ["continue", "eval", "x^2", "--path", "1,0;1,0.5;1,1"]),
    ("check-report", ["continue", "angle-positive", "x^2", "--bound", "pi/4", "--radius", "100"]),
    ("check-report", ["continue", "half-bounded", "log(x)", "--bound", "x", "--radius", "10"]),
    ("check-report", ["continue", "expansive", "exp(x)", "--bound", "pi/2"]),
    ("check-report", ["continue", "dlipschitz", "1 + 1/x", "--bound", "pi/2"]),
    ("check-report", ["continue", "image-class", "x^2", "--bound", "1", "--g1", "1", "--g2", "3"]),
    ("check-report", ["continue", "unit", "1 + 1/x", "--bound", "pi/2"]),
    ("check-report", ["continue", "arg-distortion", "x^2", "1 + 1/x", "--bound", "pi/2"]),
    ("oracle-estimate", ["oracle", "limit", "1/x"]),
    ("oracle-estimate", ["oracle", "limit", "(exp(1/x) - 1)*x"]),
    ("oracle-estimate", ["oracle", "level", "exp(x)"]),
    ("oracle-estimate", ["oracle", "cmp", "x", "x^2"]),
    ("selftest", ["selftest", "--only", "1,5"]),
]

ERRORS = [
    (["eh", "x +"], "SyntaxError"),
    (["limit", "log(-x)"], "DomainError"),
    (["level", "--", "-x"], "PositivityError"),
    (["domain", "sandwich", "1/x", "1/2"], "NotInfinitelyIncreasing"),
    (["domain", "nu-exp", "x"], "NotStandardDomain"),
]

USAGE = [["eh"], ["frobnicate", "x"], ["--precision", "8", "eh", "x"], ["continue", "unit", "x"]]


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(args):
    return subprocess.run([GERMCALC, *args], capture_output=True, text=True, timeout=120)


failures = 0


def check(ok, what):
    global failures
    print(("ok   " if ok else "FAIL ") + what)
    failures += not ok


for name, args in CASES:
    p = run(args)
    label = " ".join(args)
    if p.returncode != 0:
        check(False, f"{label}: exit {p.returncode}: {p.stdout}{p.stderr}")
        continue
    payload = json.loads(p.stdout)
    try:
        jsonschema.validate(payload, schema(name))
        again = json.loads(json.dumps(payload))
        check(again == payload, f"{label} [{name}]")
    except jsonschema.ValidationError as e:
        check(False, f"{label} [{name}]: {e.message}")

for args, code in ERRORS:
    p = run(args)
    label = " ".join(args)
    try:
        payload = json.loads(p.stdout)
        jsonschema.validate(payload, schema("error"))
        check(p.returncode == 1 and payload["error"]["code"] == code, f"{label} -> {code}")
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(False, f"{label}: {e}")

for args in USAGE:
    p = run(args)
    check(p.returncode == 2 and p.stderr.strip() != "", f"usage error: {' '.join(args)}")

with tempfile.TemporaryDirectory() as tmp:
    good = pathlib.Path(tmp, "good.json")
    params = {"n_radial": 8, "n_angular": 4, "pairs": 200, "thresholds": {"band_factor": 2.0}}
    jsonschema.validate(params, schema("check-params"))
    good.write_text(json.dumps(params))
    dump = pathlib.Path(tmp, "trace.csv")
    p = run(["--params", str(good), "--dump", str(dump), "continue", "unit", "1 + 1/x", "--bound", "pi/2"])
    check(p.returncode == 0 and json.loads(p.stdout)["samples"] == 8 * 9, "--params sets the grid")
    rows = dump.read_text().splitlines() if dump.exists() else []
    check(len(rows) == 1 + 8 * 9 and rows[0].startswith("logmod,"), "--dump writes one row per sample")
    bad = pathlib.Path(tmp, "bad.json")
    bad.write_text('{"n_radial": 8, "bogus": 1}')
    p = run(["--params", str(bad), "continue", "unit", "1 + 1/x", "--bound", "pi/2"])
    check(p.returncode == 1 and json.loads(p.stdout)["error"]["code"] == "InvalidArgument", "unknown params key")

p = run(["--plain", "level", "exp(x)"])
check(p.returncode == 0 and p.stdout.strip() == "level: 1", "--plain output")

print(f"{failures} failures")
sys.exit(1 if failures else 0)
