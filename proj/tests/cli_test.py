"""End-to-end checks of the fusionq CLI: JSON output against the shipped
schemas, exit codes, byte-identical reruns and text round trips."""

import json
import pathlib
import subprocess
import sys

import jsonschema

CLI = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

failures = []


def run(args, env=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env)


def check(cond, what):
    if not cond:
        failures.append(what)


JSON_CASES = [
    ("roots", ["roots", "--algebra", "A2", "--json"]),
    ("shapovalov", ["shapovalov", "--algebra", "A1", "--lambda", "t", "--beta", "3", "--json"]),
    ("shapovalov", ["shapovalov", "--algebra", "A2", "--lambda", "0,1/3", "--beta", "1,1", "--json"]),
    ("kernel", ["kernel", "--algebra", "A2", "--lambda0", "0,1/3", "--cutoff", "3", "--json"]),
    ("kernel", ["kernel", "--algebra", "A1", "--lambda0", "1", "--upper", "--json"]),
    ("module", ["module", "--algebra", "A1", "--lambda", "1", "--cutoff", "6", "--dims", "--json"]),
    ("module", ["module", "--algebra", "A1", "--lambda", "t", "--cutoff", "3", "--json"]),
    ("fusion", ["fusion", "--algebra", "A1", "--lambda", "t", "--cutoff", "3", "--json"]),
    ("fusion", ["jred", "--algebra", "A1", "--lambda0", "1", "--json"]),
    ("limit", ["limit", "--algebra", "A1", "--lambda0", "1", "--dir", "1", "--f", "fH", "--g", "fH", "--json"]),
    ("star", ["star", "--algebra", "A1", "--lambda0", "1", "--f", "fX", "--g", "fY", "--json"]),
    ("star", ["star", "--algebra", "A1", "--lambda0", "2", "--table", "--json"]),
    ("feval", ["feval", "--algebra", "A1", "--lambda0", "2", "--f", "fH", "--u", "1", "--json"]),
    ("fmember", ["fmember", "--algebra", "A1", "--lambda0", "1", "--f", "fX", "--json"]),
    ("kostant", ["kostant", "--algebra", "A1", "--lambda0", "3", "--json"]),
    ("repro", ["repro", "sl2-mat2", "--json"]),
]

for schema_name, args in JSON_CASES:
    schema = json.loads((SCHEMAS / f"{schema_name}.json").read_text())
    first = run(args)
    check(first.returncode == 0, f"{args}: exit {first.returncode}: {first.stderr}")
    try:
        jsonschema.validate(json.loads(first.stdout), schema)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failures.append(f"{args}: {e}")
    check(run(args).stdout == first.stdout, f"{args}: output differs between runs")

# determinant of the k = 3 block for sl(2)
shap = json.loads(run(JSON_CASES[1][1]).stdout)
check(shap["det"] == "6*t*(t-1)*(t-2)", f"det S^3 is {shap['det']}")

# a star product result re-parses as a function and evaluates like the closed form:
# fX *_1 fY = 1/2 + fH/2, and f_x(1) = lambda(x), so the value at 1 is 1/2 + 1/2
star = json.loads(run(JSON_CASES[10][1]).stdout)
ev = run(["feval", "--algebra", "A1", "--lambda0", "1", "--f", star["result"], "--u", "1", "--json"])
check(ev.returncode == 0 and json.loads(ev.stdout)["value"] == "1", f"round trip of star result: {ev.stdout} {ev.stderr}")

# reduced fusion element at sl(2) lambda0 = 1
jred = json.loads(run(JSON_CASES[8][1]).stdout)
check(jred["element"] == "1 * 1 (x) 1 + -1 * Y[1] (x) X[1]", f"jred element {jred['element']}")

text = run(["repro", "sl2-star-formula"])
check(text.returncode == 0 and text.stdout.startswith("PASS sl2-star-formula"), f"repro text: {text.stdout}")

EXIT_CASES = [
    (["shapovalov", "--beta", "1"], 2),
    (["star", "--lambda0", "1", "--f", "fQ", "--g", "fH"], 2),
    (["roots", "--algebra", "E8"], 2),
    (["repro", "no-such-experiment"], 2),
    (["kostant", "--lambda0", "1/2"], 1),
    (["fmember", "--lambda0", "1", "--f", "1 * c[coadxcoad; 0, 4]"], 1),
    (["star", "--lambda0", "1", "--f", "1 * c[coadxcoad; 0, 4]", "--g", "1"], 1),
    (["roots"], 0),
]
for args, code in EXIT_CASES:
    r = run(args)
    check(r.returncode == code, f"{args}: exit {r.returncode}, expected {code}")

env = {"FUSIONQ_CUTOFF": "2", "PATH": "/usr/bin:/bin"}
k = json.loads(run(["kernel", "--lambda0", "1", "--json"], env=env).stdout)
check(k["cutoff"] == 2, "FUSIONQ_CUTOFF is not the default cutoff")
check(run(["roots"], env={"FUSIONQ_CUTOFF": "x"}).returncode == 2, "bad FUSIONQ_CUTOFF accepted")

for f in failures:
    print("FAIL:", f)
print("all CLI checks passed" if not failures else f"{len(failures)} CLI checks failed")
sys.exit(1 if failures else 0)
