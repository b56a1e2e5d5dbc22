"""Drives the qbloch binary end to end: exit codes, stdout artifacts, stderr error JSON."""
import csv
import io
import json
import os
import subprocess
import sys
import tempfile

BIN, DATA = sys.argv[1], sys.argv[2]
failures = []


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


code, out, _ = run("solve", f"{DATA}/four_one.json", "--starts", "200", "--seed", "7")
pts = json.loads(out)["points"] if code == 0 else []
check(code == 0 and len(pts) == 2, "solve four_one: two points")
check(sorted(round(p["u"][0][1], 9) for p in pts) == [round(-1.0471975511965976, 9), round(1.0471975511965976, 9)],
      "solve four_one: u = +-i pi/3")

code, out, _ = run("cv", f"{DATA}/four_one.json")
mods = json.loads(out)["cv"]["moduli"] if code == 0 else []
check(len(mods) == 2 and abs(mods[0] - 0.7239261119) < 1e-9 and abs(mods[1] - 1.3813564445) < 1e-9,
      "cv four_one: {0.7239261119, 1.3813564445}")

code, out, _ = run("seq", f"{DATA}/four_one_special.json", "--n-max", "3", "--mode", "exact", "--format", "csv")
rows = list(csv.DictReader(io.StringIO(out)))
check(code == 0 and [r["re"] for r in rows[1:]] == ["1", "5", "13"], "seq exact: rows 1, 5, 13")

with tempfile.TemporaryDirectory() as tmp:
    target = os.path.join(tmp, "bloch.json")
    code, out, _ = run("bloch", f"{DATA}/four_one.json", "--output", target)
    check(code == 0 and out == "" and len(json.load(open(target))["elements"]) == 2, "bloch --output writes the file")
    check(os.listdir(tmp) == ["bloch.json"], "no temporary files left behind")

    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as f:
        json.dump({"r": 1, "Q": {"matrix": [[0, 1], [2, 0]], "linear": ["0", "0"]},
                   "L": {"coeffs": [0, 0], "constant": 0}, "epsilon": 2, "factors": []}, f)
    code, _, err = run("solve", bad)
    doc = json.loads(err)
    check(code == 1 and doc["error"] == "SchemaError", "invalid term: exit 1 with SchemaError")
    check(sorted(i["pointer"] for i in doc["issues"]) == ["/Q/matrix/0/1", "/epsilon"], "invalid term: every issue listed")

    empty = os.path.join(tmp, "empty.json")
    with open(empty, "w") as f:
        json.dump({"r": 0, "Q": {"matrix": [[0]], "linear": ["0"]}, "L": {"coeffs": [1], "constant": 0},
                   "epsilon": 1, "factors": [{"A": {"coeffs": [1], "constant": 0}, "sign": 1}]}, f)
    code, _, err = run("solve", empty, "--starts", "20")
    check(code == 2 and json.loads(err)["error"] == "ConvergenceError", "no critical point: exit 2")

code, _, err = run("seq", f"{DATA}/four_one_special.json", "--mode", "fuzzy")
check(code == 1 and json.loads(err)["error"] == "ConfigError", "bad --mode: exit 1")
code, _, err = run("nonsense")
check(code == 1 and "error" in json.loads(err), "unknown subcommand: exit 1")

code, out, _ = run("sing", f"{DATA}/four_one_special.json", "--n-max", "400")
est = json.loads(out) if code == 0 else {}
check(code == 0 and abs(est["radius"] - 0.7239261119) / 0.7239261119 < 0.05, "sing: radius near 0.7239")

sys.exit(1 if failures else 0)
