#!/usr/bin/env python3
"""
Smoke test for the management commands.
Runs each command in a subprocess and checks exit codes and output shape.
"""

import csv
import io
import subprocess
import sys
from pathlib import Path

MANAGE = Path(__file__).resolve().parent / "manage.py"


def run(*args):
    return subprocess.run(
        [sys.executable, str(MANAGE), *args],
        capture_output=True, text=True, timeout=600,
    )


def report(label, ok, detail=""):
    if ok:
        print(f"✅ {label}: PASSED")
    else:
        print(f"❌ {label}: FAILED {detail}".rstrip())
    return ok


def check_spectrum():
    print("Testing spectrum...")
    result = run("spectrum", "--source", "complete:n=4", "--kind", "lap")
    rows = list(csv.reader(io.StringIO(result.stdout)))
    values = [float(row[0]) for row in rows[1:]]
    ok = result.returncode == 0 and len(values) == 4 and abs(values[0] - 4) < 1e-9 and abs(values[-1]) < 1e-9
    passed = report("Spectrum of K4", ok, result.stderr)

    result = run("spectrum", "--source", "empty:n=3", "--kind", "nlap")
    passed &= report("Normalized Laplacian of E3 rejected", result.returncode == 2, f"- exit {result.returncode}")
    return passed


def check_sweep():
    print("Testing sweep...")
    args = ("sweep", "--source", "er:n=40,p=0.2", "--tau-points", "5", "--samples", "3", "--seed", "7")
    first, second = run(*args), run(*args)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout.splitlines()) == 6
    passed = report("Seeded sweep is reproducible", ok, first.stderr)

    result = run("sweep", "--source", "cycle:n=5", "--tau-min", "0", "--tau-points", "3")
    passed &= report("Log grid from tau=0 rejected", result.returncode == 2, f"- exit {result.returncode}")
    return passed


def check_generate():
    print("Testing generate...")
    result = run("generate", "--source", "ba:n=30,m0=3,m=2", "--seed", "4")
    ok = result.returncode == 0 and result.stdout.startswith("# n=30 m=57")
    return report("Barabasi-Albert edge list", ok, result.stderr)


def check_self_checks():
    print("Testing oracle_check and bounds_check...")
    result = run("oracle_check", "--max-n", "64")
    passed = report("Closed-form oracle", result.returncode == 0, result.stdout[-500:])
    result = run("bounds_check", "--samples", "3")
    passed &= report("Entropy bounds", result.returncode == 0, result.stdout[-500:])
    result = run("bounds_check", "--samples", "0")
    passed &= report("bounds_check --samples 0 rejected", result.returncode == 2, f"- exit {result.returncode}")
    return passed


def main():
    print("🧪 Testing graph entropy commands...")
    print("=" * 50)

    results = []
    for check in (check_spectrum, check_sweep, check_generate, check_self_checks):
        try:
            results.append(check())
        except Exception as e:
            print(f"❌ {check.__name__}: ERROR - {e}")
            results.append(False)
        print("-" * 30)

    print("=" * 50)
    print("🏁 Testing completed!")
    sys.exit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
