"""Replay every stored manifest and summarize the headline numbers.

One command reproduces the whole story: the certificate endpoint values,
the 24-cell distribution with its sharp interval masses, the four B(N)
values against the coefficient bounds, the certified sign conditions,
and the cap-configuration verdicts at N = 25 (contradiction) and N = 24
(inconclusive). Reports are deterministic given their manifest, so the
JSON printed here is byte-identical run to run.
"""

import io
import json
import os
import sys
from contextlib import redirect_stdout
from pathlib import Path

from spherecert.cli import main, manifest_to_argv

ROOT = Path(__file__).resolve().parent.parent
os.chdir(ROOT)  # manifests reference bundled inputs relative to the repo root

summaries = {
    "eval_g1_endpoint": lambda r: f"g1(-1) = {r['values'][0]['value']:.4f}",
    "eval_g2_endpoints": lambda r: (
        f"g2(-1) = {r['values'][0]['value']:.4f}, g2(1) = {r['values'][1]['value']:.4f}"
    ),
    "stats_24cell": lambda r: (
        "distribution "
        + str({e["t"]: e["mass"] for e in r["distance_distribution"]})
        + ", interval masses "
        + str([m["mass"] for m in r["interval_masses"]])
    ),
    "bound_g1_N24": lambda r: f"B1(24) = {r['sdp_bound']:.4f} (coefficient bound n/a)",
    "bound_g1_N25": lambda r: f"B1(25) = {r['sdp_bound']:.4f} (coefficient bound n/a)",
    "bound_g2_N24": lambda r: (
        f"B2(24) = {r['sdp_bound']:.4f} > {r['lp_bound']:.4f}, stronger: {r['sdp_stronger']}"
    ),
    "bound_g2_N25": lambda r: (
        f"B2(25) = {r['sdp_bound']:.4f} > {r['lp_bound']:.4f}, stronger: {r['sdp_stronger']}"
    ),
    "verify_g1_sign": lambda r: (
        f"max g1 on [-sqrt2/2, 1/2] <= {r['checks'][0]['worst_violation']:.2e} (certified)"
    ),
    "verify_g2_sign": lambda r: (
        f"max g2 on [-0.73, 1/2] <= {r['checks'][0]['worst_violation']:.2e} (certified)"
    ),
    "kissing_N25": lambda r: (
        f"best cap value {r['best_value']:.4f} at m={r['best_m']} vs B(25) = "
        f"{r['bound']:.4f} -> {r['verdict']}"
    ),
    "kissing_N24": lambda r: (
        f"best cap value {r['best_value']:.4f} at m={r['best_m']} vs B(24) = "
        f"{r['bound']:.4f} -> {r['verdict']}"
    ),
}

failures = 0
for path in sorted((ROOT / "demos" / "manifests").glob("*.json")):
    manifest = json.loads(path.read_text())
    argv = manifest_to_argv(manifest)
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    report = json.loads(buf.getvalue())
    expected_ok = {0, 4} if manifest["command"] == "kissing-check" else {0}
    status = "ok" if code in expected_ok else f"EXIT {code}"
    if code not in expected_ok:
        failures += 1
    line = summaries.get(path.stem, lambda r: "")(report)
    print(f"[{status}] {path.stem}: {line}")

if failures:
    print(f"\n{failures} manifest(s) did not reproduce cleanly")
    sys.exit(1)
print("\nall manifests reproduced")
