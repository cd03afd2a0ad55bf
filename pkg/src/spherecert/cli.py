"""Command-line front end.

Verbs: eval, code-stats, verify-cert, bound, kissing-check. Every report
is JSON on stdout and embeds the run manifest that produced it, so a
report can be reproduced byte-for-byte from its own contents.

Exit codes: 0 all requested checks pass; 2 input validation or schema
failure; 3 certificate failure; 4 contradiction found (kissing-check's
successful mathematical outcome, flagged distinctly for scripting).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bounds import DDCertificate, dd_bound, lp_rg_lower
from .capopt import kissing_check
from .codes import SphericalCode, builtin_code, distance_distribution, moment
from .errors import PreconditionError
from .gegenbauer import GegenbauerExpansion
from .threepoint import TripleCertificate, certificate_valid
from .verify import (
    CERTIFIED,
    SAMPLED,
    DomainSpec,
    check_dd_pair_condition,
    check_sign,
    check_triple_condition,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CERTIFICATE = 3
EXIT_CONTRADICTION = 4


@dataclass
class RunManifest:
    command: str
    inputs: list[str]
    parameters: dict
    outputs: str
    seed: int | None
    tool_version: str

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "parameters": self.parameters,
            "outputs": self.outputs,
            "seed": self.seed,
            "tool_version": self.tool_version,
        }


_POSITIONAL_PARAMS = ("expansion", "code", "cert")


def manifest_to_argv(manifest: dict) -> list[str]:
    """Reconstruct the argv that produced a report from its manifest.

    Re-running the result reproduces the report byte for byte (reports
    carry no timestamps).
    """
    argv = [manifest["command"]]
    argv.extend(manifest["inputs"])
    for key, value in sorted(manifest["parameters"].items()):
        if key in _POSITIONAL_PARAMS:
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, list):
            for item in value:
                if isinstance(item, list):  # interval pairs
                    argv.append(f"{flag}={item[0]},{item[1]}")
                else:
                    argv.append(f"{flag}={item}")
        else:
            argv.append(f"{flag}={value}")
    if manifest.get("outputs") and manifest["outputs"] != "stdout":
        argv.append(f"--out={manifest['outputs']}")
    return argv


def _manifest(command: str, inputs: list[str], args, skip=("out",)) -> RunManifest:
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "command") and k not in skip and v is not None
    }
    return RunManifest(
        command=command,
        inputs=inputs,
        parameters=params,
        outputs=args.out or "stdout",
        seed=getattr(args, "seed", None),
        tool_version=__version__,
    )


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SystemExit2(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit2(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")


class SystemExit2(Exception):
    """Input validation failure; maps to exit code 2."""


def _parse_interval(text: str) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise SystemExit2(f"interval must be 'a,b', got {text!r}")
    return a, b


def _spec_from_args(args, default_step: float) -> DomainSpec:
    mode = CERTIFIED if args.mode == "certified" else SAMPLED
    return DomainSpec(grid_step=args.grid_step or default_step, mode=mode)


# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    exp = GegenbauerExpansion.from_dict(_load_json(args.expansion))
    rows = [{"t": t, "value": exp.eval(t)} for t in (args.t or [])]
    report = {
        "n": exp.n,
        "degree": exp.degree,
        "value_at_one": exp.at_one(),
        "values": rows,
        "manifest": _manifest("eval", [args.expansion], args).to_dict(),
    }
    if args.csv_out:
        ts = np.linspace(-1.0, 1.0, args.samples)
        vals = exp.eval(ts)
        with open(args.csv_out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "value"])
            writer.writerows(zip(ts.tolist(), vals.tolist()))
        report["csv"] = args.csv_out
    _emit(report, args)
    return EXIT_OK


def _load_code(spec: str) -> SphericalCode:
    if spec.endswith(".json"):
        return SphericalCode.from_dict(_load_json(spec), name=spec)
    return builtin_code(spec)


def _cmd_code_stats(args) -> int:
    code = _load_code(args.code)
    dist = distance_distribution(code, tol=args.tol)
    entries = [
        {"t": float(t), "mass": float(m)} for t, m in sorted(dist.entries.items())
    ]
    intervals = [
        {"interval": [a, b], "mass": float(dist.interval_mass(a, b))}
        for a, b in (args.interval or [])
    ]
    report = {
        "name": code.name,
        "N": code.size,
        "n": code.n,
        "inner_products": [e["t"] for e in entries],
        "distance_distribution": entries,
        "distribution_exact": dist.exact,
        "total_mass": float(dist.total_mass()),
        "moments": [{"k": k, "value": moment(code, k)} for k in range(args.degree + 1)],
        "interval_masses": intervals,
        "manifest": _manifest("code-stats", [args.code], args).to_dict(),
    }
    _emit(report, args)
    return EXIT_OK


def _cmd_verify_cert(args) -> int:
    obj = _load_json(args.cert)
    checks: list[dict] = []
    notes: list[str] = []
    ok = True
    if "g" in obj and "T" in obj:
        cert = DDCertificate.from_dict(obj)
        spec = _spec_from_args(args, default_step=1e-5)
        intervals = args.interval or [cert.T]
        for iv in intervals:
            rep = check_sign(cert.g, iv, spec)
            checks.append({**rep.to_dict(), "interval": list(iv),
                           "pass": rep.worst_violation <= args.tol})
        if cert.mode == "full":
            rep = check_dd_pair_condition(cert.h, cert.h0, cert.F, cert.g, cert.T, spec)
            checks.append({**rep.to_dict(), "pass": rep.worst_violation <= args.tol})
            spec3 = DomainSpec(grid_step=args.triple_grid_step, mode=spec.mode)
            rep = check_triple_condition(cert.F, cert.g, cert.T, spec3)
            checks.append({**rep.to_dict(), "pass": rep.worst_violation <= args.tol})
            if cert.F.form == "matrix":
                psd = certificate_valid(cert.F, tol=args.psd_tol)
                checks.append({"condition": "psd", **psd.to_dict(), "pass": psd.valid})
        if cert.mode == "scalar-M":
            notes.append(
                "M is an externally computed constant; only conditions on g are checkable"
            )
    elif "H" in obj:
        cert = TripleCertificate.from_dict(obj)
        psd = certificate_valid(cert, tol=args.psd_tol)
        checks.append({"condition": "psd", **psd.to_dict(), "pass": psd.valid})
    elif "terms" in obj:
        TripleCertificate.from_dict(obj)
        notes.append("explicit-form certificate: no PSD data to check")
    else:
        raise SystemExit2(
            f"{args.cert}: not a recognizable certificate (need 'g'+'T', 'H' or 'terms')"
        )
    ok = all(c.get("pass", True) for c in checks)
    report = {
        "checks": checks,
        "notes": notes,
        "ok": ok,
        "manifest": _manifest("verify-cert", [args.cert], args).to_dict(),
    }
    _emit(report, args)
    return EXIT_OK if ok else EXIT_CERTIFICATE


def _cmd_bound(args) -> int:
    cert = DDCertificate.from_dict(_load_json(args.cert))
    b = dd_bound(cert, args.N)
    tail_ok = bool(np.min(cert.g.coeffs[1:]) >= 0) if cert.g.degree > 0 else True
    report = {
        "N": args.N,
        "M": cert.m_constant(),
        "M_provenance": cert.m_provenance,
        "sdp_bound": b,
        "manifest": _manifest("bound", [args.cert], args).to_dict(),
    }
    if tail_ok:
        lp = lp_rg_lower(cert.g, args.N)
        report["lp_bound"] = lp
        report["sdp_stronger"] = bool(b > lp)
    else:
        report["lp_bound"] = None
        report["lp_note"] = (
            "not applicable: the expansion has negative coefficients above degree 0"
        )
        report["sdp_stronger"] = True
    _emit(report, args)
    return EXIT_OK


def _cmd_kissing_check(args) -> int:
    cert = DDCertificate.from_dict(_load_json(args.cert))
    if cert.mode != "scalar-M":
        raise SystemExit2("kissing-check needs a scalar-M certificate")
    try:
        rep = kissing_check(
            cert.g, cert.M, args.t0, args.mu, args.N,
            starts=args.starts, seed=args.seed, margin=args.margin,
        )
    except PreconditionError as exc:
        report = {
            "error": str(exc),
            "manifest": _manifest("kissing-check", [args.cert], args).to_dict(),
        }
        _emit(report, args)
        return EXIT_CERTIFICATE
    report = {
        **rep.to_dict(),
        "manifest": _manifest("kissing-check", [args.cert], args).to_dict(),
    }
    _emit(report, args)
    return EXIT_CONTRADICTION if rep.verdict == "CONTRADICTION" else EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherecert",
        description="certificate checks and bounds for spherical codes",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expansion at points")
    p.add_argument("expansion", help="expansion JSON file")
    p.add_argument("--t", action="append", type=float, help="evaluation point (repeatable)")
    p.add_argument("--csv-out", help="write a dense [-1,1] sampling as CSV")
    p.add_argument("--samples", type=int, default=2001, help="CSV sample count")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("code-stats", help="distribution, moments and masses of a code")
    p.add_argument("code", help="built-in name (24cell, simplex<n>, cross<n>) or JSON file")
    p.add_argument("--degree", type=int, default=6, help="highest moment order")
    p.add_argument("--interval", action="append", type=_parse_interval,
                   metavar="a,b", help="interval mass to report (repeatable)")
    p.add_argument("--tol", type=float, default=1e-9, help="clustering tolerance")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_code_stats)

    p = sub.add_parser("verify-cert", help="run certificate side-condition checks")
    p.add_argument("cert", help="certificate JSON file")
    p.add_argument("--grid-step", type=float, help="1-d sweep step (default 1e-5)")
    p.add_argument("--triple-grid-step", type=float, default=1e-3,
                   help="3-d sweep step for the triple condition")
    p.add_argument("--mode", choices=["sampled", "certified"], default="sampled")
    p.add_argument("--tol", type=float, default=5e-3,
                   help="violation tolerance (published coefficients are rounded)")
    p.add_argument("--psd-tol", type=float, default=1e-9)
    p.add_argument("--interval", action="append", type=_parse_interval,
                   metavar="a,b", help="sign-check interval (default: the domain T)")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_verify_cert)

    p = sub.add_parser("bound", help="distance-distribution bound B(N) and LP comparison")
    p.add_argument("cert", help="certificate JSON file")
    p.add_argument("--N", type=int, required=True, help="code size")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("kissing-check", help="cap optimum vs B(N) contradiction test")
    p.add_argument("cert", help="scalar-M certificate JSON file")
    p.add_argument("--t0", type=float, required=True, help="cap height, in (-1, -1/2)")
    p.add_argument("--mu", type=int, required=True, help="cap capacity")
    p.add_argument("--N", type=int, required=True, help="hypothetical code size")
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--margin", type=float, default=1e-3)
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_kissing_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(json.dumps({"error": str(exc)}, indent=2))
        return EXIT_VALIDATION
    except (ValueError, KeyError, TypeError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}, indent=2))
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
