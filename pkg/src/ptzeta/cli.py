"""Command-line front end.

Subcommands: eigs, zeta, structure, det, coeffs, verify.  Output is JSON by
default (schema_version tagged, 17 significant digits) or CSV with
``--format csv``.  Exit codes: 0 success, 1 computation failure, 2 input
error.  Angles accept "pi", "pi/2", "3*pi/4" or decimals so the exact case
splits are preserved; nu accepts "p/q" or a decimal.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

SCHEMA_VERSION = 1


class InputError(ValueError):
    pass


def _fmt(x) -> object:
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if x.imag == 0.0:
            return float(f"{x.real:.17g}")
        return {"re": float(f"{x.real:.17g}"), "im": float(f"{x.imag:.17g}")}
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.17g}")
    return x


def parse_angle(text: str):
    """Angle as an exact rational multiple of pi when written that way."""
    from .charfn import Angle
    t = text.strip().lower().replace(" ", "")
    if "pi" in t:
        t = t.replace("*pi", "pi")
        if t == "pi":
            frac = Fraction(1)
        elif t.startswith("pi/"):
            frac = Fraction(1, int(t[3:]))
        elif t.endswith("pi"):
            frac = Fraction(t[:-2])
        elif "pi/" in t:
            k, n = t.split("pi/")
            frac = Fraction(int(k), int(n))
        else:
            raise InputError(f"cannot parse angle {text!r}")
        if not 0 <= frac < 1:
            raise InputError(f"angle {text!r} outside [0, pi)")
        return Angle.from_pi_fraction(frac)
    try:
        return Angle.from_radians(float(t))
    except ValueError as exc:
        raise InputError(f"cannot parse angle {text!r}") from exc


def parse_nu(text: str):
    t = text.strip()
    if "/" in t:
        frac = Fraction(t)
        if not 0 < frac < 1:
            raise InputError(f"nu = {text} outside (0,1)")
        return float(frac), (frac.numerator, frac.denominator)
    v = float(t)
    if not 0.0 <= v < 1.0:
        raise InputError(f"nu = {text} outside [0,1)")
    return v, None


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    try:
        return complex(t)
    except ValueError as exc:
        raise InputError(f"cannot parse complex number {text!r}") from exc


def _params_bc(args):
    from .charfn import CoupledBC, OperatorParams, SeparatedBC
    mu_txt = getattr(args, "mu", "0")
    mu = float(Fraction(mu_txt)) if "/" in mu_txt else float(mu_txt)
    if not 0.0 <= mu < 1.0:
        raise InputError(f"mu = {mu_txt} outside [0,1)")
    nu, nu_exact = parse_nu(args.nu)
    params = OperatorParams(mu=mu, nu=nu, nu_exact=nu_exact)
    if getattr(args, "phi", None) is not None:
        r = [float(x) for x in args.R.split(",")]
        if len(r) != 4:
            raise InputError("--R expects four comma-separated entries")
        bc = CoupledBC(parse_angle(args.phi).value, ((r[0], r[1]), (r[2], r[3])))
    else:
        bc = SeparatedBC(parse_angle(args.alpha), parse_angle(args.beta))
    return params, bc


def _emit(payload: dict, args) -> None:
    payload["schema_version"] = SCHEMA_VERSION
    if getattr(args, "fmt", "json") == "csv":
        flat = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}
        rows = [",".join(str(k) for k in flat), ",".join(str(_fmt(v)) for v in flat.values())]
        for k, v in payload.items():
            if isinstance(v, list):
                rows.append(k)
                rows.extend(",".join(str(_fmt(x)) for x in np.atleast_1d(item)) if isinstance(item, (list, tuple))
                            else str(_fmt(item)) for item in v)
        print("\n".join(rows))
    else:
        print(json.dumps(payload, default=_fmt, indent=2))


def cmd_eigs(args) -> int:
    from .spectrum import NotClosedFormError, closed_form_spectrum, find_eigenvalues
    params, bc = _params_bc(args)
    if args.window:
        lo, hi = (float(x) for x in args.window.split(":"))
        spec = find_eigenvalues(params, bc, (lo, hi))
    else:
        try:
            spec = closed_form_spectrum(params, bc, args.count)
        except NotClosedFormError:
            hi = (2.0 * (args.count + 2)) ** 2
            spec = find_eigenvalues(params, bc, (-2500.0, hi))
    ev = list(spec.eigenvalues)[: args.count if not args.window else len(spec.eigenvalues)]
    mults = list(spec.multiplicities)[: len(ev)]
    _emit({"eigenvalues": [_fmt(e) for e in ev],
           "multiplicities": mults,
           "method": spec.method,
           "residuals": [_fmt(r) for r in spec.residuals[: len(ev)]]}, args)
    return 0


def cmd_zeta(args) -> int:
    from .spectrum import NotClosedFormError
    from .zeta import (SingularityProximityError, zeta_closed_form,
                       zeta_continued, zeta_continued_beta0, zeta_direct)
    params, bc = _params_bc(args)
    s = parse_complex(args.s)
    results = {}
    try:
        results["closed_form"] = zeta_closed_form(params, bc, s)
    except (NotClosedFormError, SingularityProximityError):
        pass
    if s.real > 0.55:
        try:
            results["direct"] = zeta_direct(params, bc, s)
        except Exception:
            pass
    if params.mu == 0.0 and hasattr(bc, "alpha"):
        fn = zeta_continued_beta0 if bc.beta.is_zero else zeta_continued
        try:
            results["continuation"] = fn(params, bc, s)
        except SingularityProximityError as exc:
            if not results:
                raise
            results["continuation_note"] = str(exc)
        except Exception:
            if not results:
                raise
    if not results:
        raise RuntimeError("no evaluation route applies to this extension at this s")
    payload = {}
    vals = []
    for k, v in results.items():
        if hasattr(v, "value"):
            payload[k] = {"value": _fmt(v.value), "err": _fmt(v.err_estimate),
                          "method": v.method}
            vals.append(v.value)
        else:
            payload[k] = v
    if len(vals) > 1:
        payload["agreement"] = _fmt(max(abs(a - vals[0]) for a in vals[1:]))
    payload["s"] = _fmt(s)
    _emit(payload, args)
    return 0


def cmd_structure(args) -> int:
    from .zeta import structure_report
    params, bc = _params_bc(args)
    rep = structure_report(params, bc, N=args.N)
    _emit({
        "poles": [{"location": str(loc), "residue": _fmt(res), "status": st}
                  for loc, res, st in rep.poles],
        "branch_points": [{"location": str(loc), "kind": kind, "status": st}
                          for loc, kind, st in rep.branch_points],
        "notes": rep.notes,
    }, args)
    return 0


def cmd_det(args) -> int:
    from .determinant import det_friedrichs, det_regularized
    params, bc = _params_bc(args)
    if params.mu != 0.0 or (bc.alpha.is_zero and bc.beta.is_zero):
        r = det_friedrichs(params.mu, params.nu)
    else:
        r = det_regularized(params.nu, bc.alpha.value, bc.beta.value)
    _emit({"zeta_prime_zero": _fmt(r.zeta_prime_zero), "det": _fmt(r.det),
           "regularized": r.regularized, "m0": r.m0,
           "F_limit_constant": _fmt(r.F_limit_constant)}, args)
    return 0


def cmd_coeffs(args) -> int:
    from .asymptotics import coefficient_table_csv
    p = q = beta = None
    if args.nu:
        nu, nu_exact = parse_nu(args.nu)
        if nu_exact:
            p, q = nu_exact
    if args.beta:
        beta = parse_angle(args.beta).value
    table = coefficient_table_csv(args.kind, args.m, p=p, q=q, beta=beta)
    sys.stdout.write(table)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite
    results = run_suite(args.suite)
    ok = all(r.passed for r in results)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail} ({r.seconds:.1f}s)")
    if args.fmt == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION,
                          "passed": ok,
                          "criteria": [{"name": r.name, "passed": r.passed,
                                        "detail": r.detail, "seconds": r.seconds}
                                       for r in results]}, default=_fmt, indent=2))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ptzeta", description=__doc__)
    ap.add_argument("--config", help="JSON file with defaults for any flag")
    ap.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_problem_flags(p, with_s=False):
        p.add_argument("--mu", default="0")
        p.add_argument("--nu", required=True)
        p.add_argument("--alpha", default="0")
        p.add_argument("--beta", default="0")
        p.add_argument("--phi", default=None, help="coupled phase (enables coupled mode)")
        p.add_argument("--R", default=None, help="coupled matrix a,b,c,d")
        if with_s:
            p.add_argument("--s", required=True)

    p = sub.add_parser("eigs", help="eigenvalues of an extension")
    add_problem_flags(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--window", default=None, help="lambda window lo:hi")
    p.set_defaults(fn=cmd_eigs)

    p = sub.add_parser("zeta", help="spectral zeta value by every applicable route")
    add_problem_flags(p, with_s=True)
    p.set_defaults(fn=cmd_zeta)

    p = sub.add_parser("structure", help="pole/branch-point catalog")
    add_problem_flags(p)
    p.add_argument("--N", type=int, default=6)
    p.set_defaults(fn=cmd_structure)

    p = sub.add_parser("det", help="(regularized) functional determinant")
    add_problem_flags(p)
    p.set_defaults(fn=cmd_det)

    p = sub.add_parser("coeffs", help="exact/numeric coefficient tables (CSV)")
    p.add_argument("--kind", choices=("R", "G", "E", "S"), default="R")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--nu", default=None)
    p.add_argument("--beta", default=None)
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", default="all")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            defaults = json.load(fh)
        for k, v in defaults.items():
            if getattr(args, k, None) in (None, ap.get_default(k)):
                setattr(args, k, v)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        from .charfn import DomainError
        if isinstance(exc, DomainError) and "outside" in str(exc):
            print(f"input error: {exc}", file=sys.stderr)
            return 2
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
