"""Acceptance suite: one callable per criterion, each returning a
pass/fail record with a one-line detail string.

The functions are consumed both by tests/test_acceptance.py (one test per
criterion) and by the CLI ``verify`` subcommand.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import asymptotics as asy
from . import determinant as dt
from . import fdoracle
from . import spectrum as sp
from . import zeta as zt
from .charfn import CoupledBC, OperatorParams, SeparatedBC, characteristic_mu0_explicit
from .specialfn import RatPoly, bernoulli_polynomial, hurwitz_zeta


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(fn):
    def wrapper() -> CriterionResult:
        t0 = time.time()
        name, passed, detail = fn()
        return CriterionResult(name, passed, detail, time.time() - t0)
    wrapper.__name__ = fn.__name__
    return wrapper


@_timed
def criterion_01_closed_form_spectra():
    worst = 0.0
    t0 = time.time()
    for mu in (0.1, 0.5, 0.9):
        for nu in (0.1, 0.5, 0.9):
            params = OperatorParams(mu, nu)
            bc = SeparatedBC.from_pi_fractions(0, 0)
            exact = [(2 * n + 1 + mu + nu) ** 2 for n in range(20)]
            spec = sp.find_eigenvalues(params, bc, (0.0, exact[-1] + 1.0))
            got = spec.with_multiplicity()[:20]
            worst = max(worst, max(abs(g - e) / e for g, e in zip(got, exact)))
    elapsed = time.time() - t0
    ok = worst < 1e-10 and elapsed < 10.0
    return ("1 closed-form spectra (9 grid points, 20 eigenvalues)", ok,
            f"worst rel err {worst:.2e}, runtime {elapsed:.1f}s (cap 10s)")


@_timed
def criterion_02_potential_independence():
    expected = [1.0, 9.0, 25.0, 49.0, 81.0]
    worst = 0.0
    for mu in (0.2, 0.5, 0.8):
        params = OperatorParams(mu, mu)
        cases = [SeparatedBC.from_pi_fractions(0, "1/2"),
                 SeparatedBC.from_pi_fractions("1/2", 0),
                 CoupledBC(math.pi / 2, ((2.0, 0.0), (0.0, 0.5)))]
        for bc in cases:
            spec = sp.find_eigenvalues(params, bc, (-10.0, 82.0))
            got = spec.with_multiplicity()[:5]
            worst = max(worst, max(abs(g - e) for g, e in zip(got, expected)))
    ok = worst < 1e-10
    return ("2 potential-independent spectra {1,9,25,49,81}", ok,
            f"worst abs err {worst:.2e}")


@_timed
def criterion_03_zeta_closed_forms():
    families = [
        (OperatorParams(0.3, 0.7), SeparatedBC.from_pi_fractions(0, 0)),
        (OperatorParams(0.0, 0.5), SeparatedBC.from_pi_fractions(0, 0)),
        (OperatorParams(0.2, 0.6), SeparatedBC.from_pi_fractions(0, "1/2")),
        (OperatorParams(0.6, 0.2), SeparatedBC.from_pi_fractions("1/2", 0)),
        (OperatorParams(0.3, 0.4), SeparatedBC.from_pi_fractions("1/2", "1/2")),
        (OperatorParams(0.5, 0.5), SeparatedBC.from_pi_fractions("1/2", "1/2")),
        (OperatorParams(0.4, 0.4), SeparatedBC.from_pi_fractions(0, "1/2")),
        (OperatorParams(0.4, 0.4), CoupledBC(math.pi / 2, ((2.0, 0.0), (0.0, 0.5)))),
    ]
    worst = 0.0
    for params, bc in families:
        for s in (0.75, 1.0, 1.5, 2.0):
            zd = zt.zeta_direct(params, bc, s)
            zc = zt.zeta_closed_form(params, bc, s)
            worst = max(worst, abs(zd.value - zc.value))
    ok = worst < 1e-8
    return ("3 direct sums match Hurwitz/Riemann closed forms", ok,
            f"worst |direct - closed| {worst:.2e}")


def _grid_extensions():
    for (p, q) in ((1, 2), (1, 3), (2, 3)):
        params = OperatorParams.from_rational_nu(0.0, p, q)
        for af in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
            for bf in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
                yield params, SeparatedBC.from_pi_fractions(af, bf)


def _continued(params, bc, s, config=zt.DEFAULT_CONFIG):
    fn = zt.zeta_continued_beta0 if bc.beta.is_zero else zt.zeta_continued
    return fn(params, bc, s, config)


@_timed
def criterion_04_continuation_overlap():
    t0 = time.time()
    worst = 0.0
    for params, bc in _grid_extensions():
        for s in (0.6, 0.75, 0.9):
            zc = _continued(params, bc, s)
            zd = zt.zeta_direct(params, bc, s)
            worst = max(worst, abs(zc.value - zd.value))
    elapsed = time.time() - t0
    ok = worst < 1e-6 and elapsed < 60.0
    return ("4 continuation agrees with direct sums (27 extensions x 3 s)", ok,
            f"worst {worst:.2e}, runtime {elapsed:.0f}s (cap 60s)")


@_timed
def criterion_05_psi_invariance():
    worst = 0.0
    for params, bc in _grid_extensions():
        for s in (0.6, 0.75, 0.9):
            vals = [_continued(params, bc, s, zt.ContinuationConfig(psi=psi)).value
                    for psi in (1.7, 2.2, 2.7)]
            worst = max(worst, max(abs(v - vals[0]) for v in vals[1:]))
    ok = worst < 1e-6
    return ("5 contour-angle invariance (psi in {1.7, 2.2, 2.7})", ok,
            f"worst spread {worst:.2e}")


@_timed
def criterion_06_universal_residue():
    worst = 0.0
    for params, bc in _grid_extensions():
        def half_avg(d):
            zp = _continued(params, bc, 0.5 + d).value
            zm = _continued(params, bc, 0.5 - d).value
            return 0.5 * (d * zp + (-d) * zm)
        r = (4.0 * half_avg(0.015) - half_avg(0.03)) / 3.0
        worst = max(worst, abs(r - 0.25))
    ok = worst < 1e-6
    return ("6 residue 1/4 at s = 1/2 for every grid extension", ok,
            f"worst |res - 1/4| {worst:.2e}")


@_timed
def criterion_07_coefficient_exactness():
    nu = RatPoly.x()
    printed_l0 = [
        Fraction(-1, 6) * nu * (nu * nu - 1),
        Fraction(-1, 60) * nu * (nu * nu - 1) * (3 * nu * nu - 7),
        Fraction(-1, 126) * nu * (nu * nu - 1) * (3 * nu**4 - 18 * nu * nu + 31),
    ]
    # the log-graded columns implied by the printed digamma expansion (the
    # printed table displays carry the documented C_k sign slip there)
    expected = {
        (1, 1): Fraction(1, 6) * (1 - 3 * nu**2),
        (2, 1): Fraction(1, 60) * RatPoly([Fraction(-7), 0, Fraction(30), 0, Fraction(-15)]),
        (2, 2): Fraction(-1, 72) * (1 - 3 * nu**2) ** 2,
        (3, 3): Fraction(1, 648) * (1 - 3 * nu**2) ** 3,
    }
    ok = True
    details = []
    for m in (1, 2, 3):
        pl = asy.R_polynomials(m)
        if pl[0] != printed_l0[m - 1]:
            ok = False
            details.append(f"p_{m},0 mismatch")
    for (m, l), want in expected.items():
        if asy.R_polynomials(m)[l] != want:
            ok = False
            details.append(f"p_{m},{l} mismatch")
    # the printed p_{1,1} display differs from the recurrence value by the
    # C_1 flip exactly (the end-to-end fidelity gate fixes the sign)
    flip_gap = asy.R_polynomials(1)[1] - Fraction(1, 6) * (5 - 3 * nu**2)
    if flip_gap != RatPoly.const(Fraction(-2, 3)):
        ok = False
        details.append("printed-table discrepancy is not the documented C_1 flip")
    for m in range(1, 11):
        lhs = asy.R_polynomials(m)[0](-1 * nu)
        rhs = Fraction(2 ** (2 * m), m * (2 * m + 1)) \
            * bernoulli_polynomial(2 * m + 1)(Fraction(1, 2) * (1 + nu))
        if lhs != rhs:
            ok = False
            details.append(f"odd-Bernoulli identity fails at m={m}")
    return ("7 exact coefficient tables and odd-Bernoulli identity (m <= 10)", ok,
            "; ".join(details) if details else "exact rational equality holds")


@_timed
def criterion_08_asymptotic_fidelity():
    samples = [((1, 2), math.pi / 3, math.pi / 4),
               ((1, 3), 2.0, 3.0),
               ((2, 3), 1.0, 2.0)]
    psi = 3 * math.pi / 4
    worst_slope = -np.inf
    for (p, q), alpha, beta in samples:
        nu = p / q
        for n in (1, 2, 3):
            a = asy.assemble_L_asy(alpha, beta, 0, n, nu_exact=(p, q))
            errs = []
            for t in (1e2, 1e3, 1e4):
                z = t * np.exp(1j * psi)
                d = np.log(characteristic_mu0_explicit(nu, alpha, beta, z)) - a.value(z)
                d -= 2j * np.pi * np.round(d.imag / (2 * np.pi))
                errs.append(max(abs(d), 1e-16))
            slopes = [math.log10(errs[i + 1] / errs[i]) for i in range(2)]
            # allow the second leg to flatten at the float floor
            leg = slopes[0] if errs[1] > 1e-13 else -(n + 1)
            worst_slope = max(worst_slope, leg + (n + 1))
    ok = worst_slope <= 0.15
    return ("8 ln F matches the truncated expansion at slope -(N+1)", ok,
            f"worst slope excess {worst_slope:+.2f} (tolerance +0.15)")


@_timed
def criterion_09_branch_point_signature():
    h = 3e-6
    cfg = zt.ContinuationConfig(proximity_guard=1e-9, quad_abs_tol=1e-12,
                                quad_rel_tol=1e-12)
    params = OperatorParams.from_rational_nu(0.0, 1, 2)
    results = []
    for af, bf in ((Fraction(1, 3), Fraction(1, 4)), (Fraction(0), Fraction(1, 4))):
        bc = SeparatedBC.from_pi_fractions(af, bf)
        a_zero = bc.alpha.is_zero

        def zreg(s):
            v = _continued(params, bc, s, cfg).value
            return v + (s * np.log(complex(s)) if not a_zero else 0.0)

        d_plus = (zreg(2 * h) - zreg(h)) / h
        d_minus = (zreg(-h) - zreg(-2 * h)) / h
        results.append(abs(d_plus - d_minus))
    ok = all(r < 1e-3 for r in results)
    return ("9 zeta + s ln s is differentiable at 0 (alpha != 0 and alpha = 0)", ok,
            f"quotient gaps {results[0]:.2e} (branch) / {results[1]:.2e} (plain)")


@_timed
def criterion_10_determinants():
    details = []
    worst_route = max(abs(dt.det_dirichlet_wall_closed_form(nu / 10)
                          - dt.det_dirichlet_wall_hurwitz_route(nu / 10))
                      for nu in range(1, 10))
    ok = worst_route < 1e-10
    details.append(f"Gamma vs Hurwitz route {worst_route:.1e}")
    r1 = dt.det_friedrichs(0.5, 0.5)
    r2 = dt.det_friedrichs(0.0, 0.0)
    anchors = max(abs(r1.det - math.pi), abs(r2.det - 2.0))
    ok = ok and anchors < 1e-10
    details.append(f"Friedrichs anchors {anchors:.1e}")

    cfg = zt.ContinuationConfig(proximity_guard=1e-9)
    samples = [((1, 2), Fraction(1, 3), Fraction(1, 4)),
               ((1, 3), Fraction(1, 2), Fraction(1, 4)),
               ((2, 3), Fraction(1, 4), Fraction(1, 2)),
               ((1, 2), Fraction(1, 3), Fraction(0)),
               ((1, 2), Fraction(0), Fraction(1, 4)),
               ((2, 3), Fraction(2, 3), Fraction(1, 3))]
    worst = 0.0
    for (p, q), af, bf in samples:
        params = OperatorParams.from_rational_nu(0.0, p, q)
        bc = SeparatedBC.from_pi_fractions(af, bf)
        closed = dt.det_regularized(p / q, bc.alpha.value, bc.beta.value).zeta_prime_zero

        def zreg(s):
            v = _continued(params, bc, s, cfg).value
            return v + (s * np.log(complex(s)) if not bc.alpha.is_zero else 0.0)

        def diff(hh):
            return (zreg(hh) - zreg(-hh)) / (2 * hh)

        numeric = 2 * diff(5e-4) - diff(1e-3)
        gap = closed - numeric
        gap -= 2j * np.pi * np.round(gap.imag / (2 * np.pi))
        worst = max(worst, abs(gap))
    ok = ok and worst < 1e-4
    details.append(f"closed vs numeric zeta_reg'(0) {worst:.1e} (mod 2 pi i)")
    return ("10 determinant identities and derivative routes", ok, "; ".join(details))


def _expected_structure(p, q, af: Fraction, bf: Fraction, n_branch: int = 6):
    """Expected pole/branch locations per the structure classification."""
    poles = {Fraction(1, 2)}
    branch = set()
    if bf == Fraction(1, 2) and af == 0:
        return poles, branch
    if af != 0:
        branch |= {Fraction(-j) for j in range(n_branch + 1)}
    if bf not in (Fraction(0), Fraction(1, 2)):
        poles |= {Fraction(-m * p, q) for m in range(1, q)}
        for m in range(q, q * 7 - p):
            if m % p == 0 and m // p <= q - 1:
                continue
            if asy.diophantine_set(m, p, q).is_empty:
                continue
            loc = Fraction(-(m + p), q)
            if af == 0:
                if loc.denominator != 1:
                    poles.add(loc)
            else:
                branch.add(loc)
    return poles, branch


@_timed
def criterion_11_structure_catalog():
    ok = True
    details = []
    for (p, q) in ((1, 2), (1, 3), (2, 3)):
        params = OperatorParams.from_rational_nu(0.0, p, q)
        for af in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
            for bf in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
                bc = SeparatedBC.from_pi_fractions(af, bf)
                rep = zt.structure_report(params, bc, N=6)
                got_poles = {loc for loc, _, _ in rep.poles}
                got_branch = {loc for loc, _, _ in rep.branch_points}
                want_poles, want_branch = _expected_structure(p, q, af, bf)
                if got_poles != want_poles or got_branch != want_branch:
                    ok = False
                    details.append(f"(p/q={p}/{q}, a={af}pi, b={bf}pi) catalog mismatch")
                for loc, res, status in rep.poles:
                    if status == "generic" and res == 0:
                        ok = False
                        details.append(f"generic pole at {loc} lacks a nonzero witness")
    # residues of the catalog agree with contour residues on a sample
    params = OperatorParams.from_rational_nu(0.0, 1, 3)
    bc = SeparatedBC.from_pi_fractions(0, Fraction(1, 4))
    rep = zt.structure_report(params, bc, N=6)
    cat = {loc: res for loc, res, _ in rep.poles}
    for loc in (Fraction(-1, 3), Fraction(-2, 3)):
        ev = lambda s: _continued(params, bc, s).value
        num, consistent = zt.residue_at(ev, complex(float(loc)), radius=0.04, nodes=16)
        if not consistent or abs(num - cat[loc]) > 1e-6:
            ok = False
            details.append(f"residue at {loc}: catalog {cat[loc]:.3e} vs contour {num:.3e}")
    return ("11 singularity catalog matches the case split (with witnesses)", ok,
            "; ".join(details) if details else "catalog and contour residues agree")


@_timed
def criterion_12_shift_relation():
    worst = 0.0
    for s in (1.0, 1.5):
        shifted = zt.shifted_zeta(zt.legendre_epstein_zeta, 4.0, 1.0, 1, s, K=30,
                                  lambda1=2.0)
        target = 2.0 ** (-2 * s) * hurwitz_zeta(2 * s, 0.5)
        worst = max(worst, abs(shifted.value - target))
    ok = worst < 1e-6
    return ("12 affine spectral shift reproduces the Hurwitz form", ok,
            f"worst {worst:.2e} at K=30")


@_timed
def criterion_13_oracle_concordance():
    samples = [(1 / 3, 1.0, 2.0), (0.5, 0.9, 0.6), (2 / 3, 2.2, 1.2),
               (0.4, 2.0, 1.0), (0.6, 0.5, 1.8), (0.5, 2.5, 0.7)]
    worst = 0.0
    for nu, alpha, beta in samples:
        params = OperatorParams(0.0, nu)
        bc = SeparatedBC.from_radians(alpha, beta)
        oc = fdoracle.oracle_eigenvalues(params, bc, 5)
        rf = sp.find_eigenvalues(params, bc, (-120.0, oc.eigenvalues[-1] + 6.0))
        got = rf.with_multiplicity()[:5]
        worst = max(worst, max(abs(a - b) for a, b in zip(oc.eigenvalues, got)))
    ok = worst < 1e-4
    return ("13 finite-difference oracle concordance (6 samples, 5 eigenvalues)", ok,
            f"worst abs diff {worst:.2e}")


ALL_CRITERIA = [
    criterion_01_closed_form_spectra,
    criterion_02_potential_independence,
    criterion_03_zeta_closed_forms,
    criterion_04_continuation_overlap,
    criterion_05_psi_invariance,
    criterion_06_universal_residue,
    criterion_07_coefficient_exactness,
    criterion_08_asymptotic_fidelity,
    criterion_09_branch_point_signature,
    criterion_10_determinants,
    criterion_11_structure_catalog,
    criterion_12_shift_relation,
    criterion_13_oracle_concordance,
]


def run_suite(selection: str = "all") -> list[CriterionResult]:
    if selection == "all":
        chosen = ALL_CRITERIA
    else:
        wanted = {int(tok) for tok in selection.split(",")}
        chosen = [fn for i, fn in enumerate(ALL_CRITERIA, start=1) if i in wanted]
        if not chosen:
            raise ValueError(f"no criteria selected by {selection!r}")
    return [fn() for fn in chosen]
