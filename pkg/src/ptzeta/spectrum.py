"""Eigenvalues as real zeros of the characteristic function.

Eigenvalues grow like (2n + c)^2, so scans run on a uniform grid in
sqrt(lambda) (step 0.1), which guarantees separation for every extension;
zeros are refined by vectorized bisection plus a secant polish.  Tangential
(double) zeros, which occur only for coupled data, are picked up from local
minima of |F| with a derivative-based refinement.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .charfn import (
    BoundaryCondition,
    CoupledBC,
    DomainError,
    OperatorParams,
    SeparatedBC,
    characteristic,
    characteristic_dz,
)


class NotClosedFormError(ValueError):
    """The extension does not belong to a closed-form spectral family."""


class BracketingError(RuntimeError):
    """Suspicious subintervals where the scan could not certify its zeros."""


@dataclass(frozen=True)
class Spectrum:
    """Strictly increasing eigenvalues with multiplicities and residuals."""

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    params: OperatorParams
    bc: BoundaryCondition
    method: str  # closed-form | root-find | oracle
    residuals: tuple[float, ...] = ()

    def __post_init__(self):
        ev = self.eigenvalues
        if any(ev[i] >= ev[i + 1] for i in range(len(ev) - 1)):
            raise ValueError("eigenvalues must be strictly increasing")

    def with_multiplicity(self) -> np.ndarray:
        """Eigenvalues repeated according to multiplicity."""
        return np.repeat(np.asarray(self.eigenvalues), np.asarray(self.multiplicities))

    def __len__(self) -> int:
        return len(self.eigenvalues)


# ---------------------------------------------------------------------------
# closed-form families
# ---------------------------------------------------------------------------

def closed_form_family(params: OperatorParams, bc: BoundaryCondition) -> Optional[dict]:
    """Identify a closed-form family; returns its offset data or None.

    Families: (0,0); (0,pi/2) for nu>0; (pi/2,0) for mu>0; (pi/2,pi/2) for
    mu,nu>0; and the potential-independent mu=nu extensions (0,pi/2),
    (pi/2,0) and coupled phase pi/2 with diagonal R, whose spectrum is the
    odd squares.
    """
    mu, nu = params.mu, params.nu
    if isinstance(bc, CoupledBC):
        if mu == nu and mu > 0.0 and bc.is_diagonal and abs(bc.phi - math.pi / 2) < 1e-15:
            return {"offset": 1.0, "kind": "odd-squares"}
        return None
    a, b = bc.alpha, bc.beta
    if a.is_zero and b.is_zero:
        return {"offset": 1.0 + mu + nu, "kind": "hurwitz"}
    if a.is_zero and b.is_half_pi and nu > 0.0:
        return {"offset": 1.0 + mu - nu, "kind": "hurwitz"}
    if a.is_half_pi and b.is_zero and mu > 0.0:
        return {"offset": 1.0 - mu + nu, "kind": "hurwitz"}
    if a.is_half_pi and b.is_half_pi and mu > 0.0 and nu > 0.0:
        return {"offset": 1.0 - mu - nu, "kind": "hurwitz"}
    return None


def closed_form_spectrum(params: OperatorParams, bc: BoundaryCondition,
                         count: int) -> Spectrum:
    """Exact spectrum {(2n + offset)^2} for the closed-form families."""
    fam = closed_form_family(params, bc)
    if fam is None:
        raise NotClosedFormError(f"no closed-form spectrum for {bc}")
    off = fam["offset"]
    ev = [(2.0 * n + off) ** 2 for n in range(count)]
    return Spectrum(tuple(ev), (1,) * len(ev), params, bc, "closed-form",
                    residuals=(0.0,) * len(ev))


def eigenvalue_asymptotic_seed(params: OperatorParams, bc: BoundaryCondition,
                               n: int) -> float:
    """Approximate location of the n-th eigenvalue, for bracket seeding."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    fam = closed_form_family(params, bc)
    if fam is not None:
        return (2.0 * n + fam["offset"]) ** 2
    return (2.0 * n + 1.0) ** 2


def seed_bracket(params: OperatorParams, bc: BoundaryCondition, n: int) -> tuple[float, float]:
    """Window around the seed; the n = 0 window extends below zero because the
    lowest eigenvalue of a non-Friedrichs extension may be negative."""
    c = eigenvalue_asymptotic_seed(params, bc, n)
    half = 2.0 * math.sqrt(max(c, 1.0)) + 2.0
    lo = c - half
    if n == 0:
        lo = min(lo, -25.0)
    return (lo, c + half)


# ---------------------------------------------------------------------------
# root scanning
# ---------------------------------------------------------------------------

def _real_char_fn(params: OperatorParams, bc: BoundaryCondition):
    """A real-valued function of real lambda whose zeros are the eigenvalues."""
    if isinstance(bc, CoupledBC):
        phase = np.exp(-1j * bc.phi)

        def g(lam):
            return np.real(phase * characteristic(params, bc, lam))
    else:
        def g(lam):
            v = characteristic(params, bc, lam)
            return np.real(v)
    return g


def _bisect_vec(g, lo: np.ndarray, hi: np.ndarray, iters: int = 48) -> np.ndarray:
    flo = g(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fmid = g(mid)
        left = np.sign(fmid) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fmid, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def find_eigenvalues(params: OperatorParams, bc: BoundaryCondition,
                     window: tuple[float, float], grid_step: float = 0.1,
                     detect_double: bool = True) -> Spectrum:
    """All zeros of F in [lambda_lo, lambda_hi], refined to |dl| < 1e-10 max(1, |l|).

    Scans uniformly in sqrt(lambda) on the positive side and in
    r = sqrt(-lambda) on the negative side.  Double zeros (tangencies of the
    real-valued characteristic) are detected from un-bracketed local minima.
    """
    lam_lo, lam_hi = window
    if not lam_lo < lam_hi:
        raise DomainError("window must be a nonempty interval")
    g = _real_char_fn(params, bc)
    roots: list[float] = []
    mults: list[int] = []

    def add_interval_roots(xs: np.ndarray, to_lambda):
        vals = g(to_lambda(xs))
        sgn = np.sign(vals)
        idx = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
        if len(idx):
            lo, hi = xs[idx], xs[idx + 1]
            xr = _bisect_vec(lambda x: g(to_lambda(x)), lo, hi)
            for x in np.atleast_1d(xr):
                roots.append(float(to_lambda(x)))
                mults.append(1)
        # exact zeros sitting on grid nodes
        on_node = np.nonzero(vals == 0.0)[0]
        for i in on_node:
            lam = float(to_lambda(xs[i]))
            if not any(abs(lam - r) < 1e-8 * max(1.0, abs(lam)) for r in roots):
                roots.append(lam)
                mults.append(1)
        return xs, vals, sgn

    # positive part: uniform in sqrt(lambda)
    if lam_hi > 0:
        x_lo = math.sqrt(max(lam_lo, 0.0))
        x_hi = math.sqrt(lam_hi)
        n = max(8, int(math.ceil((x_hi - x_lo) / grid_step)) + 1)
        xs = np.linspace(max(x_lo, 1e-8), x_hi, n)
        xs, vals, sgn = add_interval_roots(xs, lambda x: x * x)
        if detect_double and isinstance(bc, CoupledBC):
            _detect_tangencies(params, bc, g, xs, vals, roots, mults)

    # negative part: uniform in sqrt(-lambda)
    if lam_lo < 0:
        r_hi = math.sqrt(-lam_lo)
        n = max(8, int(math.ceil(r_hi / 0.05)) + 1)
        rs = np.linspace(1e-8, r_hi, n)
        add_interval_roots(rs, lambda r: -(r * r))

    # a zero eigenvalue never produces a sign change on the scan grids
    if lam_lo <= 0.0 <= lam_hi:
        from .charfn import zero_mode_multiplicity
        m0 = zero_mode_multiplicity(params, bc)
        if m0 > 0:
            roots.append(0.0)
            mults.append(m0)

    # polish (vectorized Newton for the simple roots) and validate
    roots_arr = np.asarray(roots, dtype=float)
    mults_arr = np.asarray(mults, dtype=int)
    simple = (mults_arr == 1) & (roots_arr != 0.0)
    if np.any(simple):
        lam = roots_arr[simple]
        phase = np.exp(-1j * bc.phi) if isinstance(bc, CoupledBC) else 1.0
        for _ in range(3):
            f, df = characteristic_dz(params, bc, lam)
            step = np.real((phase * f) / (phase * df))
            step = np.where(np.isfinite(step), step, 0.0)
            lam = lam - step
            if np.max(np.abs(step) / np.maximum(1.0, np.abs(lam))) < 1e-13:
                break
        roots_arr[simple] = lam
    for i in np.nonzero(mults_arr > 1)[0]:
        if roots_arr[i] != 0.0:
            roots_arr[i] = _polish(params, bc, roots_arr[i], int(mults_arr[i]))

    order = np.argsort(roots_arr)
    evs, ems = [], []
    for i in order:
        lam, m = float(roots_arr[i]), int(mults_arr[i])
        if not (lam_lo - 1e-9 <= lam <= lam_hi + 1e-9):
            continue
        if evs and abs(lam - evs[-1]) < 1e-9 * max(1.0, abs(lam)):
            ems[-1] = max(ems[-1], m)
            continue
        evs.append(lam)
        ems.append(m)
    res_arr = np.abs(np.atleast_1d(characteristic(params, bc, np.asarray(evs)))) \
        if evs else np.array([])
    return Spectrum(tuple(evs), tuple(ems), params, bc, "root-find",
                    tuple(float(r) for r in res_arr))


def _polish(params: OperatorParams, bc: BoundaryCondition, lam: float, mult: int) -> float:
    """Newton polish on F (or on F' for a double zero)."""
    for _ in range(3):
        f, df = characteristic_dz(params, bc, lam)
        if isinstance(bc, CoupledBC):
            phase = np.exp(-1j * bc.phi)
            f, df = phase * f, phase * df
        if mult == 1:
            if df == 0:
                break
            step = (f / df).real
        else:
            _, d2f = _second_derivative(params, bc, lam)
            if d2f == 0:
                break
            step = (df / d2f).real
        if not math.isfinite(step):
            break
        lam = lam - step
        if abs(step) < 1e-13 * max(1.0, abs(lam)):
            break
    return lam


def _second_derivative(params: OperatorParams, bc: BoundaryCondition, lam: float,
                       h: float | None = None):
    h = h or 1e-4 * max(1.0, abs(lam)) ** 0.5
    _, d1 = characteristic_dz(params, bc, lam + h)
    _, d0 = characteristic_dz(params, bc, lam - h)
    if isinstance(bc, CoupledBC):
        phase = np.exp(-1j * bc.phi)
        d1, d0 = phase * d1, phase * d0
    return None, (d1 - d0) / (2 * h)


def _detect_tangencies(params, bc, g, xs, vals, roots, mults):
    """Local minima of |F| on the grid without a sign change: candidate double zeros."""
    absv = np.abs(vals)
    for i in range(1, len(xs) - 1):
        if not (absv[i] < absv[i - 1] and absv[i] < absv[i + 1]):
            continue
        window = absv[max(0, i - 10): i + 10]
        scale = float(np.max(window)) if len(window) else 1.0
        if absv[i] > 0.05 * scale:
            continue
        if np.sign(vals[i - 1]) != np.sign(vals[i + 1]):
            continue  # a plain sign change handles this one
        lam0 = float(xs[i] ** 2)
        # refine on the derivative, then confirm that F itself nearly vanishes
        lam = lam0
        for _ in range(60):
            f, df = characteristic_dz(params, bc, lam)
            phase = np.exp(-1j * getattr(bc, "phi", 0.0))
            df = (phase * df).real
            _, d2 = _second_derivative(params, bc, lam)
            d2 = (phase * d2).real if not isinstance(d2, float) else d2
            if d2 == 0:
                break
            step = df / d2
            lam -= step
            if abs(step) < 1e-12 * max(1.0, abs(lam)):
                break
        f = complex(characteristic(params, bc, lam))
        if abs(f) < 1e-7 * max(scale, 1e-12):
            if not any(abs(lam - r) < 1e-8 * max(1.0, abs(lam)) for r in roots):
                roots.append(lam)
                mults.append(2)


def weyl_count_error(spec: Spectrum, lam_max: float) -> float:
    """Deviation of the counting function from sqrt(lambda)/2 at lam_max."""
    count = int(np.sum([m for e, m in zip(spec.eigenvalues, spec.multiplicities)
                        if 0 < e <= lam_max]))
    return count - 0.5 * math.sqrt(lam_max)
