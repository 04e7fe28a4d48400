"""The Poschl-Teller operator: parameters, self-adjoint boundary data,
fundamental solutions, generalized boundary values at pi/2, and
characteristic functions whose zeros are the eigenvalues.

The potential is(mu^2 - 1/4)/sin^2 x + (nu^2 - 1/4)/cos^2 x on (0, pi/2)
with mu, nu in [0, 1), which keeps the problem quasi-regular: every
self-adjoint extension is fixed by separated angles (alpha, beta) or by a
coupled pair (phi, R) with R in SL(2, R).

All closed-form boundary values are ratios of Gamma/digamma expressions in
w = z^(1/2) (branch Im w >= 0).  Near the positive real z-axis these ratios
pair a digamma pole with a 1/Gamma zero; evaluation is therefore routed
through reflection-stabilized combinations that stay finite there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from scipy import special as _sp

from .specialfn import (
    EULER_GAMMA,
    ConvergenceError,
    DomainError,
    GammaPoleError,
    hyp2f1_series,
    trigamma,
)

_LN_PI = math.log(math.pi)


# ---------------------------------------------------------------------------
# parameters and boundary conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorParams:
    """Potential strengths (mu, nu) in [0,1)^2, with optional exact rational nu."""

    mu: float
    nu: float
    nu_exact: Optional[tuple[int, int]] = None  # reduced fraction (p, q)

    def __post_init__(self):
        if not (0.0 <= self.mu < 1.0 and 0.0 <= self.nu < 1.0):
            raise DomainError(f"(mu, nu) = ({self.mu}, {self.nu}) outside [0,1)^2")
        if self.nu_exact is not None:
            p, q = self.nu_exact
            if not (0 < p <= q - 1 and math.gcd(p, q) == 1):
                raise DomainError(f"nu_exact = {p}/{q} must be reduced with 0 < p <= q-1")
            if abs(self.nu - p / q) > 1e-14:
                raise DomainError("nu_exact inconsistent with nu")

    @classmethod
    def from_rational_nu(cls, mu: float, p: int, q: int) -> "OperatorParams":
        g = math.gcd(p, q)
        p, q = p // g, q // g
        return cls(mu=mu, nu=p / q, nu_exact=(p, q))


@dataclass(frozen=True)
class Angle:
    """Boundary angle in [0, pi), stored as an exact multiple of pi when known.

    The exact form decides the case splits (alpha = 0, beta = 0, beta = pi/2)
    without floating comparisons.
    """

    value: float
    pi_fraction: Optional[Fraction] = None

    def __post_init__(self):
        if not (0.0 <= self.value < math.pi):
            raise DomainError(f"angle {self.value} outside [0, pi)")
        if self.pi_fraction is not None:
            if not (0 <= self.pi_fraction < 1):
                raise DomainError("pi_fraction outside [0, 1)")
            if abs(self.value - float(self.pi_fraction) * math.pi) > 1e-14:
                raise DomainError("pi_fraction inconsistent with value")

    @classmethod
    def from_pi_fraction(cls, frac) -> "Angle":
        frac = Fraction(frac)
        return cls(value=float(frac) * math.pi, pi_fraction=frac)

    @classmethod
    def from_radians(cls, value: float) -> "Angle":
        if value == 0.0:
            return cls.from_pi_fraction(0)
        for frac in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(1, 3),
                     Fraction(2, 3), Fraction(1, 6), Fraction(5, 6)):
            if value == float(frac) * math.pi:
                return cls(value=float(value), pi_fraction=frac)
        return cls(value=float(value))

    @property
    def is_zero(self) -> bool:
        return self.pi_fraction == 0

    @property
    def is_half_pi(self) -> bool:
        return self.pi_fraction == Fraction(1, 2)

    @property
    def sin(self) -> float:
        if self.is_zero:
            return 0.0
        if self.is_half_pi:
            return 1.0
        return math.sin(self.value)

    @property
    def cos(self) -> float:
        if self.is_zero:
            return 1.0
        if self.is_half_pi:
            return 0.0
        return math.cos(self.value)


@dataclass(frozen=True)
class SeparatedBC:
    """Separated conditions cos(a) g~(0) + sin(a) g~'(0) = 0 and
    cos(b) g~(pi/2) - sin(b) g~'(pi/2) = 0."""

    alpha: Angle
    beta: Angle

    @classmethod
    def from_radians(cls, alpha: float, beta: float) -> "SeparatedBC":
        return cls(Angle.from_radians(alpha), Angle.from_radians(beta))

    @classmethod
    def from_pi_fractions(cls, alpha, beta) -> "SeparatedBC":
        return cls(Angle.from_pi_fraction(alpha), Angle.from_pi_fraction(beta))


@dataclass(frozen=True)
class CoupledBC:
    """Coupled conditions (g~(pi/2), g~'(pi/2)) = e^{i phi} R (g~(0), g~'(0))."""

    phi: float
    R: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        if not (0.0 <= self.phi < math.pi):
            raise DomainError("phi must lie in [0, pi)")
        r = np.asarray(self.R, dtype=float)
        if r.shape != (2, 2):
            raise DomainError("R must be 2x2")
        det = r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]
        if abs(det - 1.0) > 1e-12:
            raise DomainError(f"R must lie in SL(2,R); det = {det}")

    @classmethod
    def from_matrix(cls, phi: float, R) -> "CoupledBC":
        r = np.asarray(R, dtype=float)
        return cls(phi=phi, R=((r[0, 0], r[0, 1]), (r[1, 0], r[1, 1])))

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.R, dtype=float)

    @property
    def is_diagonal(self) -> bool:
        return self.R[0][1] == 0.0 and self.R[1][0] == 0.0


BoundaryCondition = Union[SeparatedBC, CoupledBC]


@dataclass(frozen=True)
class BoundaryValuesAtHalfPi:
    phi_tilde: complex
    phi_tilde_prime: complex
    theta_tilde: complex
    theta_tilde_prime: complex


# ---------------------------------------------------------------------------
# square root with Im >= 0, and the stable Gamma/digamma pair combinations
# ---------------------------------------------------------------------------

def sqrt_upper(z):
    """z^(1/2) with Im >= 0 (real nonnegative for z >= 0)."""
    w = np.sqrt(np.asarray(z, dtype=complex))
    w = np.where(w.imag < 0, -w, w)
    if w.ndim == 0:
        return complex(w)
    return w


def _pair_masks(c: float, w: np.ndarray) -> np.ndarray:
    """True where the reflected (pole-safe) path must be used for (c-w)/2."""
    am = (c - w) / 2.0
    return (am.real < 0.5) & (np.abs(w.imag) < 50.0)


def pair_inv_gamma(c: float, w, with_derivative: bool = False):
    """1/[Gamma((c+w)/2) Gamma((c-w)/2)] -- entire in z = w^2.

    Near the positive real z-axis the second factor approaches Gamma poles;
    there the reflection sin(pi a)Gamma(1-a)/pi is used instead.  Optionally
    also returns the derivative with respect to z (dw/dz = 1/(2w)).
    """
    w_arr = np.atleast_1d(np.asarray(w, dtype=complex))
    ap = (c + w_arr) / 2.0
    am = (c - w_arr) / 2.0
    refl = _pair_masks(c, w_arr)
    val = np.empty_like(w_arr)
    dval = np.empty_like(w_arr) if with_derivative else None

    if np.any(~refl):
        m = ~refl
        lg = -_sp.loggamma(ap[m]) - _sp.loggamma(am[m])
        val[m] = np.exp(lg)
        if with_derivative:
            # d/dz = (1/(4w)) [psi(am) - psi(ap)] * value
            dval[m] = val[m] * (_sp.digamma(am[m]) - _sp.digamma(ap[m])) / (4.0 * w_arr[m])
    if np.any(refl):
        m = refl
        g = np.exp(_sp.loggamma(1.0 - am[m]) - _sp.loggamma(ap[m]))
        s = np.sin(np.pi * am[m])
        val[m] = s * g / np.pi
        if with_derivative:
            # a'_m = -1/(4w), a'_p = 1/(4w)
            ds = np.cos(np.pi * am[m]) * np.pi * (-1.0 / (4.0 * w_arr[m]))
            dg = g * (_sp.digamma(1.0 - am[m]) * (1.0 / (4.0 * w_arr[m]))
                      - _sp.digamma(ap[m]) * (1.0 / (4.0 * w_arr[m])))
            dval[m] = (ds * g + s * dg) / np.pi
    if np.ndim(w) == 0:
        return (complex(val[0]), complex(dval[0])) if with_derivative else complex(val[0])
    return (val, dval) if with_derivative else val


def pair_digamma_comb(c: float, w, with_derivative: bool = False):
    """[2 gamma_E + psi((c+w)/2) + psi((c-w)/2)] / [Gamma((c+w)/2) Gamma((c-w)/2)].

    Entire in z = w^2: the digamma poles cancel against the 1/Gamma zeros.
    The reflected form [(2g + psi(ap) + psi(1-am)) sin(pi am) - pi cos(pi am)]
    * Gamma(1-am)/(pi Gamma(ap)) realizes the cancellation explicitly.
    """
    w_arr = np.atleast_1d(np.asarray(w, dtype=complex))
    ap = (c + w_arr) / 2.0
    am = (c - w_arr) / 2.0
    refl = _pair_masks(c, w_arr)
    val = np.empty_like(w_arr)
    dval = np.empty_like(w_arr) if with_derivative else None

    if np.any(~refl):
        m = ~refl
        wp = w_arr[m]
        pv = np.exp(-_sp.loggamma(ap[m]) - _sp.loggamma(am[m]))
        dsum = 2.0 * EULER_GAMMA + _sp.digamma(ap[m]) + _sp.digamma(am[m])
        val[m] = dsum * pv
        if with_derivative:
            dpv = pv * (_sp.digamma(am[m]) - _sp.digamma(ap[m])) / (4.0 * wp)
            ddsum = (trigamma(ap[m]) - trigamma(am[m])) / (4.0 * wp)
            dval[m] = ddsum * pv + dsum * dpv
    if np.any(refl):
        m = refl
        wp = w_arr[m]
        a_p = ap[m]
        a_m = am[m]
        g = np.exp(_sp.loggamma(1.0 - a_m) - _sp.loggamma(a_p))
        s = np.sin(np.pi * a_m)
        cos = np.cos(np.pi * a_m)
        dsum = 2.0 * EULER_GAMMA + _sp.digamma(a_p) + _sp.digamma(1.0 - a_m)
        num = dsum * s - np.pi * cos
        val[m] = num * g / np.pi
        if with_derivative:
            dap = 1.0 / (4.0 * wp)
            dam = -dap
            ddsum = trigamma(a_p) * dap - trigamma(1.0 - a_m) * dam
            dnum = ddsum * s + dsum * cos * np.pi * dam + np.pi * s * np.pi * dam
            dg = g * (-_sp.digamma(1.0 - a_m) * dam - _sp.digamma(a_p) * dap)
            dval[m] = (dnum * g + num * dg) / np.pi
    if np.ndim(w) == 0:
        return (complex(val[0]), complex(dval[0])) if with_derivative else complex(val[0])
    return (val, dval) if with_derivative else val


# ---------------------------------------------------------------------------
# generalized boundary values at x = pi/2
# ---------------------------------------------------------------------------

def _gamma_real(x: float) -> float:
    v = _sp.gamma(x)
    if not np.isfinite(v):
        raise GammaPoleError(f"Gamma pole at {x}")
    return float(v)


def boundary_values_half_pi(params: OperatorParams, z) -> BoundaryValuesAtHalfPi:
    """The four generalized boundary values of the normalized solutions at pi/2.

    Dispatches exactly on mu = 0 / nu = 0; each branch is a closed Gamma or
    Gamma-digamma form, entire in z.
    """
    mu, nu = params.mu, params.nu
    w = sqrt_upper(z)

    if nu > 0.0:
        phi_t = 2.0 * _gamma_real(1 + mu) * _gamma_real(1 + nu) * pair_inv_gamma(1 + mu + nu, w)
        phi_tp = -_gamma_real(1 + mu) * _gamma_real(-nu) * pair_inv_gamma(1 + mu - nu, w)
    else:
        phi_t = 2.0 * _gamma_real(1 + mu) * pair_inv_gamma(1 + mu, w)
        phi_tp = _gamma_real(1 + mu) * pair_digamma_comb(1 + mu, w)

    if mu > 0.0:
        theta_t = -_gamma_real(-mu) * _gamma_real(1 + nu) * pair_inv_gamma(1 - mu + nu, w)
    else:
        theta_t = _gamma_real(1 + nu) * pair_digamma_comb(1 + nu, w)

    if mu > 0.0 and nu > 0.0:
        theta_tp = _gamma_real(-mu) * _gamma_real(-nu) * pair_inv_gamma(1 - mu - nu, w) / 2.0
    elif mu == 0.0 and nu > 0.0:
        theta_tp = -_gamma_real(-nu) * pair_digamma_comb(1 - nu, w) / 2.0
    elif mu > 0.0 and nu == 0.0:
        theta_tp = -_gamma_real(-mu) * pair_digamma_comb(1 - mu, w) / 2.0
    else:
        t = pair_digamma_comb(1.0, w)
        p = pair_inv_gamma(1.0, w)
        theta_tp = (t * t - 1.0) / (2.0 * p)

    return BoundaryValuesAtHalfPi(phi_t, phi_tp, theta_t, theta_tp)


# ---------------------------------------------------------------------------
# characteristic functions
# ---------------------------------------------------------------------------

def boundary_values_half_pi_dz(params: OperatorParams, z) -> tuple[BoundaryValuesAtHalfPi, BoundaryValuesAtHalfPi]:
    """Boundary values at pi/2 together with their z-derivatives."""
    mu, nu = params.mu, params.nu
    w = sqrt_upper(z)

    def pv(c):
        return pair_inv_gamma(c, w, with_derivative=True)

    def tv(c):
        return pair_digamma_comb(c, w, with_derivative=True)

    if nu > 0.0:
        a = 2.0 * _gamma_real(1 + mu) * _gamma_real(1 + nu)
        v, dv = pv(1 + mu + nu)
        phi_t, dphi_t = a * v, a * dv
        b = -_gamma_real(1 + mu) * _gamma_real(-nu)
        v, dv = pv(1 + mu - nu)
        phi_tp, dphi_tp = b * v, b * dv
    else:
        a = 2.0 * _gamma_real(1 + mu)
        v, dv = pv(1 + mu)
        phi_t, dphi_t = a * v, a * dv
        b = _gamma_real(1 + mu)
        v, dv = tv(1 + mu)
        phi_tp, dphi_tp = b * v, b * dv

    if mu > 0.0:
        a = -_gamma_real(-mu) * _gamma_real(1 + nu)
        v, dv = pv(1 - mu + nu)
        theta_t, dtheta_t = a * v, a * dv
    else:
        a = _gamma_real(1 + nu)
        v, dv = tv(1 + nu)
        theta_t, dtheta_t = a * v, a * dv

    if mu > 0.0 and nu > 0.0:
        a = _gamma_real(-mu) * _gamma_real(-nu) / 2.0
        v, dv = pv(1 - mu - nu)
        theta_tp, dtheta_tp = a * v, a * dv
    elif mu == 0.0 and nu > 0.0:
        a = -_gamma_real(-nu) / 2.0
        v, dv = tv(1 - nu)
        theta_tp, dtheta_tp = a * v, a * dv
    elif mu > 0.0 and nu == 0.0:
        a = -_gamma_real(-mu) / 2.0
        v, dv = tv(1 - mu)
        theta_tp, dtheta_tp = a * v, a * dv
    else:
        t, dt = tv(1.0)
        p, dp = pv(1.0)
        theta_tp = (t * t - 1.0) / (2.0 * p)
        dtheta_tp = (t * dt - theta_tp * dp) / p

    return (BoundaryValuesAtHalfPi(phi_t, phi_tp, theta_t, theta_tp),
            BoundaryValuesAtHalfPi(dphi_t, dphi_tp, dtheta_t, dtheta_tp))


def _assemble_characteristic(bc: BoundaryCondition, bv: BoundaryValuesAtHalfPi):
    if isinstance(bc, SeparatedBC):
        u_phi = bc.beta.cos * bv.phi_tilde - bc.beta.sin * bv.phi_tilde_prime
        u_theta = bc.beta.cos * bv.theta_tilde - bc.beta.sin * bv.theta_tilde_prime
        return bc.alpha.cos * u_phi - bc.alpha.sin * u_theta
    r = bc.R
    combo = (r[1][1] * bv.theta_tilde - r[0][1] * bv.theta_tilde_prime
             - r[1][0] * bv.phi_tilde + r[0][0] * bv.phi_tilde_prime)
    return np.exp(1j * bc.phi) * (2.0 * math.cos(bc.phi) - combo)


def characteristic(params: OperatorParams, bc: BoundaryCondition, z) -> complex:
    """Characteristic function F(z); entire of order 1/2, zeros = eigenvalues."""
    return _assemble_characteristic(bc, boundary_values_half_pi(params, z))


def characteristic_dz(params: OperatorParams, bc: BoundaryCondition, z):
    """(F(z), F'(z)) with the derivative assembled analytically."""
    bv, dbv = boundary_values_half_pi_dz(params, z)
    f = _assemble_characteristic(bc, bv)
    df = _assemble_characteristic(bc, dbv)
    if isinstance(bc, CoupledBC):
        # the 2 cos(phi) constant must not be differentiated
        df = df - np.exp(1j * bc.phi) * 2.0 * math.cos(bc.phi)
    return f, df


def coupled_characteristic_real_part(params: OperatorParams, bc: CoupledBC, z):
    """e^{-i phi} F(z) for a coupled condition: real on the real z-axis."""
    return characteristic(params, bc, z) * np.exp(-1j * bc.phi)


def characteristic_mu0_explicit(nu: float, alpha: float, beta: float, z) -> complex:
    """Independent closed-form assembly of F for mu = 0, nu in (0,1).

    Kept as a cross-check against the boundary-operator assembly; the two
    must agree identically.
    """
    if not 0.0 < nu < 1.0:
        raise DomainError("explicit mu=0 form requires nu in (0,1)")
    w = sqrt_upper(z)
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    gp = _sp.gamma(1.0 + nu)
    gm = _sp.gamma(-nu)

    # first piece: weight on the Gamma pair at 1+nu
    pv_p, tv_p = pair_inv_gamma(1 + nu, w), pair_digamma_comb(1 + nu, w)
    piece1 = -2.0 * gp * cb * (-ca * pv_p + (sa / 2.0) * tv_p)
    pv_m, tv_m = pair_inv_gamma(1 - nu, w), pair_digamma_comb(1 - nu, w)
    piece2 = -gm * sb * (-ca * pv_m + (sa / 2.0) * tv_m)
    return piece1 + piece2


def characteristic_taylor0(params: OperatorParams, bc: BoundaryCondition,
                           n: int = 6, radius: float = 0.25) -> np.ndarray:
    """Taylor coefficients c_0..c_{n-1} of F at z = 0 by Cauchy-circle trapezoid.

    F is entire, so the circle quadrature converges spectrally; 64 nodes give
    near machine precision for the low-order coefficients used here.
    """
    m = 64
    theta = 2.0 * np.pi * np.arange(m) / m
    zs = radius * np.exp(1j * theta)
    fv = np.array([characteristic(params, bc, zc) for zc in zs])
    coeffs = np.fft.fft(fv) / m
    return coeffs[:n] / radius ** np.arange(n)


def zero_mode_multiplicity(params: OperatorParams, bc: BoundaryCondition,
                           tol: float = 1e-9) -> int:
    """Order of vanishing of F at z = 0 (0, 1, or 2; 2 only for coupled data)."""
    c = characteristic_taylor0(params, bc, n=4)
    scale = max(abs(c[0]), 0.25 * abs(c[1]), 0.0625 * abs(c[2]), 1e-300)
    if abs(c[0]) > tol * scale:
        if abs(c[0]) < 10.0 * tol * scale:
            import warnings
            warnings.warn("zero-mode multiplicity is marginal at the working tolerance")
        return 0
    if abs(c[1]) > tol * max(abs(c[1]), abs(c[2]), 1e-300):
        return 1
    return 2


# ---------------------------------------------------------------------------
# normalized fundamental solutions on (0, pi/2)
# ---------------------------------------------------------------------------

_X_CROSSOVER = math.pi / 4.0


def _phi_signed(mu_s: float, nu_s: float, z, x: float) -> complex:
    """[sin x]^{(1+2mu)/2} [cos x]^{(1+2nu)/2} 2F1(a,b;1+mu;sin^2 x) for signed
    parameters in (-1, 1); series on x <= pi/4, connection formulas beyond."""
    w = sqrt_upper(z)
    a = (1.0 + mu_s + nu_s + w) / 2.0
    b = (1.0 + mu_s + nu_s - w) / 2.0
    c = 1.0 + mu_s
    sx, cx = math.sin(x), math.cos(x)
    pref = sx ** (0.5 + mu_s) * cx ** (0.5 + nu_s)
    if x <= _X_CROSSOVER:
        return pref * hyp2f1_series(a, b, c, sx * sx)
    xi1 = cx * cx
    if nu_s != 0.0:
        # standard two-term connection: c - a - b = -nu_s not an integer
        coef1 = _sp.gamma(c) * _sp.gamma(-nu_s) * pair_inv_gamma(1.0 + mu_s - nu_s, w)
        coef2 = _sp.gamma(c) * _sp.gamma(nu_s) * pair_inv_gamma(1.0 + mu_s + nu_s, w)
        f1 = hyp2f1_series(a, b, 1.0 + nu_s, xi1)
        f2 = hyp2f1_series(c - a, c - b, 1.0 - nu_s, xi1)
        return pref * (coef1 * f1 + xi1 ** (-nu_s) * coef2 * f2)
    # logarithmic connection at coincident exponents (nu_s = 0)
    val = _log_connection_series(a, b, xi1)
    return pref * _sp.gamma(c) * pair_inv_gamma(1.0 + mu_s, w) * val


def _log_connection_series(a: complex, b: complex, xi1: float,
                           tol: float = 1e-15) -> complex:
    """sum_n ((a)_n (b)_n/(n!)^2) [2 psi(n+1) - psi(a+n) - psi(b+n) - ln xi1] xi1^n."""
    acc = 0.0 + 0.0j
    term = 1.0 + 0.0j
    ln_xi = math.log(xi1)
    psa, psb = complex(_sp.digamma(a)), complex(_sp.digamma(b))
    psn = -EULER_GAMMA
    for n in range(0, 5000):
        if n > 0:
            term *= (a + n - 1) * (b + n - 1) / (n * n) * xi1
            psa += 1.0 / (a + n - 1)
            psb += 1.0 / (b + n - 1)
            psn += 1.0 / n
        piece = term * (2.0 * psn - psa - psb - ln_xi)
        acc += piece
        if n > 4 and abs(piece) < tol * max(1.0, abs(acc)):
            return acc
    raise ConvergenceError("logarithmic connection series did not converge")


def _frobenius_log_series(a: complex, b: complex, xi: float,
                          tol: float = 1e-15) -> complex:
    """F(a,b;1;xi) ln xi + sum_{n>=1} ((a)_n(b)_n/(n!)^2) xi^n
    [psi(a+n)-psi(a)+psi(b+n)-psi(b)-2 psi(n+1)-2 gamma_E]."""
    f = hyp2f1_series(a, b, 1.0, xi)
    acc = f * math.log(xi)
    term = 1.0 + 0.0j
    ha = 0.0 + 0.0j  # psi(a+n) - psi(a)
    hb = 0.0 + 0.0j
    hn = 0.0  # psi(n+1) - psi(1)
    for n in range(1, 5000):
        term *= (a + n - 1) * (b + n - 1) / (n * n) * xi
        ha += 1.0 / (a + n - 1)
        hb += 1.0 / (b + n - 1)
        hn += 1.0 / n
        piece = term * (ha + hb - 2.0 * hn)
        acc += piece
        if n > 4 and abs(piece) < tol * max(1.0, abs(acc)):
            return acc
    raise ConvergenceError("Frobenius log series did not converge")


def solution_phi(params: OperatorParams, z, x: float) -> complex:
    """phi(z, x): the solution normalized by phi~(0) = 0, phi~'(0) = 1."""
    if not 0.0 < x < math.pi / 2.0:
        raise DomainError("x must lie strictly inside (0, pi/2)")
    return _phi_signed(params.mu, params.nu, z, x)


def solution_theta(params: OperatorParams, z, x: float) -> complex:
    """theta(z, x): the solution normalized by theta~(0) = 1, theta~'(0) = 0.

    For mu in (0,1) this is (2 mu)^(-1) phi with both parameter signs flipped;
    mu = 0 requires the logarithmic Frobenius solution.
    """
    if not 0.0 < x < math.pi / 2.0:
        raise DomainError("x must lie strictly inside (0, pi/2)")
    mu, nu = params.mu, params.nu
    if mu > 0.0:
        return _phi_signed(-mu, -nu, z, x) / (2.0 * mu)

    w = sqrt_upper(z)
    a = (1.0 + nu + w) / 2.0
    b = (1.0 + nu - w) / 2.0
    sx, cx = math.sin(x), math.cos(x)
    pref = -0.5 * sx ** 0.5 * cx ** (0.5 + nu)
    if x <= _X_CROSSOVER:
        return pref * _frobenius_log_series(a, b, sx * sx)
    xi1 = cx * cx
    if nu > 0.0:
        c1 = -(2.0 * EULER_GAMMA + _sp.digamma(1.0 - a) + _sp.digamma(1.0 - b)) \
            * _sp.gamma(-nu) / (_sp.gamma(1.0 - a) * _sp.gamma(1.0 - b))
        c2 = -(2.0 * EULER_GAMMA + _sp.digamma(a) + _sp.digamma(b)) \
            * _sp.gamma(nu) / (_sp.gamma(a) * _sp.gamma(b))
        f1 = hyp2f1_series(a, b, 1.0 + nu, xi1)
        f2 = hyp2f1_series(1.0 - a, 1.0 - b, 1.0 - nu, xi1)
        return pref * (c1 * f1 + c2 * xi1 ** (-nu) * f2)
    # mu = nu = 0: symmetric logarithmic connection
    dsum = 2.0 * EULER_GAMMA + _sp.digamma(a) + _sp.digamma(b)
    sin_pa = np.sin(np.pi * a)
    f11 = hyp2f1_series(a, b, 1.0, xi1)
    w2ln = _frobenius_log_series(a, b, xi1)
    val = (dsum * dsum - np.pi**2 / (sin_pa * sin_pa)) * f11 + dsum * w2ln
    return pref * sin_pa / np.pi * val


def solution_phi_dx(params: OperatorParams, z, x: float, h: float = 1e-6) -> complex:
    """d/dx of phi by a 4th-order central stencil (test helper)."""
    return _dx(lambda t: solution_phi(params, z, t), x, h)


def solution_theta_dx(params: OperatorParams, z, x: float, h: float = 1e-6) -> complex:
    """d/dx of theta by a 4th-order central stencil (test helper)."""
    return _dx(lambda t: solution_theta(params, z, t), x, h)


def _dx(f, x: float, h: float) -> complex:
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def wronskian(params: OperatorParams, z, x: float) -> complex:
    """W(theta, phi)(x) = theta phi' - theta' phi; equals 1 by normalization."""
    th = solution_theta(params, z, x)
    ph = solution_phi(params, z, x)
    thp = solution_theta_dx(params, z, x)
    php = solution_phi_dx(params, z, x)
    return th * php - thp * ph
