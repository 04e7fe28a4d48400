"""Exact coefficient algebra for the large-z expansion of ln F.

The expansion of ln[z^(-m0) F(z)] is graded by two scales: integer (and, for
rational nu = p/q, rational) powers of 1/z, and powers of the logarithmic
variable X = sin(alpha)/Lambda with Lambda = -cos(alpha) + sin(alpha)
(gamma_E + ln z^(1/2) - ln 2 - i pi/2).  Coefficients of the integer-power
tail are exact polynomials in nu; those of the rational-power tail are
complex numbers built from Gamma ratios and cot(beta).

The X-grading is treated as a formal variable throughout, so every
coefficient here is independent of alpha and of the contour angle;
substituting the contour value of Lambda is the caller's final step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from scipy import special as _sp

from .specialfn import (
    DomainError,
    RatPoly,
    bernoulli_number,
    binomial_poly,
    formal_log,
    gen_bernoulli_polynomial,
)

Exact = Union[Fraction, RatPoly]
Entry = Union[Fraction, RatPoly, complex]


# ---------------------------------------------------------------------------
# log-graded series
# ---------------------------------------------------------------------------

class LogSeries:
    """Finite series sum_l entries[l] * X^l in the formal variable
    X = sin(alpha)/Lambda.  Entries are exact (Fraction/RatPoly) on the
    polynomial side, complex on the numeric side."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Entry]):
        es = list(entries)
        while es and _is_zero(es[-1]):
            es.pop()
        self.entries = tuple(es)

    @property
    def order(self) -> int:
        return len(self.entries) - 1

    def entry(self, l: int) -> Entry:
        if 0 <= l < len(self.entries):
            return self.entries[l]
        return Fraction(0)

    def __add__(self, other: "LogSeries") -> "LogSeries":
        n = max(len(self.entries), len(other.entries))
        return LogSeries([self.entry(i) + other.entry(i) for i in range(n)])

    def __sub__(self, other: "LogSeries") -> "LogSeries":
        n = max(len(self.entries), len(other.entries))
        return LogSeries([self.entry(i) - other.entry(i) for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, LogSeries):
            if not self.entries or not other.entries:
                return LogSeries([])
            out: list[Entry] = [Fraction(0)] * (len(self.entries) + len(other.entries) - 1)
            for i, a in enumerate(self.entries):
                for j, b in enumerate(other.entries):
                    out[i + j] = out[i + j] + a * b
            return LogSeries(out)
        return LogSeries([e * other for e in self.entries])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LogSeries) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def map(self, f) -> "LogSeries":
        return LogSeries([f(e) for e in self.entries])

    def eval_at(self, nu) -> "LogSeries":
        """Substitute a value for the polynomial variable in exact entries."""
        return self.map(lambda e: e(nu) if isinstance(e, RatPoly) else e)

    def eval_numeric(self, sin_alpha: float, lam: complex) -> complex:
        """Substitute X = sin_alpha / lam."""
        x = sin_alpha / lam
        acc = 0.0 + 0.0j
        for e in reversed(self.entries):
            acc = acc * x + complex(_to_float(e))
        return acc

    def __repr__(self):
        return f"LogSeries({list(self.entries)!r})"


def _is_zero(e: Entry) -> bool:
    if isinstance(e, RatPoly):
        return e.is_zero()
    return e == 0


def _to_float(e: Entry):
    if isinstance(e, Fraction):
        return float(e)
    if isinstance(e, RatPoly):
        raise TypeError("cannot numerically evaluate an unsubstituted polynomial entry")
    return e


# ---------------------------------------------------------------------------
# exact families: G, C, E, P, R
# ---------------------------------------------------------------------------

def _lift(y) -> Exact:
    if isinstance(y, RatPoly):
        return y
    return Fraction(y)


def G_coefficient(y, k: int):
    """G_k(1-y, y) = C(1-2y, k) B_k^(2(1-y))(1-y); vanishes for odd k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2 == 1:
        return RatPoly() if isinstance(y, RatPoly) else Fraction(0)
    yy = _lift(y)
    top = 1 - 2 * yy
    b = gen_bernoulli_polynomial(k, 2 * (1 - yy), 1 - yy)
    out = binomial_poly(top if isinstance(top, RatPoly) else Fraction(top), k) * b
    if isinstance(y, RatPoly):
        return out if isinstance(out, RatPoly) else RatPoly.const(out)
    return out(Fraction(0)) if isinstance(out, RatPoly) and out.degree <= 0 else (
        out if isinstance(out, Fraction) else _poly_to_fraction(out))


def _poly_to_fraction(p: RatPoly) -> Fraction:
    if p.degree > 0:
        raise TypeError("polynomial is not constant")
    return p.coeffs[0] if p.coeffs else Fraction(0)


def C_coefficient(y, m: int):
    """C_m(y) = sum_j C(2m-1, 2j) 2^(2m) y^(2j) B_(2(m-j)) / (m-j)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    yy = _lift(y)
    acc: Exact = Fraction(0)
    for j in range(0, m):
        term = Fraction(math.comb(2 * m - 1, 2 * j) * 2 ** (2 * m), m - j) \
            * bernoulli_number(2 * (m - j))
        acc = acc + term * yy ** (2 * j)
    return acc


def E_coefficient(y, k: int):
    """E_k(y) = 2(2y)^(2k-1) - (2y)^(2k)/k - C_k(y).

    This is the digamma-sum expansion coefficient; the sign of the C_k part
    is fixed by the numeric large-z oracle (see tests).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    yy = _lift(y)
    two_y = 2 * yy
    return 2 * two_y ** (2 * k - 1) - Fraction(1, k) * two_y ** (2 * k) - C_coefficient(y, k)


def P_coefficient(y, k: int) -> LogSeries:
    """Log-graded coefficient of z^(-k) in the digamma-weighted Gamma-pair
    expansion: entry 0 is 4^k G_2k, entry 1 is sum_j 4^(k-j) (E_j/2) G_(2(k-j))."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return LogSeries([Fraction(1)])
    l0 = Fraction(4) ** k * G_coefficient(y, 2 * k)
    l1: Exact = Fraction(0)
    for j in range(1, k + 1):
        l1 = l1 + Fraction(4) ** (k - j) * Fraction(1, 2) * E_coefficient(y, j) \
            * G_coefficient(y, 2 * (k - j))
    return LogSeries([l0, l1])


@lru_cache(maxsize=None)
def _R_series_symbolic(m: int) -> LogSeries:
    """R_m as a LogSeries with RatPoly-in-nu entries, via the log recurrence
    R_m = P_m - sum_{l<m} (l/m) P_{m-l} R_l with y = (1-nu)/2."""
    if m < 1:
        raise ValueError("m must be >= 1")
    nu = RatPoly.x()
    y = Fraction(1, 2) * (1 - nu)
    p = {k: P_coefficient(y, k) for k in range(1, m + 1)}
    r: dict[int, LogSeries] = {}
    for j in range(1, m + 1):
        acc = p[j]
        for ell in range(1, j):
            acc = acc - Fraction(ell, j) * (p[j - ell] * r[ell])
        r[j] = acc
    return r[m]


def R_polynomials(m: int) -> list[RatPoly]:
    """The exact polynomials p_{m,l}(nu), l = 0..m."""
    rs = _R_series_symbolic(m)
    out = []
    for l in range(m + 1):
        e = rs.entry(l)
        out.append(e if isinstance(e, RatPoly) else RatPoly.const(e))
    return out


def R_coefficient(nu, m: int) -> LogSeries:
    """R_m with the polynomial variable substituted (exact for Fraction nu)."""
    return _R_series_symbolic(m).eval_at(_lift(nu) if not isinstance(nu, float) else nu)


# ---------------------------------------------------------------------------
# Diophantine bookkeeping for the rational-power tail
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiophantineSet:
    """Nonnegative solutions (l, k) of l p + k q = m; the max k is the order
    of the corresponding rational-power coefficient."""

    m: int
    p: int
    q: int
    solutions: frozenset[tuple[int, int]]

    @property
    def order(self) -> int | None:
        if not self.solutions:
            return None
        return max(k for _, k in self.solutions)

    @property
    def is_empty(self) -> bool:
        return not self.solutions


def diophantine_set(m: int, p: int, q: int) -> DiophantineSet:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not (0 < p <= q - 1 and math.gcd(p, q) == 1):
        raise DomainError("need coprime p, q with 0 < p <= q-1")
    sols = set()
    for l in range(m // p + 1):
        rem = m - l * p
        if rem % q == 0:
            sols.add((l, rem // q))
    return DiophantineSet(m, p, q, frozenset(sols))


# ---------------------------------------------------------------------------
# numeric families: Omega, S
# ---------------------------------------------------------------------------

def _cos_exact(angle: float) -> float:
    """cos with the pi/2 wall snapped to an exact zero."""
    c = math.cos(angle)
    return 0.0 if abs(c) < 1e-14 else c


def omega0(nu: float, beta: float) -> complex:
    """Omega_0 = 2^(2 nu + 1) Gamma(1+nu)/Gamma(-nu) cot(beta) e^(i pi nu).

    The power of 2 is the ratio of the two Gamma-pair prefactors
    2^nu / 2^(-nu-1); it is pinned by the large-z fidelity oracle against the
    actual characteristic function (see tests).
    """
    if not 0.0 < nu < 1.0:
        raise DomainError("nu must lie in (0,1)")
    if math.sin(beta) == 0.0:
        raise DomainError("beta = 0 has no rational-power tail")
    cotb = _cos_exact(beta) / math.sin(beta)
    if cotb == 0.0:
        return 0.0 + 0.0j
    return (2.0 ** (2 * nu + 1) * _sp.gamma(1 + nu) / _sp.gamma(-nu)
            * cotb * np.exp(1j * math.pi * nu))


@lru_cache(maxsize=None)
def _omega_series(p: int, q: int, beta: float, k: int) -> LogSeries:
    """Omega_k as a complex LogSeries (order <= k)."""
    nu = Fraction(p, q)
    om0 = omega0(float(nu), beta)
    if k == 0:
        return LogSeries([om0])
    y_plus = Fraction(1, 2) * (1 + nu)
    y_minus = Fraction(1, 2) * (1 - nu)
    pbar = om0 * P_coefficient(y_plus, k).map(_num)
    acc = pbar
    for l in range(0, k):
        acc = acc - P_coefficient(y_minus, k - l).map(_num) * _omega_series(p, q, beta, l)
    return acc


def _num(e: Entry) -> complex:
    if isinstance(e, Fraction):
        return complex(float(e))
    if isinstance(e, RatPoly):
        raise TypeError("unexpected symbolic entry on the numeric side")
    return complex(e)


def omega_coefficient(p: int, q: int, beta: float, k: int) -> LogSeries:
    """Omega_k(nu, .) for nu = p/q; identically zero when beta = pi/2."""
    if _cos_exact(beta) == 0.0:
        return LogSeries([])
    return _omega_series(p, q, beta, k)


@lru_cache(maxsize=None)
def _s_series(p: int, q: int, beta: float, m: int) -> LogSeries:
    """S_m for nu = p/q via d/dw log(1 + sum Omega_k w^(kq+p)) = ...:

    S_m = [q | m] Omega_(m/q) - sum_{k >= 0, kq <= m-p} ((m - kq)/(m + p))
          Omega_k S_(m - p - kq).
    """
    if _cos_exact(beta) == 0.0:
        return LogSeries([])
    acc = LogSeries([])
    if m % q == 0:
        acc = acc + _omega_series(p, q, beta, m // q)
    k = 0
    while k * q <= m - p:
        factor = Fraction(m - k * q, m + p)
        acc = acc - float(factor) * (_omega_series(p, q, beta, k)
                                     * _s_series(p, q, beta, m - p - k * q))
        k += 1
    return acc


def S_coefficient(p: int, q: int, beta: float, m: int) -> LogSeries:
    """S_m for nu = p/q; vanishes when the Diophantine set [m]_{p,q} is empty."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _s_series(p, q, beta, m)


# ---------------------------------------------------------------------------
# assembled truncated expansion of ln[z^(-m0) F(z)]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerTerm:
    """One tail term: coefficient series (over Lambda powers) of z^(-exponent)."""

    exponent: Fraction
    entries: tuple[complex, ...]  # index = Lambda power

    def coefficient(self, j: int) -> complex:
        return self.entries[j] if j < len(self.entries) else 0.0


@dataclass(frozen=True)
class AsyExpansion:
    """Truncated large-z expansion of ln[z^(-m0) F(z)] for mu = 0.

    value(z) evaluates the expansion; dt_on_ray(t, psi) evaluates the
    t-derivative along z = t e^(i psi).  ``power_terms`` carries every tail
    term in a uniform (exponent, Lambda-graded coefficients) form for the
    continuation machinery.
    """

    nu: float
    alpha: float
    beta: float
    m0: int
    N: int
    q_N: int | None
    lnz_coeff: float
    log_const: complex
    has_log_factor: bool  # the ln(Lambda_z) term (alpha > 0); constant i pi if alpha = 0
    power_terms: tuple[PowerTerm, ...]

    def lam(self, z) -> complex:
        """Lambda_z = -cos(a) + sin(a)(gamma_E + ln z^(1/2) - ln 2 - i pi/2)."""
        from .specialfn import EULER_GAMMA
        w = np.sqrt(np.asarray(z, dtype=complex))
        w = np.where(w.imag < 0, -w, w)
        return (-math.cos(self.alpha)
                + math.sin(self.alpha) * (EULER_GAMMA + np.log(w) - math.log(2.0) - 0.5j * math.pi))

    def value(self, z) -> complex:
        z = complex(z)
        lam = complex(self.lam(z))
        w = np.sqrt(z)
        if w.imag < 0:
            w = -w
        acc = -0.5j * math.pi * w + self.log_const + self.lnz_coeff * np.log(z)
        acc += np.log(lam) if self.has_log_factor else 1j * math.pi
        sa = math.sin(self.alpha)
        for term in self.power_terms:
            u = float(term.exponent)
            s = 0.0 + 0.0j
            for j, c in enumerate(term.entries):
                s += c * (sa / lam) ** j if j else c
            acc += s * z ** (-u)
        return acc

    def dt_on_ray(self, t, psi: float):
        t = np.asarray(t, dtype=float)
        sa = math.sin(self.alpha)
        eta = eta_alpha(self.alpha, psi)
        lam = eta + sa * 0.5 * np.log(t)
        acc = -0.25j * math.pi * np.exp(0.5j * psi) * t ** (-0.5) + self.lnz_coeff / t
        if self.has_log_factor:
            acc = acc + sa / (2.0 * t * lam)
        for term in self.power_terms:
            u = float(term.exponent)
            inner = np.zeros_like(t, dtype=complex)
            for j, c in enumerate(term.entries):
                if j == 0:
                    inner = inner + c * u
                else:
                    inner = inner + c * (sa ** j) * (u * lam ** (-j)
                                                     + 0.5 * j * sa * lam ** (-j - 1))
            acc = acc - inner * t ** (-u - 1.0) * np.exp(-1j * u * psi)
        return acc


def eta_alpha(alpha: float, psi: float) -> complex:
    """eta_a = [gamma_E - ln 2 - (i/2)(pi - psi)] sin(a) - cos(a)."""
    from .specialfn import EULER_GAMMA
    return ((EULER_GAMMA - math.log(2.0) - 0.5j * (math.pi - psi)) * math.sin(alpha)
            - math.cos(alpha))


def q_N_bound(p: int, q: int, N: int) -> int:
    return min(q, math.ceil(q * (N + 1) / p) - 1)


def assemble_L_asy(alpha: float, beta: float, m0: int, N: int,
                   nu: float | None = None,
                   nu_exact: tuple[int, int] | None = None) -> AsyExpansion:
    """Build the truncated expansion of ln[z^(-m0) F(z)] for mu = 0.

    beta = 0 uses the integer-power tail with nu -> -nu only; beta = pi/2
    drops the rational-power tail entirely; other beta require exact rational
    nu = p/q (the term ordering of the rational-power tail is undefined
    otherwise).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    sa, ca = math.sin(alpha), math.cos(alpha)
    sb, cb = math.sin(beta), _cos_exact(beta)
    if nu is None and nu_exact is None:
        raise ValueError("need nu or nu_exact")
    nu_f = float(nu) if nu is not None else nu_exact[0] / nu_exact[1]
    if not 0.0 < nu_f < 1.0:
        raise DomainError("mu = 0 expansion requires nu in (0,1)")

    keep_l_terms = sa != 0.0
    terms: list[PowerTerm] = []

    def r_entries(sign: int) -> None:
        for m in range(1, N + 1):
            polys = R_polynomials(m)
            vals = [complex(float(pl(Fraction(sign) * Fraction(*nu_exact)))
                            if nu_exact is not None else pl(sign * nu_f))
                    for pl in polys]
            if not keep_l_terms:
                vals = vals[:1]
            terms.append(PowerTerm(Fraction(m), tuple(vals)))

    if sb == 0.0:
        # Dirichlet-type wall at pi/2: only the integer tail, reflected nu
        r_entries(-1)
        log_const = (math.log(2.0 ** nu_f * _sp.gamma(1 + nu_f) / math.pi)
                     + 1j * math.pi * (nu_f / 2.0 - 1.0))
        return AsyExpansion(nu=nu_f, alpha=alpha, beta=beta, m0=m0, N=N, q_N=None,
                            lnz_coeff=-(nu_f / 2.0 + m0), log_const=log_const,
                            has_log_factor=keep_l_terms, power_terms=tuple(terms))

    r_entries(+1)
    log_const = (math.log(-_sp.gamma(-nu_f) * sb / (2.0 ** (nu_f + 1) * math.pi))
                 - 0.5j * math.pi * nu_f)
    qn: int | None = None
    if cb != 0.0:
        if nu_exact is None:
            raise DomainError("rational-power tail requires exact rational nu = p/q")
        p, q = nu_exact
        qn = q_N_bound(p, q, N)
        om0 = omega0(p / q, beta)
        for m in range(1, qn + 1):
            c = (-1) ** (m - 1) / m * om0 ** m
            terms.append(PowerTerm(Fraction(m * p, q), (complex(c),)))
        skip = {j * p for j in range(0, qn)}
        for m in range(q, q * (N + 1) - p):
            if m in skip:
                continue
            s_m = S_coefficient(p, q, beta, m)
            if not s_m.entries:
                continue
            vals = [ _num(e) for e in s_m.entries ]
            if not keep_l_terms:
                vals = vals[:1]
            terms.append(PowerTerm(Fraction(m + p, q), tuple(vals)))
    terms.sort(key=lambda pt: pt.exponent)
    return AsyExpansion(nu=nu_f, alpha=alpha, beta=beta, m0=m0, N=N, q_N=qn,
                        lnz_coeff=nu_f / 2.0 - m0, log_const=log_const,
                        has_log_factor=keep_l_terms, power_terms=tuple(terms))


# ---------------------------------------------------------------------------
# coefficient-table export
# ---------------------------------------------------------------------------

def format_exact(e: Exact) -> str:
    if isinstance(e, RatPoly):
        if e.degree <= 0:
            e = e.coeffs[0] if e.coeffs else Fraction(0)
        else:
            return " + ".join(f"({c.numerator}/{c.denominator})*nu^{i}" if i else
                              f"{c.numerator}/{c.denominator}"
                              for i, c in enumerate(e.coeffs) if c != 0)
    return f"{e.numerator}/{e.denominator}"


def format_complex(c: complex) -> str:
    c = complex(c)
    sign = "+" if c.imag >= 0 else "-"
    return f"{c.real:.17g}{sign}{abs(c.imag):.17g}i"


def coefficient_table_csv(kind: str, m_max: int, p: int | None = None,
                          q: int | None = None, beta: float | None = None) -> str:
    """CSV export of the coefficient families (exact rationals as num/den,
    complex as re+im i with 17 significant digits)."""
    lines = []
    if kind == "R":
        lines.append("m,l,p_ml")
        for m in range(1, m_max + 1):
            for l, pl in enumerate(R_polynomials(m)):
                lines.append(f"{m},{l},\"{format_exact(pl)}\"")
    elif kind == "G":
        lines.append("k,G_k")
        y = RatPoly.x()
        for k in range(0, m_max + 1):
            lines.append(f"{k},\"{format_exact(G_coefficient(y, k))}\"")
    elif kind == "E":
        lines.append("k,E_k")
        y = RatPoly.x()
        for k in range(1, m_max + 1):
            lines.append(f"{k},\"{format_exact(E_coefficient(y, k))}\"")
    elif kind == "S":
        if p is None or q is None or beta is None:
            raise ValueError("S table requires p, q, beta")
        lines.append("m,j,g_mj")
        for m in range(0, m_max + 1):
            sm = S_coefficient(p, q, beta, m)
            for j, e in enumerate(sm.entries):
                lines.append(f"{m},{j},\"{format_complex(_num(e))}\"")
    else:
        raise ValueError(f"unknown coefficient table kind {kind!r}")
    return "\n".join(lines) + "\n"
