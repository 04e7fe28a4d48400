"""Complex special functions and exact rational/polynomial arithmetic.

Everything numeric works in double precision; everything combinatorial
(Bernoulli numbers, Bernoulli and generalized Bernoulli polynomials,
polynomial coefficient algebra) is exact over ``fractions.Fraction``.

Branch conventions: ``log_gamma`` is the principal branch, and all square
roots of the spectral parameter taken elsewhere in the package satisfy
Im(z^(1/2)) >= 0.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from scipy import special as _sp

EULER_GAMMA = 0.5772156649015328606065120900824024


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the function."""


class GammaPoleError(DomainError):
    """Gamma/digamma evaluated at a nonpositive integer."""


class ConvergenceError(RuntimeError):
    """A series or continued fraction failed to reach the requested tolerance."""


# ---------------------------------------------------------------------------
# exact rational polynomials
# ---------------------------------------------------------------------------

RationalLike = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact arithmetic requires int/Fraction, got {type(x).__name__}")


class RatPoly:
    """Dense univariate polynomial with exact ``Fraction`` coefficients.

    Coefficients are stored low degree first and trailing zeros are trimmed,
    so ``degree == len(coeffs) - 1`` (the zero polynomial has ``coeffs == ()``).
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([_as_fraction(c)])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RatPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "RatPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return RatPoly(a)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "RatPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return RatPoly([c * f for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = RatPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(other) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly.const(other)
        raise TypeError(f"cannot combine RatPoly with {type(other).__name__}")

    def __call__(self, x):
        """Evaluate by Horner's rule; works for Fraction, float, complex or RatPoly."""
        if isinstance(x, RatPoly):
            acc: RatPoly | Fraction = RatPoly()
            for c in reversed(self.coeffs):
                acc = acc * x + RatPoly.const(c)
            return acc if isinstance(acc, RatPoly) else RatPoly.const(acc)
        acc = 0 * x  # matches the numeric type of x
        for c in reversed(self.coeffs):
            if isinstance(x, Fraction) or isinstance(x, int):
                acc = acc * x + c
            else:
                acc = acc * x + float(c.numerator) / float(c.denominator)
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RatPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{i}")
        return "RatPoly(" + " + ".join(parts) + ")"


def binomial_poly(top, k: int):
    """Generalized binomial coefficient C(top, k) = top(top-1)...(top-k+1)/k!.

    ``top`` may be a Fraction or a RatPoly; the result has the same kind.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if isinstance(top, RatPoly):
        result: RatPoly | Fraction = RatPoly.const(1)
    else:
        top = _as_fraction(top)
        result = Fraction(1)
    for i in range(k):
        result = result * (top - i)
    return result * Fraction(1, math.factorial(k))


# ---------------------------------------------------------------------------
# Bernoulli numbers and (generalized) Bernoulli polynomials
# ---------------------------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= len(_BERNOULLI):
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI) <= n:
                m = len(_BERNOULLI)
                if m % 2 == 1:
                    _BERNOULLI.append(Fraction(0))
                    continue
                acc = Fraction(0)
                for k in range(m):
                    acc += math.comb(m + 1, k) * _BERNOULLI[k]
                _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def bernoulli_polynomial(n: int) -> RatPoly:
    """Exact coefficients of the Bernoulli polynomial B_n(x)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = math.comb(n, k) * bernoulli_number(k)
    return RatPoly(coeffs)


def formal_log(c: Sequence) -> list:
    """Coefficients d_1..d_N of log(1 + sum c_m x^m) from c_1..c_N.

    ``c[0]`` is c_1.  Entries may be Fractions, RatPolys or complex numbers.
    """
    n = len(c)
    d: list = []
    for j in range(1, n + 1):
        term = c[j - 1]
        for ell in range(1, j):
            term = term - Fraction(ell, j) * c[j - ell - 1] * d[ell - 1]
        d.append(term)
    return d


def formal_exp(f: Sequence) -> list:
    """Coefficients e_0..e_N of exp(sum f_m x^m) from f_1..f_N (f[0] is f_1)."""
    n = len(f)
    e: list = [Fraction(1)]
    for m in range(1, n + 1):
        term = 0 * f[0] if not isinstance(f[0], (int, Fraction)) else Fraction(0)
        for k in range(1, m + 1):
            term = term + Fraction(k, m) * f[k - 1] * e[m - k]
        e.append(term)
    return e


def _log_expm1_over_t(n: int) -> list[Fraction]:
    """Series coefficients a_1..a_n of log((e^t - 1)/t)."""
    c = [Fraction(1, math.factorial(m + 1)) for m in range(1, n + 1)]
    return formal_log(c)


def gen_bernoulli_polynomial(k: int, order, x) -> RatPoly:
    """Generalized Bernoulli polynomial B_k^(order)(x), exact.

    Defined through (t/(e^t-1))^order * e^(x t) = sum_k B_k^(order)(x) t^k/k!.
    ``order`` and ``x`` may be Fractions or RatPolys (e.g. polynomials in an
    auxiliary variable), and the result is a RatPoly in that variable.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    order_p = order if isinstance(order, RatPoly) else RatPoly.const(_as_fraction(order))
    x_p = x if isinstance(x, RatPoly) else RatPoly.const(_as_fraction(x))
    if k == 0:
        return RatPoly.const(1)
    a = _log_expm1_over_t(k)
    f: list[RatPoly] = [(-1) * order_p * RatPoly.const(ai) for ai in a]
    f[0] = f[0] + x_p
    e = formal_exp(f)
    out = math.factorial(k) * e[k]
    return out if isinstance(out, RatPoly) else RatPoly.const(out)


# ---------------------------------------------------------------------------
# gamma family
# ---------------------------------------------------------------------------

def _near_nonpositive_integer(z, tol: float = 1e-13) -> bool:
    z = complex(z)
    if z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def log_gamma(z):
    """Principal-branch log Gamma for complex argument."""
    if np.isscalar(z) and _near_nonpositive_integer(z):
        raise GammaPoleError(f"log_gamma pole at z={z}")
    return _sp.loggamma(z)


def digamma(z):
    """Digamma psi(z) = Gamma'(z)/Gamma(z) for complex argument."""
    if np.isscalar(z) and _near_nonpositive_integer(z):
        raise GammaPoleError(f"digamma pole at z={z}")
    return _sp.digamma(z)


def trigamma(z):
    """Trigamma psi'(z) for complex argument (vectorized).

    Reflection for Re z < 1/2, upward recurrence to |z| >= 8, then the
    asymptotic series 1/z + 1/(2 z^2) + sum B_2k z^(-2k-1).
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z).copy()
    out = np.zeros_like(z)
    refl = z.real < 0.5
    sign = np.ones(z.shape)
    if np.any(refl):
        zr = z[refl]
        with np.errstate(over="ignore", invalid="ignore"):
            s = np.sin(np.pi * zr)
            out[refl] = np.pi**2 / (s * s)
        out[refl] = np.where(np.isfinite(out[refl]), out[refl], 0.0)
        z[refl] = 1.0 - zr
        sign = np.where(refl, -1.0, 1.0)
    acc = np.zeros_like(z)
    for _ in range(9):
        small = np.abs(z) < 8.0
        if not np.any(small):
            break
        acc[small] += 1.0 / (z[small] ** 2)
        z[small] += 1.0
    zi = 1.0 / z
    zi2 = zi * zi
    series = zi + 0.5 * zi2
    term = zi2 * zi
    for k in range(1, 8):
        series = series + float(bernoulli_number(2 * k)) * term
        term = term * zi2
    main = acc + series
    result = out + sign * main
    return result[0] if scalar else result


def pochhammer(z: complex, n: int) -> complex:
    """Pochhammer symbol (z)_n as an iterative product."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = 1.0 + 0.0j
    for i in range(n):
        acc *= z + i
    return acc


# ---------------------------------------------------------------------------
# Hurwitz zeta (Euler-Maclaurin) with s-derivative
# ---------------------------------------------------------------------------

def _poch_and_deriv(s: complex, m: int) -> tuple[complex, complex]:
    """(s)_m and d/ds (s)_m via the product rule (pole free)."""
    p = 1.0 + 0.0j
    dp = 0.0 + 0.0j
    for i in range(m):
        dp = dp * (s + i) + p
        p = p * (s + i)
    return p, dp


def hurwitz_zeta(s, a: float, derivative_order: int = 0,
                 shift_count: int | None = None, correction_order: int = 14):
    """Hurwitz zeta zeta_H(s, a) (or d/ds zeta_H for derivative_order=1).

    Euler-Maclaurin continuation valid for all complex s != 1 and a > 0.
    ``shift_count`` is the number of directly summed terms; the Bernoulli
    correction uses ``correction_order`` terms.  Deep in the left half-plane
    (Re s < -3.5) the values are tiny while the Euler-Maclaurin blocks are
    huge, so that region is served by the reflection/functional-equation
    form instead.
    """
    if derivative_order not in (0, 1):
        raise ValueError("derivative_order must be 0 or 1")
    if a <= 0:
        raise DomainError("hurwitz_zeta requires a > 0")
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise DomainError("hurwitz_zeta pole at s = 1")
    if s.real < -3.5:
        return _hurwitz_reflected(s, a, derivative_order)
    if shift_count is not None:
        K = shift_count
    elif s.real < -1.0:
        # small shift keeps the cancellation against the tiny answer in check
        K = max(8, int(1.2 * abs(s.real)) + 2, int(abs(s.imag)) + 6)
    else:
        K = max(18, int(abs(s)) + 12)
    J = correction_order
    ks = a + np.arange(K, dtype=float)
    ln_ks = np.log(ks)
    pw = np.exp(-s * ln_ks)
    w = a + K
    lnw = math.log(w)

    val = np.sum(pw) + w ** (1 - s) / (s - 1) + 0.5 * w ** (-s)
    if derivative_order == 0:
        acc = val
        for j in range(1, J + 1):
            p, _ = _poch_and_deriv(s, 2 * j - 1)
            acc += float(bernoulli_number(2 * j)) / math.factorial(2 * j) \
                * p * w ** (-s - 2 * j + 1)
        return acc

    dval = np.sum(-ln_ks * pw) \
        - lnw * w ** (1 - s) / (s - 1) - w ** (1 - s) / (s - 1) ** 2 \
        - 0.5 * lnw * w ** (-s)
    for j in range(1, J + 1):
        p, dp = _poch_and_deriv(s, 2 * j - 1)
        dval += float(bernoulli_number(2 * j)) / math.factorial(2 * j) \
            * (dp - p * lnw) * w ** (-s - 2 * j + 1)
    return dval


def _hurwitz_reflected(s: complex, a: float, derivative_order: int):
    """zeta_H for Re s < 0 through the functional equation

    zeta_H(s, a) = 2 (2 pi)^(s-1) Gamma(1-s)
                   [sin(pi s/2) C(a, 1-s) + cos(pi s/2) S(a, 1-s)],

    with C, S the cosine/sine Dirichlet series over cos/sin(2 pi n a); their
    exponent 1 - s has large real part here, so plain summation converges
    rapidly.  a > 1 is first reduced by the shift recurrence.
    """
    shift_val = 0.0 + 0.0j
    shift_dval = 0.0 + 0.0j
    while a > 1.0:
        a -= 1.0
        pw = np.exp(-s * math.log(a))
        shift_val -= pw
        shift_dval += math.log(a) * pw
    cser = sser = dcser = dsser = 0.0 + 0.0j
    n = 1
    while n < 200_000:
        w = math.exp((s.real - 1.0) * math.log(n))
        term = np.exp((s - 1.0) * math.log(n))
        cn, sn = math.cos(2 * math.pi * n * a), math.sin(2 * math.pi * n * a)
        cser += cn * term
        sser += sn * term
        if derivative_order:
            dcser += cn * math.log(n) * term
            dsser += sn * math.log(n) * term
        if n > 8 and w * n < 1e-18 * max(abs(cser), abs(sser), 1e-30):
            break
        n += 1
    g = _sp.gamma(1.0 - s)
    pref = 2.0 * np.exp((s - 1.0) * math.log(2.0 * math.pi)) * g
    si, co = np.sin(np.pi * s / 2.0), np.cos(np.pi * s / 2.0)
    val = pref * (si * cser + co * sser)
    if derivative_order == 0:
        return val + shift_val
    dval = (math.log(2.0 * math.pi) - _sp.digamma(1.0 - s)) * val \
        + pref * (0.5 * math.pi * (co * cser - si * sser) + si * dcser + co * dsser)
    return dval + shift_dval


def riemann_zeta(s, derivative_order: int = 0):
    """Riemann zeta via zeta_H(s, 1)."""
    return hurwitz_zeta(s, 1.0, derivative_order)


# ---------------------------------------------------------------------------
# generalized exponential integral E_k
# ---------------------------------------------------------------------------

def gen_exp_integral(k: int, z: complex, scaled: bool = False) -> complex:
    """Generalized exponential integral E_k(z), principal branch.

    ``scaled=True`` returns e^z E_k(z).  Power series for |z| <= 9, a
    modified-Lentz continued fraction for larger |z|; mpmath fallback in the
    slowly convergent wedge near the negative real axis.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    z = complex(z)
    if z == 0:
        raise DomainError("E_k(0) is singular (k=1) or trivially 1/(k-1); pass z != 0")
    if z.real < 0 and z.imag == 0:
        raise DomainError("branch cut of E_k along the negative real axis")
    if abs(z) <= 9.0:
        val = _expint_series(k, z)
        return val * np.exp(z) if scaled else val
    scaled_val = None
    if z.real >= 0.0 or abs(z.imag) > 0.5 * abs(z.real):
        scaled_val = _expint_cf(k, z)
    if scaled_val is None:
        # wedge around the negative real axis: the continued fraction converges
        # too slowly to be trusted there
        import mpmath
        v = complex(mpmath.expint(k, complex(z)))
        return v * np.exp(z) if scaled else v
    return scaled_val if scaled else scaled_val * np.exp(-z)


def _expint_series(k: int, z: complex) -> complex:
    # E_k(z) = ((-z)^(k-1)/(k-1)!) (psi(k) - ln z) - sum_{j != k-1} (-z)^j / ((j-k+1) j!)
    psik = -EULER_GAMMA + sum(1.0 / i for i in range(1, k))
    acc = (-z) ** (k - 1) / math.factorial(k - 1) * (psik - np.log(z))
    term = 1.0 + 0.0j  # (-z)^j / j!
    for j in range(0, 400):
        if j != k - 1:
            contrib = term / (j - k + 1)
            acc -= contrib
            if j > abs(z) and abs(contrib) < 1e-18 * max(1.0, abs(acc)):
                return acc
        term *= -z / (j + 1)
    raise ConvergenceError(f"E_{k} series did not converge at z={z}")


def _expint_cf(k: int, z: complex) -> complex | None:
    """Modified Lentz continued fraction for e^z E_k(z); None if too slow."""
    tiny = 1e-300
    b = z + k
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 400):
        a = -i * (k - 1 + i)
        b += 2.0
        d = a * d + b
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h
    return None


# ---------------------------------------------------------------------------
# Gauss hypergeometric series
# ---------------------------------------------------------------------------

def hyp2f1_series(a: complex, b: complex, c: complex, xi: float,
                  tol: float = 1e-15, delta: float = 1e-3,
                  max_terms: int = 100_000) -> complex:
    """2F1(a, b; c; xi) by direct summation on xi in [0, 1-delta].

    The series is the normalized-solution building block; behavior at xi -> 1
    is always routed through connection formulas by the callers, never through
    this sum.
    """
    if _near_nonpositive_integer(c):
        raise GammaPoleError(f"hyp2f1 parameter pole at c={c}")
    if not 0.0 <= xi:
        raise DomainError("xi must be nonnegative")
    if xi > 1.0 - delta:
        raise ConvergenceError(f"xi={xi} exceeds the convergence guard 1-delta={1 - delta}")
    acc = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * xi
        acc += term
        if n > 4 and abs(term) < tol * max(1.0, abs(acc)):
            # geometric tail bound with ratio -> xi
            q = xi * (1.0 + (abs(a) + abs(b)) / (n + 1.0))
            if q < 1.0 and abs(term) * q / (1.0 - q) < tol * max(1.0, abs(acc)):
                return acc
    raise ConvergenceError("hyp2f1 series did not converge")
