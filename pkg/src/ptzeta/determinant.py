"""zeta'(0) and (regularized) functional determinants.

For alpha = 0 the spectral zeta is regular at the origin and det =
exp(-zeta'(0)) works as usual.  For alpha in (0, pi) the origin is a
logarithmic branch point; the regularized determinant uses
zeta_reg(s) = zeta(s) + s ln s, whose derivative at 0 exists, and all
closed forms below push the branch data into explicit constants.

Imaginary parts: with a zero mode (m0 = 1) the formulas carry an i pi m0;
an extension with one negative eigenvalue carries Im zeta'(0) = +-pi, making
det negative -- exp(-zeta'(0)) is insensitive to the 2 pi i branch of the
individual logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .charfn import (
    DomainError,
    OperatorParams,
    SeparatedBC,
    characteristic,
    zero_mode_multiplicity,
)
from .specialfn import EULER_GAMMA, hurwitz_zeta

_LN_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class DetResult:
    zeta_prime_zero: complex
    det: complex
    regularized: bool
    F_limit_constant: complex
    m0: int

    def __post_init__(self):
        if abs(self.det - np.exp(-self.zeta_prime_zero)) > 1e-10 * max(1.0, abs(self.det)):
            raise ValueError("det must equal exp(-zeta'(0))")


def F_limit_constant(nu: float, alpha: float, beta: float) -> tuple[complex, int]:
    """The nonzero limit of z^(-m0) F(z) as z -> 0, and m0.

    m0 = 0 gives the small-z constant of the characteristic function; m0 = 1
    gives F'(0) by a one-sided 4th-order stencil on z in (0, 1e-2].
    """
    if not 0.0 < nu < 1.0:
        raise DomainError("nu must lie in (0,1)")
    params = OperatorParams(0.0, nu)
    bc = SeparatedBC.from_radians(alpha, beta)
    m0 = zero_mode_multiplicity(params, bc)
    if m0 == 0:
        c = complex(characteristic(params, bc, 0.0))
        if c == 0:
            raise DomainError("degenerate limit: F(0) = 0 but multiplicity 0 reported")
        return c, 0
    h = 2.5e-3
    f = [complex(characteristic(params, bc, k * h)) for k in range(5)]
    d = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    if abs(d) < 1e-10:
        raise DomainError("degenerate limit: both F(0) and F'(0) vanish numerically")
    return d, 1


def det_friedrichs(mu: float, nu: float) -> DetResult:
    """zeta'(0) and determinant of the (0,0) extension, any mu, nu in [0,1)."""
    if not (0.0 <= mu < 1.0 and 0.0 <= nu < 1.0):
        raise DomainError("(mu, nu) must lie in [0,1)^2")
    zp = (mu + nu) * math.log(2.0) + 2.0 * math.log(_sp.gamma((1.0 + mu + nu) / 2.0)) \
        - _LN_2PI
    c = complex(characteristic(OperatorParams(mu, nu),
                               SeparatedBC.from_pi_fractions(0, 0), 0.0))
    return DetResult(complex(zp), complex(np.exp(-zp)), False, c, 0)


def det_friedrichs_hurwitz_route(mu: float, nu: float) -> complex:
    """The same zeta'(0) through the Hurwitz-zeta derivative identity
    (independent route used for cross-checking)."""
    a = (1.0 + mu + nu) / 2.0
    return complex(-2.0 * math.log(2.0) * hurwitz_zeta(0.0, a)
                   + 2.0 * hurwitz_zeta(0.0, a, 1))


def det_regularized(nu: float, alpha: float, beta: float) -> DetResult:
    """Determinant of the mu = 0 extension (alpha, beta), regularized when
    alpha != 0 (branch point at the origin).

    Branches:
      alpha, beta in (0,pi): zeta_reg'(0) = -ln F_lim + ln[-G(-nu) sin a sin b
          / (2^(nu+2) pi)] - i pi m0 - gamma_E;
      beta = 0:               ... ln[-G(1+nu) sin(a) 2^(nu-1) / pi] ...;
      alpha = 0, beta in (0,pi): unregularized, without the gamma_E term and
          with ln[G(-nu) sin b / (2^(nu+1) pi)];
      alpha = beta = 0: the explicit Gamma form of the Friedrichs extension.
    """
    if not 0.0 < nu < 1.0:
        raise DomainError("nu must lie in (0,1)")
    bc = SeparatedBC.from_radians(alpha, beta)
    a_zero = bc.alpha.is_zero
    b_zero = bc.beta.is_zero
    if a_zero and b_zero:
        return det_friedrichs(0.0, nu)
    flim, m0 = F_limit_constant(nu, alpha, beta)
    if not a_zero and not b_zero:
        const = -_sp.gamma(-nu) * math.sin(alpha) * math.sin(beta) \
            / (2.0 ** (nu + 2.0) * math.pi)
        assert const > 0.0
        zp = -np.log(flim) + math.log(const) - 1j * math.pi * m0 - EULER_GAMMA
        reg = True
    elif b_zero:
        const = -_sp.gamma(1.0 + nu) * math.sin(alpha) * 2.0 ** (nu - 1.0) / math.pi
        zp = -np.log(flim) + np.log(complex(const)) - 1j * math.pi * m0 - EULER_GAMMA
        reg = True
    else:
        const = _sp.gamma(-nu) * math.sin(beta) / (2.0 ** (nu + 1.0) * math.pi)
        zp = -np.log(flim) + np.log(complex(const)) - 1j * math.pi * m0
        reg = False
    # collapse the 2 pi i logarithm ambiguity so Im zeta'(0) lands in (-pi, pi];
    # a negative eigenvalue carries +i pi in the contour branch convention
    im = math.remainder(zp.imag, 2.0 * math.pi)
    if im <= -math.pi + 1e-12:
        im += 2.0 * math.pi
    zp = complex(zp.real, 0.0 if abs(im) < 1e-9 else im)
    return DetResult(zp, complex(np.exp(-zp)), reg, flim, m0)


def det_dirichlet_wall_closed_form(nu: float) -> complex:
    """zeta'(0) of the (0, pi/2) extension: 2 ln Gamma((1-nu)/2) - nu ln 2
    - ln 2 pi (the explicit reduction of the alpha = 0 branch)."""
    return complex(2.0 * math.log(_sp.gamma((1.0 - nu) / 2.0))
                   - nu * math.log(2.0) - _LN_2PI)


def det_dirichlet_wall_hurwitz_route(nu: float) -> complex:
    """The same zeta'(0) through the Hurwitz identity (independent route)."""
    a = (1.0 - nu) / 2.0
    return complex(-2.0 * math.log(2.0) * hurwitz_zeta(0.0, a)
                   + 2.0 * hurwitz_zeta(0.0, a, 1))
