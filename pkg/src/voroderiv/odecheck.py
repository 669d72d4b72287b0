"""Residuals of the differential equations satisfied by the derivatives.

Two concrete checks: the order-d equation obeyed by derivatives of
power sums sum_j w_j (z - z_j)^{-s}, and the second-order equation for
the monic numerator in the two-simple-pole case.  Residuals come back
both raw and relative to the largest term, since the raw terms grow
with Pochhammer factors.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _poly
from .errors import AtPole

__all__ = [
    "PowerSumFunction",
    "powersum_residual",
    "d2_numerator_residual",
]


@dataclass(frozen=True)
class PowerSumFunction:
    """Q(z) = sum_j weights[j] (z - poles[j])^{-s}."""

    s: int
    poles: tuple
    weights: tuple

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("order s must be positive")
        if any(w == 0 for w in self.weights):
            raise ValueError("weights must be nonzero")
        ps = [complex(p) for p in self.poles]
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                if ps[i] == ps[j]:
                    raise ValueError("poles must be distinct")

    @property
    def d(self):
        return len(self.poles)

    def derivative_at(self, n, z):
        """Q^{(n)}(z) = (-1)^n (s)_n sum_j w_j (z - z_j)^{-s-n}."""
        z = complex(z)
        poch = 1.0
        for k in range(n):
            poch *= self.s + k
        sign = -1.0 if n % 2 else 1.0
        acc = 0.0 + 0.0j
        for zj, wj in zip(self.poles, self.weights):
            acc += complex(wj) * (z - complex(zj)) ** (-self.s - n)
        return sign * poch * acc


def _elementary_symmetric(values):
    """e_0..e_d of the given scalars, by the product expansion."""
    coeffs = [1.0 + 0.0j]
    for v in values:
        nxt = [0.0 + 0.0j] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c
            nxt[k + 1] += c * v
        coeffs = nxt
    # prod (t + v_j) = sum e_k t^{d-k}; coeffs is ascending in v-products
    return coeffs


def powersum_residual(f, n, z, relative=True):
    """Left side of the power-sum derivative equation; expected zero.

    sum_{i=0}^d e_i(z) / ((s+n)(s+n+1)...(s+n+i-1)) Q^{(n+i)}(z) with
    e_i the elementary symmetric functions of (z - z_1) .. (z - z_d).
    """
    z = complex(z)
    for zj in f.poles:
        if z == complex(zj):
            raise AtPole("z coincides with a pole")
    e = _elementary_symmetric([z - complex(zj) for zj in f.poles])
    acc = 0.0 + 0.0j
    biggest = 0.0
    denom = 1.0
    for i in range(f.d + 1):
        if i > 0:
            denom *= f.s + n + i - 1
        term = e[i] * f.derivative_at(n + i, z) / denom
        acc += term
        biggest = max(biggest, abs(term))
    if relative and biggest > 0.0:
        return acc / biggest
    return acc


def d2_numerator_residual(z1, z2, n, z, printed=False, relative=True):
    """ODE residual for the monic numerator of the n-th derivative of
    1/(z-z1) + 1/(z-z2); zero identically with the corrected weights.

    R_n is proportional to (z-z1)^{n+1} + (z-z2)^{n+1}.  The corrected
    equation is P0 R''/(n(n+1)) - e1 R'/(n+1) + R = 0 with
    P0 = (z-z1)(z-z2), e1 = 2z - z1 - z2.  With printed=True the
    second-derivative weight uses (n+1)(n+2) instead, which leaves a
    nonzero polynomial remainder; it is returned as a witness.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    z1, z2, z = complex(z1), complex(z2), complex(z)
    lin1 = _poly.asarray([-z1, 1.0])
    lin2 = _poly.asarray([-z2, 1.0])
    r = _poly.polyadd(_poly.polypow(lin1, n + 1), _poly.polypow(lin2, n + 1))
    r = r / r[-1]
    dr = _poly.polyder(r)
    ddr = _poly.polyder(dr)
    p0 = (z - z1) * (z - z2)
    e1 = 2.0 * z - z1 - z2
    second_weight = (n + 1) * (n + 2) if printed else n * (n + 1)
    terms = (
        p0 * _poly.polyval(ddr, z) / second_weight,
        -e1 * _poly.polyval(dr, z) / (n + 1),
        _poly.polyval(r, z),
    )
    acc = sum(terms)
    if relative:
        biggest = max(abs(t) for t in terms)
        return acc / biggest if biggest > 0 else acc
    return acc
