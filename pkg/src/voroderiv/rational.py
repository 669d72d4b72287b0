"""Rational functions in polar form and their iterated derivatives.

A rational function with poles z_1..z_d of orders r_1..r_d is stored as
its partial-fraction data: per pole, the coefficients a_{i,1}..a_{i,r_i}
of 1/(z-z_i)^j, plus an optional polynomial part.  Differentiation is
exact on this representation.  Internally the n-th derivative is kept
divided by n!, so coefficient magnitudes grow only polynomially in n
and the double backend stays usable to n of order a hundred.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _poly
from ._poly import DOUBLE, EXTENDED
from .errors import DegreeCollapse, DuplicatePole, SharedRoot

__all__ = [
    "PolarForm",
    "DerivativeState",
    "NumeratorResult",
    "polar_decompose",
    "polar_form",
    "derivative",
    "numerator",
    "newton_evaluator",
    "degree_diagnostics",
    "single_pole_derivative",
    "single_pole_numerator_scaled",
]


@dataclass(frozen=True)
class PolarForm:
    """Poles, orders, polar coefficients and polynomial part.

    coeffs[i] lists a_{i,1}..a_{i,r_i}, least to most singular; the top
    coefficient a_{i,r_i} must be nonzero.
    """

    poles: tuple
    orders: tuple
    coeffs: tuple
    polynomial_part: np.ndarray
    precision: str = DOUBLE

    def __post_init__(self):
        if len(self.poles) < 1:
            raise ValueError("need at least one pole")
        locs = list(self.poles)
        scale = max(max(abs(z) for z in locs), 1.0)
        for i in range(len(locs)):
            for j in range(i + 1, len(locs)):
                if abs(locs[i] - locs[j]) <= 1e-14 * scale:
                    raise DuplicatePole(f"poles {i} and {j} coincide")
        for i, (r, cs) in enumerate(zip(self.orders, self.coeffs)):
            if r < 1 or len(cs) != r:
                raise ValueError(f"pole {i}: order/coefficient mismatch")
            if abs(cs[-1]) == 0.0:
                raise ValueError(f"pole {i}: top coefficient is zero")

    @property
    def d(self):
        return len(self.poles)

    @property
    def r(self):
        return sum(self.orders)

    def evaluate(self, z):
        """Value of the function at z (z not a pole)."""
        acc = _poly.polyval(self.polynomial_part, z)
        for zi, cs in zip(self.poles, self.coeffs):
            w = 1.0 / (z - zi)
            wp = w
            for a in cs:
                acc = acc + a * wp
                wp = wp * w
        return acc

    def denominator(self):
        """P = prod (z - z_i)^{r_i}, ascending coefficients."""
        p = _poly.asarray([1.0], self.precision)
        for zi, r in zip(self.poles, self.orders):
            lin = _poly.asarray([-zi, 1.0], self.precision)
            p = _poly.polymul(p, _poly.polypow(lin, r))
        return p

    def simple_denominator(self):
        """prod (z - z_i), each pole once."""
        p = _poly.asarray([1.0], self.precision)
        for zi in self.poles:
            p = _poly.polymul(p, _poly.asarray([-zi, 1.0], self.precision))
        return p


@dataclass(frozen=True)
class DerivativeState:
    """The n-th derivative of a PolarForm, scaled by 1/n!.

    scaled_coeffs[i][j-1] holds c_{i,j,n} = a_{i,j} (-1)^n (j)_n / n!,
    so that Q^{(n)}(z)/n! = sum_ij c_{i,j,n} (z-z_i)^{-(j+n)} plus the
    scaled polynomial-part derivative.
    """

    base: PolarForm
    n: int = 0
    scaled_coeffs: tuple = None
    poly_part_scaled: np.ndarray = None

    def __post_init__(self):
        if self.scaled_coeffs is None:
            object.__setattr__(self, "scaled_coeffs", tuple(tuple(cs) for cs in self.base.coeffs))
        if self.poly_part_scaled is None:
            object.__setattr__(self, "poly_part_scaled", self.base.polynomial_part)

    def evaluate(self, z):
        """Q^{(n)}(z) / n! at a non-pole point z."""
        acc = _poly.polyval(self.poly_part_scaled, z)
        for zi, cs in zip(self.base.poles, self.scaled_coeffs):
            w = 1.0 / (z - zi)
            wp = w ** (1 + self.n)
            for c in cs:
                acc = acc + c * wp
                wp = wp * w
        return acc


@dataclass(frozen=True)
class NumeratorResult:
    """Monic numerator R_n of Q^{(n)} with its scale factor.

    Q^{(n)} = alpha_n R_n / (P P0^n) where P0 = prod (z - z_i).  The
    scale is stored factorial-free as alpha_n / n! to avoid overflow;
    alpha_n itself may be inf for large n.
    """

    r_n: np.ndarray
    alpha_over_factorial: complex
    degree: int
    n: int

    @property
    def alpha_n(self):
        a = _poly.to_complex(self.alpha_over_factorial)
        try:
            return math.factorial(self.n) * a
        except OverflowError:
            return complex(math.inf, math.inf)

    @property
    def log_factorial_over_alpha(self):
        """log |n! / alpha_n| computed without forming n!."""
        return -math.log(abs(self.alpha_over_factorial))


def polar_form(poles, orders, coeffs, polynomial_part=None, precision=DOUBLE):
    """Build a PolarForm from plain python data."""
    pp = _poly.asarray(polynomial_part if polynomial_part is not None else [0.0], precision)
    return PolarForm(
        poles=tuple(_poly.scalar(z, precision) for z in poles),
        orders=tuple(int(r) for r in orders),
        coeffs=tuple(tuple(_poly.scalar(c, precision) for c in cs) for cs in coeffs),
        polynomial_part=pp,
        precision=precision,
    )


def polar_decompose(numer, denominator_poles, precision=DOUBLE, rng=None):
    """Partial-fraction decomposition of numer / prod (z-z_i)^{r_i}.

    denominator_poles is a list of (location, order) with distinct
    locations, and the numerator must not vanish at any pole.  If the
    numerator degree reaches the denominator degree, the polynomial
    quotient is retained as the polynomial part.
    """
    numer = _poly.trim(_poly.asarray(numer, precision))
    poles = [_poly.scalar(z, precision) for z, _ in denominator_poles]
    orders = [int(r) for _, r in denominator_poles]
    scale = max(max(abs(z) for z in poles), 1.0)
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if abs(poles[i] - poles[j]) <= 1e-14 * scale:
                raise DuplicatePole(f"poles {i} and {j} coincide")

    # reject a shared root: numerator value at each pole vs its own scale
    for zi in poles:
        mag = sum(abs(c) * max(1.0, abs(zi)) ** k for k, c in enumerate(numer))
        if abs(_poly.polyval(numer, zi)) <= 1e-10 * mag:
            raise SharedRoot(f"numerator vanishes at pole {complex(zi)}")

    denom = _poly.asarray([1.0], precision)
    for zi, r in zip(poles, orders):
        denom = _poly.polymul(denom, _poly.polypow(_poly.asarray([-zi, 1.0], precision), r))

    poly_part = _poly.zeros(1, precision)
    rem = numer
    if _poly.degree(numer) >= _poly.degree(denom):
        poly_part, rem = _poly.polydivmod(numer, denom)

    coeffs = []
    for i, (zi, ri) in enumerate(zip(poles, orders)):
        # Taylor coefficients at z_i of rem / prod_{l != i} (z-z_l)^{r_l}
        num_shift = _poly.taylor_shift(rem, zi)
        den = _poly.asarray([1.0], precision)
        for l, (zl, rl) in enumerate(zip(poles, orders)):
            if l == i:
                continue
            den = _poly.polymul(den, _poly.polypow(_poly.asarray([zi - zl, 1.0], precision), rl))
        inv = _poly.series_inverse(den, ri)
        tay = _poly.polymul(num_shift[: ri + 1] if len(num_shift) > ri else num_shift, inv)
        # a_{i, r_i - k} = k-th Taylor coefficient
        cs = [None] * ri
        for k in range(ri):
            cs[ri - 1 - k] = tay[k] if k < len(tay) else _poly.scalar(0.0, precision)
        # top coefficient is rem(z_i)/den(z_i), nonzero by the gcd check
        coeffs.append(tuple(cs))

    form = PolarForm(tuple(poles), tuple(orders), tuple(coeffs), poly_part, precision)

    # recombination check at random points
    rng = np.random.default_rng(0) if rng is None else rng
    for _ in range(20):
        z = _poly.scalar(complex(rng.normal(), rng.normal()) * 2.0 * scale, precision)
        if min(abs(z - zi) for zi in poles) < 0.1 * scale:
            continue
        lhs = form.evaluate(z)
        rhs = _poly.polyval(numer, z) / _poly.polyval(denom, z)
        if abs(lhs - rhs) > 1e-10 * max(1.0, abs(rhs)):
            raise ArithmeticError("partial fraction recombination check failed")
    return form


def derivative(state):
    """One more derivative: c_{i,j,n+1} = -c_{i,j,n} (j+n)/(n+1)."""
    n = state.n
    new_coeffs = tuple(
        tuple(-c * (j + 1 + n) / (n + 1) for j, c in enumerate(cs))
        for cs in state.scaled_coeffs
    )
    pp = _poly.polyder(state.poly_part_scaled) / (n + 1)
    return DerivativeState(state.base, n + 1, new_coeffs, pp)


def derivative_state(form, n=0):
    """DerivativeState for Q^{(n)} obtained by iterating from n = 0."""
    st = DerivativeState(form)
    for _ in range(n):
        st = derivative(st)
    return st


def numerator(state, rel_floor=None):
    """Monic numerator R_n and scale of Q^{(n)} = alpha_n R_n/(P P0^n).

    Expands sum_ij c_{i,j,n} prod_{k != i}(z-z_k)^{r_k+n} (z-z_i)^{r_i-j}
    by convolution of linear factors with compensated accumulation,
    strips leading coefficients below the relative floor, and reports
    the monic polynomial together with alpha_n / n!.
    """
    base = state.base
    precision = base.precision
    if not _poly.is_zero(base.polynomial_part, abs_floor=0.0):
        raise ValueError("numerator extraction requires zero polynomial part")
    if rel_floor is None:
        rel_floor = _poly.DEGREE_FLOOR[precision]
    n = state.n
    m_max = n * (base.d - 1) + base.r - 1 if base.d > 1 else base.r - 1
    total = _poly.zeros(max(m_max + 1, 1), precision)
    comp = _poly.zeros(max(m_max + 1, 1), precision)
    absacc = np.zeros(max(m_max + 1, 1))
    for i, zi in enumerate(base.poles):
        g = _poly.asarray([1.0], precision)
        for k, zk in enumerate(base.poles):
            if k == i:
                continue
            g = _poly.polymul(g, _poly.polypow(
                _poly.asarray([-zk, 1.0], precision), base.orders[k] + n))
        ri = base.orders[i]
        inner = _poly.zeros(ri, precision)
        lin_pow = _poly.asarray([1.0], precision)
        lin = _poly.asarray([-zi, 1.0], precision)
        # inner = sum_j c_{i,j,n} (z - z_i)^{r_i - j}
        for j in range(ri, 0, -1):
            c = state.scaled_coeffs[i][j - 1]
            inner[: len(lin_pow)] += c * lin_pow
            lin_pow = _poly.polymul(lin_pow, lin)
        term = _poly.polymul(g, _poly.trim(inner))
        if precision == DOUBLE:
            total[: len(term)], comp[: len(term)] = _poly.compensated_accumulate(
                total[: len(term)], comp[: len(term)], term)
        else:
            total[: len(term)] += term
        absacc[: len(term)] += np.array([float(abs(c)) for c in term])
    # A leading coefficient counts as cancelled when it is small relative
    # to the magnitudes that were summed into that slot, not relative to
    # the largest coefficient overall (interior coefficients of the
    # expanded products can dwarf a genuine small leading coefficient).
    hi = len(total) - 1
    while hi >= 0 and abs(total[hi]) <= rel_floor * absacc[hi]:
        hi -= 1
    if hi < 0:
        raise DegreeCollapse("numerator collapsed below the coefficient floor")
    stripped = total[: hi + 1]
    lead = stripped[-1]
    r_n = stripped / lead
    return NumeratorResult(
        r_n=r_n,
        alpha_over_factorial=lead,
        degree=_poly.degree(r_n),
        n=n,
    )


def newton_evaluator(state):
    """Point evaluator (value, derivative) of the unexpanded numerator.

    Returns a callable mapping an array of points to (N, N') up to a
    common per-point scale factor, computed from the sum of products
    form rather than expanded coefficients.  At large n the expanded
    coefficients span hundreds of orders of magnitude and coefficient
    Horner loses the roots to cancellation; the product form stays
    well conditioned, so root iterations can use this callable in
    place of Horner.  Only the ratio N/N' and the residual |N|/|N'|
    are meaningful.
    """
    base = state.base
    if not _poly.is_zero(base.polynomial_part, abs_floor=0.0):
        raise ValueError("numerator evaluation requires zero polynomial part")
    poles = np.array([complex(p) for p in base.poles])
    orders = np.array(base.orders, dtype=int)
    n = state.n
    d = base.d
    inners = []
    for i in range(d):
        ri = orders[i]
        c = np.array([complex(v) for v in state.scaled_coeffs[i]])
        # inner_i(z) = sum_j c_{i,j} (z - z_i)^{r_i - j}, j = 1..r_i
        inner = np.zeros(ri, dtype=complex)
        for j in range(1, ri + 1):
            inner[ri - j] = c[j - 1]
        inners.append(inner)

    def eval_pd(z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        logb = np.empty((d,) + z.shape, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.log(z[None, :] - poles[:, None])
        for i in range(d):
            acc = np.zeros(z.shape, dtype=complex)
            for k in range(d):
                if k != i:
                    acc += (orders[k] + n) * logs[k]
            logb[i] = acc
        scale = logb.real.max(axis=0)
        pv = np.zeros(z.shape, dtype=complex)
        dv = np.zeros(z.shape, dtype=complex)
        for i in range(d):
            w = z - poles[i]
            iv = _poly.polyval(inners[i], z - poles[i]) if len(inners[i]) else 0.0
            ivd = _poly.polyval(_poly.polyder(inners[i]), w) if len(inners[i]) > 1 else 0.0
            s = np.zeros(z.shape, dtype=complex)
            for k in range(d):
                if k != i:
                    s += (orders[k] + n) / (z - poles[k])
            b = np.exp(logb[i] - scale)
            pv += b * iv
            dv += b * (s * iv + ivd)
        return pv, dv

    return eval_pd


def numerators(form, n_list):
    """NumeratorResults for the requested derivative orders (sorted)."""
    out = {}
    st = DerivativeState(form)
    top = max(n_list)
    want = set(n_list)
    for n in range(top + 1):
        if n in want:
            out[n] = numerator(st)
        if n < top:
            st = derivative(st)
    return [out[n] for n in sorted(want)]


def degree_diagnostics(results):
    """Sequences (n, deg R_n / n, log|n!/alpha_n| / n) per result."""
    rows = []
    for res in results:
        n = res.n
        if n == 0:
            continue
        rows.append((n, res.degree / n, res.log_factorial_over_alpha / n))
    return rows


def single_pole_derivative(numer, pole, order, n, precision=DOUBLE):
    """Numerator of the n-th derivative of numer(z)/(z-pole)^order.

    Uses the Taylor expansion of the numerator about the pole: terms of
    Taylor order below `order` keep the pole, higher terms are plain
    polynomials that differentiate away.  Returned over the denominator
    (z - pole)^{order + n}, unscaled.
    """
    numer = _poly.trim(_poly.asarray(numer, precision))
    pole = _poly.scalar(pole, precision)
    mag = sum(abs(c) * max(1.0, abs(pole)) ** k for k, c in enumerate(numer))
    if abs(_poly.polyval(numer, pole)) <= 1e-10 * mag:
        raise SharedRoot("numerator vanishes at the pole")
    m = int(order)
    dtil = _poly.degree(numer)
    tay = _poly.taylor_shift(numer, pole)  # coefficients R^{(k)}(pole)/k!
    out = _poly.zeros(max(dtil + 1, 1), precision)
    sign = -1.0 if n % 2 else 1.0
    for k in range(min(m - 1, dtil) + 1):
        # (n+m-k-1)! / (m-k-1)!  as an explicit product of n factors
        fac = 1.0
        for j in range(m - k, n + m - k):
            fac *= j
        out[k] += sign * tay[k] * fac
    for k in range(m, dtil + 1):
        e = k - m
        if e < n:
            continue
        fac = 1.0
        for j in range(e - n + 1, e + 1):
            fac *= j
        # ((z-a)^e)^{(n)} = fac (z-a)^{e-n}; over (z-a)^{m+n} -> (z-a)^{k}... no:
        # (z-a)^{e-n} = (z-a)^{k-m-n}; multiplied by (z-a)^{m+n} gives (z-a)^k
        out[k] += tay[k] * fac
    out = _poly.trim(out)
    # shift back from powers of (z - pole) to powers of z
    return _poly.taylor_shift(out, -pole)


def single_pole_numerator_scaled(numer, pole, order, n):
    """Same zero set as single_pole_derivative, scaled to avoid overflow.

    Coefficients are divided by (n+order-1)!/(order-1)! using log-gamma
    ratios, so the polynomial stays representable for any n.  Double
    backend only; intended for large-n zero searches.
    """
    numer = _poly.trim(_poly.asarray(numer, DOUBLE))
    pole = complex(pole)
    m = int(order)
    dtil = _poly.degree(numer)
    tay = _poly.taylor_shift(numer, pole)
    out = np.zeros(max(dtil + 1, 1), dtype=complex)
    sign = -1.0 if n % 2 else 1.0
    log_ref = math.lgamma(n + m) - math.lgamma(m)
    for k in range(min(m - 1, dtil) + 1):
        logfac = math.lgamma(n + m - k) - math.lgamma(m - k)
        out[k] += sign * tay[k] * math.exp(logfac - log_ref)
    for k in range(m, dtil + 1):
        e = k - m
        if e < n:
            continue
        logfac = math.lgamma(e + 1) - math.lgamma(e - n + 1)
        out[k] += tay[k] * math.exp(logfac - log_ref)
    out = _poly.trim(out, 1e-300)
    return _poly.taylor_shift(out, -pole)
