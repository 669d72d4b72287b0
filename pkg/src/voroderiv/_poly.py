"""Dense polynomial helpers over two scalar backends.

Polynomials are 1-d arrays of coefficients in ascending degree order.
The "double" backend uses complex128 ndarrays; the "extended" backend
uses object ndarrays of mpmath.mpc with ~133 bits of precision, enough
headroom for the exact cancellations that double cannot resolve.
"""

import numpy as np
import mpmath

DOUBLE = "double"
EXTENDED = "extended"

# 40 digits ~ 133 bits; comfortably above the 64 fractional bits needed.
EXTENDED_DPS = 40

# Relative floor below which a coefficient counts as zero when trimming
# leading terms.  The double value matches the noise of compensated
# double expansion; the extended value leaves ~15 digits of headroom.
DEGREE_FLOOR = {DOUBLE: 1e-12, EXTENDED: 1e-25}


def workprec():
    """Context manager setting the extended-precision digit count."""
    return mpmath.workdps(EXTENDED_DPS)


def scalar(x, precision=DOUBLE):
    if precision == DOUBLE:
        return complex(x)
    with workprec():
        if isinstance(x, complex):
            return mpmath.mpc(x.real, x.imag)
        return mpmath.mpc(x)


def asarray(coeffs, precision=DOUBLE):
    if precision == DOUBLE:
        a = np.asarray(coeffs, dtype=complex)
        if a.ndim == 0:
            a = a.reshape(1)
        return a.copy()
    out = np.empty(max(len(coeffs), 1), dtype=object)
    if len(coeffs) == 0:
        out[0] = scalar(0.0, EXTENDED)
        return out
    for k, c in enumerate(coeffs):
        out[k] = scalar(c, EXTENDED)
    return out


def zeros(n, precision=DOUBLE):
    if precision == DOUBLE:
        return np.zeros(n, dtype=complex)
    out = np.empty(n, dtype=object)
    z = scalar(0.0, EXTENDED)
    for k in range(n):
        out[k] = z
    return out


def precision_of(p):
    return DOUBLE if p.dtype == complex else EXTENDED


def trim(p, rel_floor=0.0):
    """Drop leading coefficients of magnitude <= rel_floor * max |coeff|."""
    mags = np.array([abs(c) for c in p], dtype=float)
    top = mags.max() if mags.size else 0.0
    cut = rel_floor * top
    k = len(p) - 1
    while k > 0 and mags[k] <= cut:
        k -= 1
    return p[: k + 1]


def is_zero(p, rel_floor=0.0, abs_floor=0.0):
    return all(abs(c) <= abs_floor for c in p) or (
        len(trim(p, rel_floor)) == 1 and abs(p[0]) <= abs_floor
    )


def degree(p):
    return len(p) - 1


def polyval(p, z):
    """Horner evaluation; works for scalars of either backend."""
    acc = p[-1]
    for c in p[-2::-1]:
        acc = acc * z + c
    return acc


def polyadd(a, b):
    n = max(len(a), len(b))
    precision = precision_of(a)
    out = zeros(n, precision)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


def polysub(a, b):
    n = max(len(a), len(b))
    precision = precision_of(a)
    out = zeros(n, precision)
    out[: len(a)] += a
    out[: len(b)] -= b
    return out


def polymul(a, b):
    if precision_of(a) == DOUBLE and precision_of(b) == DOUBLE:
        return np.convolve(a, b)
    out = zeros(len(a) + len(b) - 1, EXTENDED)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def polypow(p, k):
    """p**k by binary exponentiation."""
    if k == 0:
        return asarray([1.0], precision_of(p))
    result = None
    base = p
    while k:
        if k & 1:
            result = base if result is None else polymul(result, base)
        k >>= 1
        if k:
            base = polymul(base, base)
    return result


def polyder(p):
    precision = precision_of(p)
    if len(p) == 1:
        return zeros(1, precision)
    out = zeros(len(p) - 1, precision)
    for k in range(1, len(p)):
        out[k - 1] = p[k] * k
    return out


def taylor_shift(p, a):
    """Coefficients of p(z + a), by repeated synthetic division at a."""
    precision = precision_of(p)
    work = asarray(list(p), precision)
    n = len(work)
    out = zeros(n, precision)
    for k in range(n):
        if len(work) == 1:
            out[k] = work[0]
            break
        quot = zeros(len(work) - 1, precision)
        acc = work[-1]
        for j in range(len(work) - 2, -1, -1):
            quot[j] = acc
            acc = acc * a + work[j]
        out[k] = acc
        work = quot
    return out


def series_inverse(p, order):
    """First `order` coefficients of 1/p as a power series; p[0] != 0."""
    precision = precision_of(p)
    inv = zeros(order, precision)
    inv[0] = 1.0 / p[0] if precision == DOUBLE else scalar(1.0, EXTENDED) / p[0]
    for k in range(1, order):
        acc = zeros(1, precision)[0]
        for j in range(1, min(k, len(p) - 1) + 1):
            acc = acc + p[j] * inv[k - j]
        inv[k] = -acc / p[0]
    return inv


def monic(p):
    return p / p[-1]


def polydivmod(a, b):
    """Quotient and remainder of a / b (b trimmed, nonzero lead)."""
    precision = precision_of(a)
    b = trim(b)
    if len(a) < len(b):
        return zeros(1, precision), a.copy()
    rem = asarray(list(a), precision)
    qn = len(a) - len(b) + 1
    quot = zeros(qn, precision)
    for k in range(qn - 1, -1, -1):
        c = rem[k + len(b) - 1] / b[-1]
        quot[k] = c
        for j in range(len(b)):
            rem[k + j] = rem[k + j] - c * b[j]
    return quot, trim(rem)


def compensated_accumulate(total, comp, term):
    """Kahan step: add `term` into `total` with running compensation.

    Only meaningful on the double backend; on the extended backend the
    compensation is a harmless no-op refinement.
    """
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def to_complex(x):
    """Backend scalar -> python complex (for reporting, never for math)."""
    if isinstance(x, complex):
        return x
    return complex(float(x.real), float(x.imag))
