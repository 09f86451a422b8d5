"""Closed-form and iterative root machinery.

The cubic ``x**3 +/- 3x - 2Y = 0`` and quartic ``4x**4 +/- 8x - 3Y = 0`` have a
single nonnegative root for every ``Y >= 0``; :func:`cubic_F` and
:func:`quartic_G` evaluate these roots from their radical forms, rewritten to
avoid cancellation, and then apply one or two Newton steps.  The module also
carries the secondary Lambert branch, zeros of the regular Airy function and a
generic bracketed root finder used throughout the package.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .errors import BracketError, DomainError

__all__ = [
    "SignChoice",
    "RootBracket",
    "cubic_F",
    "quartic_G",
    "lambert_w_m1",
    "one_plus_wm1_from_gap",
    "airy_ai",
    "airy_zero",
    "airy_zero_wkb",
    "bracketed_root",
]

ALGEBRAIC_RTOL = 1e-12
AIRY_ATOL = 1e-8

# Ai(0) and -Ai'(0)
_AI0 = 0.355028053887817239
_AIP0 = 0.258819403792806798


class SignChoice(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is SignChoice.PLUS else -1

    @classmethod
    def coerce(cls, value) -> "SignChoice":
        if isinstance(value, cls):
            return value
        if value in ("+", "plus", 1, +1):
            return cls.PLUS
        if value in ("-", "minus", -1):
            return cls.MINUS
        raise DomainError(f"unknown sign {value!r}")


@dataclass(frozen=True)
class RootBracket:
    """Closed interval ``[lo, hi]`` searched to an absolute ``tolerance``."""

    lo: float
    hi: float
    tolerance: float = 1e-14

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tolerance > 0:
            raise DomainError("bracket tolerance must be positive")


def bracketed_root(f: Callable[[float], float], bracket: RootBracket,
                   rtol: float = 4 * sys.float_info.epsilon, maxiter: int = 200) -> float:
    """Find a root of ``f`` inside ``bracket``.

    Brent's method (bisection safeguarding secant and inverse quadratic
    steps); deterministic for a given ``f``.  An endpoint where ``f``
    vanishes is returned as is.

    Raises
    ------
    BracketError
        If ``f`` has the same strict sign at both ends.
    """
    flo = f(bracket.lo)
    if flo == 0.0:
        return float(bracket.lo)
    fhi = f(bracket.hi)
    if fhi == 0.0:
        return float(bracket.hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise BracketError(f"non-finite function values at bracket ends ({flo}, {fhi})")
    if (flo > 0) == (fhi > 0):
        raise BracketError(
            f"no sign change on [{bracket.lo}, {bracket.hi}]: f = ({flo:.6g}, {fhi:.6g})")
    return float(brentq(f, bracket.lo, bracket.hi, xtol=bracket.tolerance,
                        rtol=rtol, maxiter=maxiter))


def _check_y(Y: float) -> float:
    Y = float(Y)
    if not Y >= 0.0:
        raise DomainError(f"Y must be nonnegative, got {Y}")
    return Y


def _newton(f, df, x, steps=3):
    for _ in range(steps):
        d = df(x)
        if d == 0.0:
            break
        step = f(x) / d
        x -= step
        if abs(step) <= 1e-16 * abs(x):
            break
    return x


def cubic_F(sign, Y: float) -> float:
    """Unique positive root of ``x**3 +/- 3x - 2Y = 0``.

    ``F_-`` is taken from the trigonometric form below ``Y = 1`` and from the
    radical form above; the two coincide (value 2) at ``Y = 1``.
    """
    s = SignChoice.coerce(sign)
    Y = _check_y(Y)
    if s is SignChoice.PLUS:
        if Y == 0.0:
            return 0.0
        t = Y + math.hypot(Y, 1.0)
        a = t ** (1.0 / 3.0)
        # a - 1/a rewritten as 2Y / (a^2 + 1 + a^-2)
        x = 2.0 * Y / (a * a + 1.0 + 1.0 / (a * a))
        f = lambda x: x * x * x + 3.0 * x - 2.0 * Y
        df = lambda x: 3.0 * x * x + 3.0
    else:
        if Y < 1.0:
            x = 2.0 * math.cos(math.acos(Y) / 3.0)
        else:
            t = Y + math.sqrt((Y - 1.0) * (Y + 1.0))
            a = t ** (1.0 / 3.0)
            x = a + 1.0 / a
        f = lambda x: x * x * x - 3.0 * x - 2.0 * Y
        df = lambda x: 3.0 * x * x - 3.0
    return _newton(f, df, x, steps=2)


def _quartic_v(Y: float) -> float:
    s = 2.0 + math.sqrt(4.0 + Y ** 3)
    s13 = s ** (1.0 / 3.0)
    s23 = s13 * s13
    # s^(1/3) - Y s^(-1/3) == 4 s^(2/3) / (s^(4/3) + s^(2/3) Y + Y^2)
    return 4.0 * s23 / (s23 * s23 + s23 * Y + Y * Y)


def quartic_G(sign, Y: float) -> float:
    """Unique nonnegative root of ``4x**4 +/- 8x - 3Y = 0``."""
    s = SignChoice.coerce(sign)
    Y = _check_y(Y)
    if s is SignChoice.PLUS and Y == 0.0:
        return 0.0
    V = _quartic_v(Y)
    rv = math.sqrt(V)
    inner = math.sqrt(max(4.0 / rv - V, 0.0))
    eps = float(s.factor)
    if s is SignChoice.PLUS:
        # (inner - rv)/2 with the difference of square roots rationalized
        x = 0.5 * (4.0 / rv - 2.0 * V) / (inner + rv)
        if x <= 0.0:
            x = 3.0 * Y / 8.0
    else:
        x = 0.5 * (rv + inner)
    f = lambda x: 4.0 * x ** 4 + eps * 8.0 * x - 3.0 * Y
    df = lambda x: 16.0 * x ** 3 + eps * 8.0
    return _newton(f, df, x, steps=3)


_INV_E = math.exp(-1.0)
_BRANCH_ATOL = 1e-15


def lambert_w_m1(x: float, rtol: float = 1e-15, maxiter: int = 60) -> float:
    """Secondary real branch ``W_-1`` of the Lambert function.

    Solves ``w * exp(w) = x`` with ``w <= -1`` for ``-1/e <= x < 0``.  The
    seed is the branch-point series in ``p = -sqrt(2(1 + e x))`` near
    ``-1/e`` and the logarithmic asymptote near ``0-``; Halley iterations
    polish it.
    """
    x = float(x)
    if not x < 0.0 or x < -_INV_E - _BRANCH_ATOL:
        raise DomainError(f"W_-1 is real only on [-1/e, 0), got {x}")
    q = 1.0 + math.e * x
    if q <= 0.0:
        return -1.0
    if x < -0.25:
        p = -math.sqrt(2.0 * q)
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))
    else:
        l1 = math.log(-x)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    for _ in range(maxiter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        step = f / denom
        w_new = w - step
        if w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        if abs(w_new - w) <= rtol * abs(w_new):
            w = w_new
            break
        w = w_new
    return w


def one_plus_wm1_from_gap(gap: float) -> float:
    """Return ``1 + W_-1(-(1 - gap)/e)`` accurately for ``0 <= gap <= 1``.

    Near the branch point both ``W_-1`` and its argument lose precision; this
    form solves ``(1 - v) exp(v) = 1 - gap`` for ``v <= 0`` directly.
    """
    gap = float(gap)
    if not 0.0 <= gap <= 1.0:
        raise DomainError(f"gap must lie in [0, 1], got {gap}")
    if gap == 0.0:
        return 0.0
    if gap == 1.0:
        return -math.inf
    if gap > 0.5:
        return 1.0 + lambert_w_m1(-(1.0 - gap) * _INV_E)
    p = math.sqrt(2.0 * gap)
    v = -p * (1.0 + p * (1.0 / 3.0 + p * (11.0 / 72.0 + p * (43.0 / 540.0))))

    def residual(v):
        # (1 - v) e^v - 1 + gap, series form for small |v|
        if abs(v) < 0.05:
            acc, term = 0.0, 1.0
            for k in range(1, 20):
                term *= v / k
                if k >= 2:
                    acc += (1 - k) * term
            return acc + gap
        return (1.0 - v) * math.exp(v) - 1.0 + gap

    for _ in range(40):
        d = -v * math.exp(v)
        if d == 0.0:
            break
        step = residual(v) / d
        v -= step
        if v > 0.0:
            v = -abs(step)
        if abs(step) <= 1e-16 * abs(v):
            break
    return v


def _airy_u(k: int) -> float:
    return math.exp(math.lgamma(3 * k + 0.5) - k * math.log(54.0)
                    - math.lgamma(k + 1) - math.lgamma(k + 0.5))


_AIRY_U = [_airy_u(k) for k in range(40)]
_SERIES_LIMIT = 6.0


def _airy_series(x: float) -> float:
    x3 = x * x * x
    f = t = 1.0
    g = s = x
    k = 1
    while True:
        t *= x3 / ((3 * k - 1) * (3 * k))
        s *= x3 / ((3 * k) * (3 * k + 1))
        f += t
        g += s
        if abs(t) + abs(s) < 1e-18 * (abs(f) + abs(g)) and k > 3:
            break
        k += 1
    return _AI0 * f - _AIP0 * g


def _asym_sum(zeta: float, parity: int | None):
    """Sum of (-1)^k u_k zeta^-k restricted to even/odd k (or all k)."""
    total = 0.0
    prev = math.inf
    for k, u in enumerate(_AIRY_U):
        term = u / zeta ** k
        if term > prev:
            break
        prev = term
        if parity is None:
            total += (-1) ** k * term
        elif k % 2 == parity:
            total += (-1) ** (k // 2) * term
        if term < 1e-18:
            break
    return total


def airy_ai(x: float) -> float:
    """Regular Airy function Ai(x).

    Maclaurin series for ``|x| <= 6``; the standard asymptotic expansions
    outside.
    """
    x = float(x)
    if abs(x) <= _SERIES_LIMIT:
        return _airy_series(x)
    if x > 0:
        zeta = 2.0 / 3.0 * x ** 1.5
        return math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * x ** 0.25) * _asym_sum(zeta, None)
    z = -x
    zeta = 2.0 / 3.0 * z ** 1.5
    phase = zeta - math.pi / 4.0
    even = _asym_sum(zeta, 0)
    odd = _asym_sum(zeta, 1)
    return (math.cos(phase) * even + math.sin(phase) * odd) / (math.sqrt(math.pi) * z ** 0.25)


def airy_zero_wkb(n: int) -> float:
    """WKB estimate ``-(3 pi/2 (n + 3/4))**(2/3)`` of the n-th Airy zero."""
    if n < 0:
        raise DomainError("Airy zero index must be nonnegative")
    return -(1.5 * math.pi * (n + 0.75)) ** (2.0 / 3.0)


def airy_zero(n: int, atol: float = AIRY_ATOL) -> float:
    """n-th zero (n = 0, 1, ...) of Ai on the negative axis."""
    if n < 0:
        raise DomainError("Airy zero index must be nonnegative")
    t = 1.5 * math.pi * (n + 0.75)
    seed = -t ** (2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t))
    half = 0.25 * math.pi / math.sqrt(-seed)
    lo, hi = seed - half, seed + half
    while (airy_ai(lo) > 0) == (airy_ai(hi) > 0):
        half *= 1.5
        lo, hi = seed - half, seed + half
    return bracketed_root(airy_ai, RootBracket(lo, hi, tolerance=min(atol, 1e-12) * 1e-2))
