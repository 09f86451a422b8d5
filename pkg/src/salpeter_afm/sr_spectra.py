"""Closed-form auxiliary-field spectra of ``sigma sqrt(p^2 + m^2) + V(r)``.

Every function takes the global quantum number ``N`` as a real number.  When
the caller also passes the :class:`~salpeter_afm.afm_core.NModel` that
produced it (``n_source``), the result is tagged with its bound character.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .afm_core import BoundCharacter, CoulombN, HarmonicN, NModel
from .errors import (CriticalExceeded, DomainError, NoBoundState, NoBoundStateWarning,
                     NoSpectrum, Unphysical)
from .potentials import Funnel, Kinematics, PowerLaw, SquareRoot, Yukawa
from .rootkit import (RootBracket, SignChoice, bracketed_root, cubic_F, quartic_G,
                      airy_zero)

__all__ = [
    "AfmResult",
    "ScalingFrame",
    "critical_coupling_powerlaw",
    "sr_powerlaw_energy",
    "ur_powerlaw_energy",
    "ur_harmonic_exact",
    "ur_harmonic_wkb",
    "wkb_harmonic_N",
    "sqrt_potential_nr_energy",
    "sqrt_potential_ur_energy",
    "sr_funnel_energy",
    "yukawa_reduced",
    "yukawa_energy",
    "yukawa_energy_largemass",
    "yukawa_critical_height",
    "critical_height_ratio",
    "critical_height_ratio_inverse",
    "yukawa_bound_state_exists",
    "scaling_reduce",
    "powerlaw_scaling",
    "unequal_coulomb_massless_energy",
    "two_body_average_lower_bound",
    "coulomb_critical_factor",
    "coulomb_critical_N",
]


@dataclass(frozen=True)
class AfmResult:
    """Approximate level with the intermediates of its closed form.

    Attributes
    ----------
    energy : float
    nu0 : float
        Stationary value of the auxiliary field.
    internals : dict
        Named intermediates (``x0``, ``A``, ``Y1``, ``Y2``, ``Y0``, ``Z0`` ...).
    bound : BoundCharacter
    """

    energy: float
    nu0: float
    internals: dict = field(default_factory=dict)
    bound: BoundCharacter = BoundCharacter.UNKNOWN


@dataclass(frozen=True)
class ScalingFrame:
    """Units in which the potential strength and ``sigma`` are both one."""

    a_scale: float
    sigma: float

    def __post_init__(self):
        if not (self.a_scale > 0 and self.sigma > 0):
            raise DomainError("scaling frame needs positive a_scale and sigma")


def _check_N(N):
    if not N > 0:
        raise DomainError(f"N must be positive, got {N}")


def _powerlaw_bound(n_source: NModel | None, lam: float) -> BoundCharacter:
    # harmonic N bounds every potential that is a concave function of r^2
    if isinstance(n_source, HarmonicN) and lam <= 2:
        return BoundCharacter.UPPER
    if isinstance(n_source, CoulombN) and lam == -1:
        return BoundCharacter.UPPER
    return BoundCharacter.UNKNOWN


# ---------------------------------------------------------------------------
# power laws

def critical_coupling_powerlaw(lam: float, sigma: float, m: float, N: float) -> float:
    """Largest strength ``a`` of ``-a r^lam`` (``-1 <= lam < 0``) with a positive level.

    ``sigma (N/sqrt|lam|)^|lam| (m^2/(1+lam))^((1+lam)/2)``; for the Coulomb
    case this is ``sigma N`` whatever the mass.
    """
    _check_N(N)
    if not -1.0 <= lam < 0.0:
        raise DomainError(f"critical coupling is defined for -1 <= lam < 0, got {lam}")
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    if lam == -1.0:
        return sigma * N
    if not m > 0:
        raise DomainError("critical coupling needs m > 0 when lam > -1")
    al = abs(lam)
    return sigma * (N / math.sqrt(al)) ** al * (m * m / (1.0 + lam)) ** ((1.0 + lam) / 2.0)


def _elimination_root(A: float, lam: float, sigma: float, m: float) -> float:
    """Positive root of ``sigma^2/4 x^(lam+2) - A x - m^2 = 0`` for ``lam > -1``."""
    s2 = 0.25 * sigma * sigma
    f = lambda x: s2 * x ** (lam + 2.0) - A * x - m * m
    if m * m == 0.0:
        return (A / s2) ** (1.0 / (lam + 1.0))
    hi = max((A / s2) ** (1.0 / (lam + 1.0)), (m * m / s2) ** (1.0 / (lam + 2.0)), 1e-300)
    while f(hi) <= 0.0:
        hi *= 2.0
    return bracketed_root(f, RootBracket(0.0, hi))


def sr_powerlaw_energy(p: PowerLaw, k: Kinematics, N: float, *, method: str = "auto",
                       n_source: NModel | None = None) -> AfmResult:
    """Level of ``sigma sqrt(p^2+m^2) + sgn(lam) a r^lam``.

    Parameters
    ----------
    p, k : PowerLaw, Kinematics
    N : float
        Global quantum number.
    method : {"auto", "closed", "numeric"}
        ``auto`` uses the explicit roots for ``lam`` in {-1, 1, 2} and a
        bracketed root of the elimination equation otherwise.
    n_source : NModel, optional
        Model that produced ``N``; sets ``bound``.

    Raises
    ------
    NoBoundState
        When the level is not positive (``lam < 0``), in particular
        ``a >= sigma N`` for the Coulomb potential.
    """
    _check_N(N)
    if method not in ("auto", "closed", "numeric"):
        raise DomainError(f"unknown method {method!r}")
    a, lam, sigma, m = p.a, p.lam, k.sigma, k.mass
    if -2 < lam < -1:
        raise Unphysical(f"no physical solution for lam={lam}")
    closed = lam in (-1.0, 1.0, 2.0)
    if method == "closed" and not closed:
        raise DomainError(f"no closed form for lam={lam}")
    bound = _powerlaw_bound(n_source, lam)
    A = abs(a * lam / 2.0) ** (2.0 / (lam + 2.0)) * N ** (2.0 * lam / (lam + 2.0))
    internals = {"A": A}

    if lam == -1.0:
        if a >= sigma * N:
            raise NoBoundState(f"Coulomb strength a={a} reaches sigma*N={sigma * N}")
        if m == 0.0:
            raise NoBoundState("no bound state of massless particles in a Coulomb potential")
        x0 = 4.0 * m * m / (sigma * sigma - 4.0 * A)
        energy = sigma * m * math.sqrt(1.0 - (a / (sigma * N)) ** 2)
    else:
        if lam < 0 and m > 0 and a >= critical_coupling_powerlaw(lam, sigma, m, N):
            raise NoBoundState(f"a={a} exceeds the critical coupling for lam={lam}")
        if lam < 0 and m == 0.0:
            raise NoBoundState("no bound state of massless particles for lam < 0")
        if closed and method != "numeric" and m > 0:
            if lam == 2.0:
                Y2 = m * m / 3.0 * (16.0 * sigma / (a * N * N)) ** (2.0 / 3.0)
                G = quartic_G(SignChoice.MINUS, Y2)
                x0 = (2.0 * A / (sigma * sigma)) ** (1.0 / 3.0) * G
                # m / sqrt(3 Y2) is mass independent; written so that tiny m cannot underflow
                energy = 2.0 * sigma * (16.0 * sigma / (a * N * N)) ** (-1.0 / 3.0) * (G * G + 1.0 / G)
                internals.update(Y2=Y2, G=G)
            else:
                Y1 = 1.5 * math.sqrt(3.0) * sigma * m * m / (a * N)
                F = cubic_F(SignChoice.MINUS, Y1)
                x0 = 2.0 * math.sqrt(A / (3.0 * sigma * sigma)) * F
                energy = sigma / math.sqrt(3.0 * math.sqrt(3.0) * sigma * F / (a * N)) * (3.0 + F * F)
                internals.update(Y1=Y1, F=F)
        else:
            x0 = _elimination_root(A, lam, sigma, m)
            energy = (sigma / lam) * (lam * m * m + (lam + 1.0) * A * x0) / math.sqrt(m * m + A * x0)
    nu0 = x0 ** ((lam + 2.0) / 2.0)
    energy_alt = (2.0 / lam) * ((lam + 1.0) * sigma * sigma * nu0 / 4.0 - m * m / nu0)
    internals.update(x0=x0, energy_alt=energy_alt)
    if energy <= 0.0:
        raise NoBoundState(f"nonpositive level {energy}")
    return AfmResult(energy, nu0, internals, bound)


def ur_powerlaw_energy(a: float, lam: float, sigma: float, N: float) -> float:
    """Massless level ``((lam+1)/lam) |a lam|^(1/(lam+1)) (sigma N)^(lam/(lam+1))``.

    For ``-1 <= lam < 0`` the value is not a bound state (zero at ``lam = -1``,
    negative otherwise); it is returned with a :class:`NoBoundStateWarning`.
    """
    _check_N(N)
    if not (a > 0 and sigma > 0):
        raise DomainError("need a > 0 and sigma > 0")
    if lam == 0.0 or lam < -1.0:
        raise DomainError(f"need lam >= -1 and lam != 0, got {lam}")
    if lam == -1.0:
        warnings.warn("no bound state of massless particles for lam = -1", NoBoundStateWarning)
        return 0.0
    value = ((lam + 1.0) / lam) * abs(a * lam) ** (1.0 / (lam + 1.0)) \
        * (sigma * N) ** (lam / (lam + 1.0))
    if lam < 0:
        warnings.warn(f"level {value:.6g} for lam={lam} is not a bound state", NoBoundStateWarning)
    return value


def ur_harmonic_exact(a: float, n: int) -> float:
    """Exact ``l = 0`` levels of ``2|p| + a r^2``: ``-(4a)^(1/3) alpha_n``."""
    if not a > 0:
        raise DomainError("a must be positive")
    return -(4.0 * a) ** (1.0 / 3.0) * airy_zero(n)


def wkb_harmonic_N(n: int) -> float:
    """Global quantum number reproducing the WKB Airy zeros: ``pi n/sqrt3 + pi sqrt3/4``."""
    return math.pi * n / math.sqrt(3.0) + math.pi * math.sqrt(3.0) / 4.0


def ur_harmonic_wkb(a: float, n: int) -> float:
    """``3 (sqrt(a) N_wkb)^(2/3)``, the harmonic levels with WKB Airy zeros."""
    return 3.0 * (math.sqrt(a) * wkb_harmonic_N(n)) ** (2.0 / 3.0)


# ---------------------------------------------------------------------------
# square-root potential

def sqrt_potential_nr_energy(a: float, b: float, m_nr: float, N: float) -> float:
    """Levels of ``p^2/(2 m_nr) + sqrt(a^2 r^2 + b^2)``.

    In momentum space this is a harmonic potential with a semirelativistic
    kinetic term; the harmonic closed form is used with
    ``sigma' = (4a/m_nr^2)^(1/3)``, mass ``b/sigma'`` and strength ``sigma' m_nr a/8``.
    """
    if not (a > 0 and m_nr > 0) or b < 0:
        raise DomainError("need a > 0, m_nr > 0 and b >= 0")
    sp = (4.0 * a / (m_nr * m_nr)) ** (1.0 / 3.0)
    kappa = sp * m_nr * a / 8.0
    return sr_powerlaw_energy(PowerLaw(kappa, 2.0), Kinematics(sp, b / sp), N).energy


def sqrt_potential_ur_energy(a: float, b: float, sigma: float, N: float) -> float:
    """Levels of ``sigma |p| + sqrt(a^2 r^2 + b^2)``: the linear closed form at mass ``b/sigma``."""
    if not (a > 0 and sigma > 0) or b < 0:
        raise DomainError("need a > 0, sigma > 0 and b >= 0")
    return sr_powerlaw_energy(PowerLaw(a, 1.0), Kinematics(sigma, b / sigma), N).energy


# ---------------------------------------------------------------------------
# funnel

def _funnel_energy_Y(Y, m, sigma, U, a, b):
    F = cubic_F(SignChoice.PLUS, Y)
    return m * m * Y / U + sigma * sigma * U / (4.0 * Y) + math.sqrt(3.0 * a * b) * 0.5 * (F - 1.0 / F)


def _funnel_cubic_roots(D, d):
    coeffs = [4.0 * d ** 3, D * D - 12.0 * d * d, 6.0 * (D * D + 2.0 * d), 9.0 * D * D - 4.0]
    roots = np.roots(coeffs)
    return [float(r.real) for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r))]


def _polish_cubic(z, D, d, steps=3):
    for _ in range(steps):
        p = ((4.0 * d ** 3 * z + D * D - 12.0 * d * d) * z + 6.0 * (D * D + 2.0 * d)) * z + 9.0 * D * D - 4.0
        dp = (12.0 * d ** 3 * z + 2.0 * (D * D - 12.0 * d * d)) * z + 6.0 * (D * D + 2.0 * d)
        if dp == 0.0:
            break
        z -= p / dp
    return z


def _funnel_general(a, b, sigma, m, N):
    D = 2.0 * b / (3.0 * sigma * N)
    U = 3.0 * N * N * math.sqrt(3.0 * a / b ** 3)
    u = 2.0 * m / (sigma * U)
    A = a * N * N - b * m * m
    c = D * D - 3.0 * u * u
    zbar = (2.0 - 3.0 * D) / D
    internals = {"D": D, "U": U, "u": u, "A": A, "c": c, "Zbar": zbar}

    def reconstruct(Z, d):
        if not (c != 0.0 and Z / c > 0.0):
            return None
        Y0 = math.sqrt(Z / c)
        F = 2.0 * Y0 * (1.0 - d * Z) / (Z + 3.0)
        if not F > 0 or abs(F - cubic_F(SignChoice.PLUS, Y0)) > 1e-7 * F:
            return None
        return Y0, F

    found = None
    if abs(A) > 1e-10 * a * N * N:
        d = b * m * m / (3.0 * A)
        internals["d"] = d
        # continuation in m from the massless anchor
        z_prev = zbar
        for mm in m * np.linspace(0.0, 1.0, 33)[1:]:
            dd = b * mm * mm / (3.0 * (a * N * N - b * mm * mm))
            roots = _funnel_cubic_roots(D, dd)
            if not roots:
                break
            z_prev = min(roots, key=lambda z: abs(z - z_prev))
        Z0 = _polish_cubic(z_prev, D, d)
        rec = reconstruct(Z0, d)
        if rec is None:
            # fall back on any consistent root
            for z in sorted(_funnel_cubic_roots(D, d), key=lambda z: abs(z - Z0)):
                z = _polish_cubic(z, D, d)
                rec = reconstruct(z, d)
                if rec is not None:
                    Z0 = z
                    break
        if rec is not None:
            Y0, F = rec
            found = (Y0, F)
            internals.update(Z0=Z0, method="cubic")
    if found is None:
        # direct minimisation over Y, used when A ~ 0 or no root is consistent
        from .afm_core import afm_extremize
        Y0, _ = afm_extremize(lambda Y: _funnel_energy_Y(Y, m, sigma, U, a, b),
                              scale=max(1.0, 1.0 / max(u, 1e-300)))
        found = (Y0, cubic_F(SignChoice.PLUS, Y0))
        internals.update(Z0=c * Y0 * Y0, method="numeric")
    Y0, F = found
    energy = m * m * Y0 / U + sigma * sigma * U / (4.0 * Y0) + math.sqrt(3.0 * a * b) * 0.5 * (F - 1.0 / F)
    e_alt = math.sqrt(3.0 * a * b) * (Y0 / (F * F) - 2.0 / F)
    internals.update(Y0=Y0, F=F, ef=math.sqrt(3.0 * a * b) * 0.5 * (F - 1.0 / F), ef_alt=e_alt)
    return energy, U / Y0, internals


def sr_funnel_energy(f: Funnel, k: Kinematics, N: float, mode: str = "auto", *,
                     n_source: NModel | None = None) -> AfmResult:
    """Level of ``sigma sqrt(p^2+m^2) + a r - b/r``.

    Parameters
    ----------
    mode : {"auto", "ultrarelativistic", "lowmass", "general"}
        ``general`` solves the quartic-reduced cubic in ``Z0`` and follows the
        root connected to the massless solution; ``lowmass`` is the first
        order expansion in ``m^2``; ``auto`` picks ``general`` for ``m > 0``.

    Raises
    ------
    NoBoundState
        If ``b >= sigma N``.
    """
    _check_N(N)
    a, b, sigma, m = f.a, f.b, k.sigma, k.mass
    if mode not in ("auto", "ultrarelativistic", "lowmass", "general"):
        raise DomainError(f"unknown funnel mode {mode!r}")
    if b >= sigma * N:
        raise NoBoundState(f"Coulomb part b={b} reaches sigma*N={sigma * N}")
    if mode == "auto":
        mode = "general" if m > 0 else "ultrarelativistic"
    bound = BoundCharacter.UPPER if isinstance(n_source, HarmonicN) and mode != "lowmass" \
        else BoundCharacter.UNKNOWN
    if b == 0.0 and mode != "lowmass":
        mass = 0.0 if mode == "ultrarelativistic" else m
        res = sr_powerlaw_energy(PowerLaw(a, 1.0), Kinematics(sigma, mass), N)
        return AfmResult(res.energy, res.nu0, dict(res.internals, mode=mode), bound)
    if mode == "ultrarelativistic":
        energy = 2.0 * math.sqrt(a * (sigma * N - b))
        nu0 = 2.0 * N / sigma * math.sqrt(a / (sigma * N - b))
        return AfmResult(energy, nu0, {"mode": mode, "D": 2.0 * b / (3.0 * sigma * N)}, bound)
    if mode == "lowmass":
        base = math.sqrt((sigma * N - b) / a)
        energy = base * (2.0 * a + sigma * m * m / (2.0 * N))
        # massless auxiliary field; the mass enters only through m^2/nu0
        nu0 = 2.0 * N / (sigma * a * base)
        return AfmResult(energy, nu0, {"mode": mode}, bound)
    if m == 0.0:
        return sr_funnel_energy(f, k, N, "ultrarelativistic", n_source=n_source)
    energy, nu0, internals = _funnel_general(a, b, sigma, m, N)
    internals["mode"] = mode
    return AfmResult(energy, nu0, internals, bound)


# ---------------------------------------------------------------------------
# Yukawa

def _yukawa_terms(v, chi, g, N):
    nu = (1.0 - v) * math.exp(v)
    s = math.sqrt(max(0.0, 1.0 - (g * nu / N) ** 2))
    return nu, s


def yukawa_reduced(chi: float, g: float, N: float) -> tuple[float, float, float]:
    """Stationary point of the reduced Yukawa problem ``sqrt(q^2+chi^2) - g e^-x/x``.

    The stationarity condition is solved for ``v = 1 + W_-1(-nu/e)`` with
    ``nu = (1-v) e^v``, which avoids evaluating the Lambert function near
    its branch point.  The root closest to ``v = 0`` (largest ``nu``) is kept.

    Returns
    -------
    nu0, v0, E_y
        ``E_y`` is in units of ``sigma beta``; no threshold test is applied.

    Raises
    ------
    CriticalExceeded
        If ``g > N``.
    NoBoundState
        If the stationarity condition has no root.
    """
    _check_N(N)
    if not (chi > 0 and g > 0):
        raise DomainError("need chi > 0 and g > 0")
    if g > N:
        raise CriticalExceeded(f"g={g} exceeds N={N}")
    if g == N:
        return 1.0, 0.0, float(N)

    def psi(v):
        nu, s = _yukawa_terms(v, chi, g, N)
        return v + N * N / (chi * nu * g) * s

    grid = np.concatenate([-np.logspace(math.log10(60.0), -14, 600), [0.0]])
    with np.errstate(all="ignore"):
        vals = np.array([psi(float(v)) for v in grid])
    vals[~np.isfinite(vals)] = np.inf
    i = int(np.argmin(vals))
    if vals[i] > 0.0:
        raise NoBoundState(f"no stationary point for chi={chi}, g={g}, N={N}")
    if vals[i] == 0.0:
        v0 = float(grid[i])
    else:
        v0 = bracketed_root(psi, RootBracket(float(grid[i]), 0.0), rtol=1e-15)
    nu0, s = _yukawa_terms(v0, chi, g, N)
    E = (chi * N * N + chi * chi * g * nu0 * s) / (chi * g * nu0 + N * N * s)
    return nu0, v0, E


def yukawa_energy(y: Yukawa, k: Kinematics, N: float, *,
                  n_source: NModel | None = None) -> AfmResult:
    """Level of ``sigma sqrt(p^2+m^2) - alpha e^(-beta r)/r`` in physical units.

    Raises
    ------
    NoBoundState
        If there is no stationary point or the level does not lie below ``sigma m``.
    CriticalExceeded
        If ``alpha/sigma > N``.
    """
    if not k.mass > 0:
        raise DomainError("the Yukawa formula needs m > 0")
    chi, g = k.mass / y.beta, y.alpha / k.sigma
    nu0, v0, E = yukawa_reduced(chi, g, N)
    if not E < chi:
        raise NoBoundState(f"level {E} is not below the threshold {chi}")
    internals = {"chi": chi, "g": g, "v": v0, "W": v0 - 1.0, "E_reduced": E}
    return AfmResult(k.sigma * y.beta * E, nu0, internals, BoundCharacter.UNKNOWN)


def yukawa_energy_largemass(chi: float, g: float, N: float) -> float:
    """Large-``chi`` reduced level ``g + (chi - N^2/(2chi)) sqrt(1 - g^2/N^2)``."""
    _check_N(N)
    if g > N:
        raise CriticalExceeded(f"g={g} exceeds N={N}")
    return g + (chi - N * N / (2.0 * chi)) * math.sqrt(1.0 - (g / N) ** 2)


def critical_height_ratio(y: float) -> float:
    """``f(y) = y e^s/(1+s)`` with ``s = sqrt(1-y^2)``; ``g_crit/N`` at ``y = N/chi``."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"y must lie in [0, 1], got {y}")
    s = math.sqrt(1.0 - y * y)
    return y * math.exp(s) / (1.0 + s)


def critical_height_ratio_inverse(value: float) -> float:
    """Inverse of :func:`critical_height_ratio` on ``[0, 1]``."""
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"value must lie in [0, 1], got {value}")
    if value in (0.0, 1.0):
        return value
    return bracketed_root(lambda y: critical_height_ratio(y) - value, RootBracket(0.0, 1.0))


def yukawa_critical_height(chi: float, N: float) -> float:
    """Coupling ``g`` at which level ``N`` reaches the threshold ``chi``.

    Raises
    ------
    NoSpectrum
        If ``chi < N``.
    """
    _check_N(N)
    if chi < N:
        raise NoSpectrum(f"chi={chi} below N={N}: the state cannot bind")
    return N * critical_height_ratio(N / chi)


def yukawa_bound_state_exists(y: Yukawa, k: Kinematics, N: float, N_ground: float) -> bool:
    """Existence conditions for level ``N`` given the ground-state value ``N_ground``."""
    _check_N(N)
    if N_ground > N:
        raise DomainError("N_ground cannot exceed N")
    g = y.alpha / k.sigma
    m_min = y.beta * N / critical_height_ratio_inverse(N_ground / N)
    if not k.mass > m_min:
        return False
    return yukawa_critical_height(k.mass / y.beta, N) < g < N_ground


# ---------------------------------------------------------------------------
# scaling and miscellany

def scaling_reduce(E_reduced: Callable[[float, float], float], m: float, G: float,
                   frame: ScalingFrame) -> float:
    """``a sigma E(m/a, G/(a sigma))`` from the solution ``E(m, G)`` of the unit problem."""
    a, s = frame.a_scale, frame.sigma
    return a * s * E_reduced(m / a, G / (a * s))


def powerlaw_scaling(E_unit: Callable[[float], float], lam: float, m: float, G: float,
                     sigma: float) -> float:
    """``(sigma^lam G)^(1/(lam+1)) E(chi)`` with ``chi = (sigma/G)^(1/(lam+1)) m``.

    ``E_unit(chi)`` solves ``sqrt(p^2+chi^2) + sgn(lam) r^lam``.
    """
    if lam <= -1:
        raise DomainError("power-law scaling needs lam > -1")
    k = 1.0 / (lam + 1.0)
    return (sigma ** lam * G) ** k * E_unit((sigma / G) ** k * m)


def unequal_coulomb_massless_energy(a: float, m: float, N: float, *,
                                    constrained: bool = False) -> float:
    """Level of ``|p| + sqrt(p^2+m^2) - a/r``: ``2m sqrt(a/(2N) (1 - a/(2N)))``.

    With ``constrained=True`` the formula is refused unless the auxiliary
    field of the massless particle is positive, which holds only for ``a > N``.
    """
    _check_N(N)
    if not (a > 0 and m > 0):
        raise DomainError("need a > 0 and m > 0")
    if a >= 2.0 * N:
        raise NoBoundState(f"a={a} reaches 2N={2 * N}")
    if constrained and not a > N:
        raise NoBoundState(f"auxiliary field of the massless particle is not positive for a={a} <= N={N}")
    r = a / (2.0 * N)
    return 2.0 * m * math.sqrt(r * (1.0 - r))


def two_body_average_lower_bound(E1: float, E2: float) -> float:
    """Lower bound ``(E1+E2)/2`` on the mixed-mass ground state from the two equal-mass ones."""
    return 0.5 * (E1 + E2)


def coulomb_critical_factor(N: float) -> float:
    """``sqrt(1 - 4/(pi^2 N^2))``: Coulomb level over ``sigma m`` at ``a = 2 sigma/pi``."""
    _check_N(N)
    x = 1.0 - 4.0 / (math.pi * N) ** 2
    if x < 0:
        raise NoBoundState(f"N={N} below 2/pi")
    return math.sqrt(x)


def coulomb_critical_N(factor: float) -> float:
    """Inverse of :func:`coulomb_critical_factor`."""
    if not 0.0 <= factor < 1.0:
        raise DomainError("factor must lie in [0, 1)")
    return 2.0 / (math.pi * math.sqrt(1.0 - factor * factor))
