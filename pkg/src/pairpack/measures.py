"""The measure family  d nu(a) = c1 delta(a) + c2 |a| e^{-c3 |a|} da  on
[-Delta, Delta]: parameter validation, the closed-form Fourier transform
nu_hat, and the certified two-sided bounds on nu_hat that make the weighted
norm equivalent to the plain L2 norm.

Admissibility gate: sigma = (c2/c1) Delta^2 <= 5/3 by default.  The slightly
wider range sigma < 1/sup_g() is available behind an explicit flag.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NotAdmissible

ADMISSIBLE_SIGMA = 5.0 / 3.0

# nu_hat(x) - c1 = c2 Delta^2 [sin(2u)/u - (sin u / u)^2] with u = pi Delta x;
# Taylor coefficients of the bracket, used for |u| below _NUHAT_SERIES_CUT.
_NUHAT_SERIES_CUT = 1e-4


@dataclass(frozen=True)
class Measure:
    """Parameters of one member of the measure family.

    c1    : mass of the Dirac atom at 0 (> 0)
    c2    : coefficient of the density |a| e^{-c3|a|} (>= 0)
    c3    : exponential decay rate (>= 0)
    delta : half-length of the support interval (> 0)
    """

    c1: float
    c2: float
    c3: float
    delta: float

    def __post_init__(self):
        if not (self.c1 > 0):
            raise ValueError(f"c1 must be > 0, got {self.c1}")
        if not (self.c2 >= 0):
            raise ValueError(f"c2 must be >= 0, got {self.c2}")
        if not (self.c3 >= 0):
            raise ValueError(f"c3 must be >= 0, got {self.c3}")
        if not (self.delta > 0):
            raise ValueError(f"delta must be > 0, got {self.delta}")

    def sigma(self) -> float:
        """(c2/c1) Delta^2, the quantity every admissibility test is stated in."""
        return (self.c2 / self.c1) * self.delta ** 2

    def lam(self) -> float:
        """c2/c1, the density-to-atom ratio the kernel formulas use."""
        return self.c2 / self.c1

    def is_admissible(self) -> bool:
        return self.sigma() <= ADMISSIBLE_SIGMA

    def is_extended_admissible(self) -> bool:
        return self.sigma() < extended_sigma_threshold()

    def require_admissible(self, extended: bool = False) -> None:
        if extended:
            if not self.is_extended_admissible():
                raise NotAdmissible(
                    f"sigma = {self.sigma():.6g} >= {extended_sigma_threshold():.6g} "
                    "(extended threshold)")
        elif not self.is_admissible():
            raise NotAdmissible(
                f"sigma = {self.sigma():.6g} > 5/3; pass extended=True to use the "
                f"wider gate sigma < {extended_sigma_threshold():.6g}")

    def total_mass(self) -> float:
        """nu_hat(0) = c1 + c2 * integral of |a| e^{-c3|a|} over the support."""
        if self.c3 == 0.0:
            return self.c1 + self.c2 * self.delta ** 2
        c3d = self.c3 * self.delta
        return self.c1 + 2.0 * self.c2 * (1.0 - np.exp(-c3d) * (1.0 + c3d)) / self.c3 ** 2


@dataclass(frozen=True)
class NormEquivalence:
    """Certified constants with a_sq <= nu_hat(x) <= b_sq on the real line."""

    a_sq: float
    b_sq: float


def nu_hat(m: Measure, x: float) -> float:
    """Fourier transform of the measure at frequency x (real, even in x).

    Closed form throughout; for c3 = 0 the removable point x = 0 is handled
    by a sixth-order series in u = pi Delta x.
    """
    c1, c2, c3, d = m.c1, m.c2, m.c3, m.delta
    if c2 == 0.0:
        return c1
    if c3 == 0.0:
        u = np.pi * d * x
        if abs(u) < _NUHAT_SERIES_CUT:
            u2 = u * u
            bracket = 1.0 - u2 + (2.0 / 9.0) * u2 * u2 - u2 ** 3 / 45.0
            return c1 + c2 * d * d * bracket
        return (c1 + c2 * d * np.sin(2 * np.pi * d * x) / (np.pi * x)
                - c2 * (np.sin(np.pi * d * x) / (np.pi * x)) ** 2)
    # c3 > 0: the denominator (c3^2 + 4 pi^2 x^2)^2 never vanishes
    p2 = 4.0 * np.pi ** 2 * x * x
    den = (c3 ** 2 + p2) ** 2
    cos2 = np.cos(2 * np.pi * d * x)
    sin2 = np.sin(2 * np.pi * d * x)
    bracket = (2.0 * np.exp(c3 * d) * (c3 ** 2 - p2)
               - 2.0 * (c3 ** 2 - p2 + c3 ** 3 * d + c3 * p2 * d) * cos2
               + 4.0 * np.pi * x * (2.0 * c3 + c3 ** 2 * d + p2 * d) * sin2)
    return c1 + c2 * np.exp(-c3 * d) * bracket / den


def nu_hat_grid(m: Measure, x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`nu_hat` over a real array."""
    x = np.asarray(x, dtype=float)
    c1, c2, c3, d = m.c1, m.c2, m.c3, m.delta
    if c2 == 0.0:
        return np.full_like(x, c1)
    if c3 == 0.0:
        u = np.pi * d * x
        small = np.abs(u) < _NUHAT_SERIES_CUT
        xs = np.where(small, 1.0, x)        # placeholder, overwritten below
        out = (c1 + c2 * d * np.sin(2 * np.pi * d * xs) / (np.pi * xs)
               - c2 * (np.sin(np.pi * d * xs) / (np.pi * xs)) ** 2)
        if small.any():
            u2 = u[small] ** 2
            out[small] = c1 + c2 * d * d * (
                1.0 - u2 + (2.0 / 9.0) * u2 * u2 - u2 ** 3 / 45.0)
        return out
    p2 = 4.0 * np.pi ** 2 * x * x
    den = (c3 ** 2 + p2) ** 2
    cos2 = np.cos(2 * np.pi * d * x)
    sin2 = np.sin(2 * np.pi * d * x)
    bracket = (2.0 * np.exp(c3 * d) * (c3 ** 2 - p2)
               - 2.0 * (c3 ** 2 - p2 + c3 ** 3 * d + c3 * p2 * d) * cos2
               + 4.0 * np.pi * x * (2.0 * c3 + c3 ** 2 * d + p2 * d) * sin2)
    return c1 + c2 * np.exp(-c3 * d) * bracket / den


def g_surface(sigma_var: float, t: float) -> float:
    """The surface G(sigma, t) controlling nu_hat from below:

        nu_hat(x) = c2 Delta^2 ( c1/(c2 Delta^2) - G(c3 Delta, 2 pi Delta x) ).

    Continuous at t = 0 and at the origin, where the limit is -1; G(sigma, 0)
    is nonpositive for all sigma >= 0.
    """
    if sigma_var < 0:
        raise ValueError("sigma_var must be >= 0")
    z = complex(-sigma_var, t)
    if abs(z) < 0.25:
        # G = 2 Re sum_{k>=0} -(k+1)/(k+2)! z^k
        total = 0.0 + 0.0j
        zk = 1.0 + 0.0j
        fact = 2.0       # (k+2)!
        for k in range(16):
            total -= (k + 1) / fact * zk
            zk *= z
            fact *= (k + 3)
        return 2.0 * total.real
    s, tt = sigma_var, t
    r2 = s * s + tt * tt
    bracket = (2.0 * np.exp(s) * (s * s - tt * tt)
               - 2.0 * (s * s - tt * tt + s ** 3 + tt * tt * s) * np.cos(tt)
               + 2.0 * tt * (2.0 * s + s * s + tt * tt) * np.sin(tt))
    return -np.exp(-s) * bracket / r2 ** 2


@functools.lru_cache(maxsize=1)
def sup_g_point() -> tuple[float, float]:
    """Argmax and value of G(0, t) over t > 0 (the global max of G over the
    quadrant sits on the sigma = 0 line)."""
    ts = np.linspace(0.05, 60.0, 6000)
    vals = np.array([g_surface(0.0, t) for t in ts])
    t0 = ts[int(np.argmax(vals))]
    res = minimize_scalar(lambda t: -g_surface(0.0, t),
                          bounds=(t0 - 0.2, t0 + 0.2), method="bounded",
                          options={"xatol": 1e-13})
    return float(res.x), float(g_surface(0.0, float(res.x)))


def sup_g() -> float:
    """sup over t > 0 of (2 - 2 cos t - 2 t sin t)/t^2, about 0.5866."""
    return sup_g_point()[1]


@functools.lru_cache(maxsize=1)
def extended_sigma_threshold() -> float:
    """1 / sup_g(), the widest sigma for which the lower bound on nu_hat
    stays positive.  About 1.70483."""
    return 1.0 / sup_g()


def norm_bounds(m: Measure, extended: bool = False) -> NormEquivalence:
    """Certified constants bracketing nu_hat on the real line.

    b_sq is the total-mass bound c1 + c2 Delta^2.  a_sq comes from the
    G-surface supremum; it is positive exactly on the admissible range.
    """
    m.require_admissible(extended=extended)
    b_sq = m.c1 + m.c2 * m.delta ** 2
    if m.c2 == 0.0:
        return NormEquivalence(a_sq=m.c1, b_sq=b_sq)
    a_sq = m.c2 * m.delta ** 2 * (m.c1 / (m.c2 * m.delta ** 2) - sup_g())
    return NormEquivalence(a_sq=a_sq, b_sq=b_sq)
