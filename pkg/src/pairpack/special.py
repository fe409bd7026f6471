"""Stable evaluation of the small set of special functions the closed forms
are built from: moment integrals of complex exponentials over [0, L] and
sinc-type quotients with removable zeros.

All functions accept complex scalars or arrays.  Near the cancellation-prone
region |s| L < 0.5 they switch to truncated power series; the switch radius
keeps both branches well inside 1e-13 relative accuracy.
"""

from __future__ import annotations

import numpy as np

_SERIES_RADIUS = 0.5
_SERIES_TERMS = 30


def _as_complex(s):
    arr = np.asarray(s, dtype=complex)
    return arr, (arr.shape == ())


def exp_moment(k: int, s, L: float):
    """phi_k(s) = integral_0^L  a^k e^{s a} da  for k in {0, 1, 2, 3}.

    The explicit antiderivatives cancel catastrophically for small |s L|,
    where the power series in s is used instead.
    """
    if k not in (0, 1, 2, 3):
        raise ValueError(f"k={k} not supported")
    s, scalar = _as_complex(s)
    small = np.abs(s) * L < _SERIES_RADIUS
    out = np.empty_like(s)

    if small.any():
        ss = s[small]
        total = np.zeros_like(ss)
        term = np.ones_like(ss)          # s^j / j!
        for j in range(_SERIES_TERMS):
            total += term * L ** (k + j + 1) / (k + j + 1)
            term *= ss / (j + 1)
        out[small] = total

    big = ~small
    if big.any():
        sb = s[big]
        e = np.exp(sb * L)
        sl = sb * L
        if k == 0:
            val = (e - 1.0) / sb
        elif k == 1:
            val = (e * (sl - 1.0) + 1.0) / sb ** 2
        elif k == 2:
            val = (e * (sl * sl - 2.0 * sl + 2.0) - 2.0) / sb ** 3
        else:
            val = (e * (sl ** 3 - 3.0 * sl ** 2 + 6.0 * sl - 6.0) + 6.0) / sb ** 4
        out[big] = val
    return complex(out) if scalar else out


def cosh_moment(k: int, eta, c3: float, delta: float):
    """I_k(eta) = integral_{-d/2}^{d/2} cosh(eta a) |a|^k e^{-c3 |a|} da."""
    L = delta / 2.0
    return exp_moment(k, np.asarray(eta, dtype=complex) - c3, L) \
        + exp_moment(k, -np.asarray(eta, dtype=complex) - c3, L)


def cosh_moment_deta(k: int, eta, c3: float, delta: float):
    """d/d_eta of cosh_moment(k, eta)."""
    L = delta / 2.0
    return exp_moment(k + 1, np.asarray(eta, dtype=complex) - c3, L) \
        - exp_moment(k + 1, -np.asarray(eta, dtype=complex) - c3, L)


def _series_quot(s, L: float, sign: float):
    """sum_j (sign)^j (sL)^{2j} L / (2j+1)!  (sin for sign=-1, sinh for +1)."""
    total = np.zeros_like(s)
    term = np.full_like(s, L)
    x2 = (s * L) ** 2
    for j in range(_SERIES_TERMS // 2):
        total += term
        term *= sign * x2 / ((2 * j + 2) * (2 * j + 3))
    return total


def sin_quot(s, L: float):
    """sin(s L) / s with the removable zero at s = 0 filled by series."""
    s, scalar = _as_complex(s)
    small = np.abs(s) * L < _SERIES_RADIUS
    out = np.empty_like(s)
    if small.any():
        out[small] = _series_quot(s[small], L, -1.0)
    if (~small).any():
        out[~small] = np.sin(s[~small] * L) / s[~small]
    return complex(out) if scalar else out


def sinh_quot(s, L: float):
    """sinh(s L) / s with the removable zero at s = 0 filled by series."""
    s, scalar = _as_complex(s)
    small = np.abs(s) * L < _SERIES_RADIUS
    out = np.empty_like(s)
    if small.any():
        out[small] = _series_quot(s[small], L, 1.0)
    if (~small).any():
        out[~small] = np.sinh(s[~small] * L) / s[~small]
    return complex(out) if scalar else out


def sinh_quot_ds(s, L: float):
    """d/ds of sinh(s L)/s, which is (L cosh(s L) - sinh(s L)/s) / s."""
    s, scalar = _as_complex(s)
    small = np.abs(s) * L < _SERIES_RADIUS
    out = np.empty_like(s)
    if small.any():
        ss = s[small]
        # sum_{j>=1} 2j / (2j+1)!  (sL)^{2j-1} L^2
        total = np.zeros_like(ss)
        term = (ss * L) * L * L / 3.0          # j = 1 term
        x2 = (ss * L) ** 2
        for j in range(1, _SERIES_TERMS // 2):
            total += term
            term *= x2 * (j + 1) / (j * (2 * j + 2) * (2 * j + 3))
        out[small] = total
    big = ~small
    if big.any():
        sb = s[big]
        out[big] = (L * np.cosh(sb * L) - np.sinh(sb * L) / sb) / sb
    return complex(out) if scalar else out


def sinh_quot_scaled(s, L: float, shift: float):
    """e^{-shift L} sinh(s L) / s, stable when |Re s| is close to ``shift``
    (both exponentials then have nonpositive real exponents of moderate
    size, so nothing overflows even for shift L in the hundreds)."""
    s, scalar = _as_complex(s)
    small = np.abs(s) * L < _SERIES_RADIUS
    out = np.empty_like(s)
    damp = np.exp(-shift * L) if shift * L < 700.0 else 0.0
    if small.any():
        out[small] = damp * _series_quot(s[small], L, 1.0)
    big = ~small
    if big.any():
        sb = s[big]
        out[big] = (np.exp((sb - shift) * L) - np.exp(-(sb + shift) * L)) / (2.0 * sb)
    return complex(out) if scalar else out


def cosh_scaled(s, L: float, shift: float):
    """e^{-shift L} cosh(s L), same stabilization as sinh_quot_scaled."""
    s = np.asarray(s, dtype=complex)
    return (np.exp((s - shift) * L) + np.exp(-(s + shift) * L)) / 2.0


def sinc_band(delta: float, x, center=0.0):
    """sin(pi delta (x - center)) / (pi (x - center)) for real array x.

    The reproducing kernel of the classical band-limited space with
    transform support [-delta/2, delta/2]; value delta at the center.
    """
    arg = np.pi * delta * (np.asarray(x, dtype=float) - center)
    return delta * np.sinc(arg / np.pi)


def sinc_band_c(delta: float, z, center=0.0):
    """Complex-argument version of :func:`sinc_band`:
    sin(pi delta (z - center)) / (pi (z - center)) = sin_quot(pi (z - center), delta)."""
    d = np.asarray(z, dtype=complex) - complex(center)
    return sin_quot(np.pi * d, delta)
