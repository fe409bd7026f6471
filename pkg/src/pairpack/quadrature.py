"""Gauss-Legendre quadrature utilities.

Provides cached Gauss-Legendre rules, composite panel rules, an adaptive
integrator used as the brute-force oracle throughout the package, and
barycentric Lagrange interpolation from arbitrary node sets.
"""

from __future__ import annotations

import functools

import numpy as np


@functools.lru_cache(maxsize=64)
def _gl_rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gauss_legendre(n: int, a: float, b: float):
    """Nodes and weights of the n-point Gauss-Legendre rule on [a, b]."""
    x, w = _gl_rule(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def panel_rule(a: float, b: float, panel_length: float, order: int = 24):
    """Composite Gauss-Legendre rule on [a, b] with panels of at most
    ``panel_length``.  Returns flat (points, weights) arrays."""
    n_panels = max(1, int(np.ceil((b - a) / panel_length)))
    edges = np.linspace(a, b, n_panels + 1)
    gx, gw = _gl_rule(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    wts = (half[:, None] * gw[None, :]).ravel()
    return pts, wts


def adaptive_quad(f, a: float, b: float, tol: float = 1e-12,
                  max_depth: int = 40) -> float:
    """Adaptive Gauss-Legendre integration of a vectorized callable.

    Each subinterval is integrated with 20- and 40-point rules; the
    difference drives bisection.  ``tol`` is an absolute tolerance on the
    whole interval, distributed over subintervals.
    """
    def recurse(lo, hi, tol_loc, depth):
        x1, w1 = gauss_legendre(20, lo, hi)
        x2, w2 = gauss_legendre(40, lo, hi)
        i1 = np.dot(w1, f(x1))
        i2 = np.dot(w2, f(x2))
        if abs(i2 - i1) <= tol_loc or depth >= max_depth:
            return i2
        mid = 0.5 * (lo + hi)
        return (recurse(lo, mid, tol_loc / 2, depth + 1)
                + recurse(mid, hi, tol_loc / 2, depth + 1))

    if b <= a:
        return 0.0
    return recurse(a, b, tol, 0)


def integrate_with_kink(f, a: float, b: float, kink: float = 0.0,
                        tol: float = 1e-12) -> float:
    """Adaptive integration of ``f`` on [a, b], splitting at one interior
    kink so each piece is smooth."""
    if a < kink < b:
        return adaptive_quad(f, a, kink, tol / 2) + adaptive_quad(f, kink, b, tol / 2)
    return adaptive_quad(f, a, b, tol)


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    """Barycentric weights for Lagrange interpolation from ``nodes``.

    Computed through log magnitudes so products over hundreds of nodes do
    not underflow; the common scale cancels in the barycentric formula.
    """
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    log_w = np.zeros(n)
    sign = np.ones(n)
    for j in range(n):
        d = x[j] - np.delete(x, j)
        log_w[j] = -np.sum(np.log(np.abs(d)))
        sign[j] = np.prod(np.sign(d))
    log_w -= np.max(log_w)
    return sign * np.exp(log_w)


def barycentric_matrix(nodes: np.ndarray, bary_w: np.ndarray,
                       targets: np.ndarray) -> np.ndarray:
    """Dense matrix P with (P @ f(nodes)) = interpolant of f at ``targets``."""
    x = np.asarray(nodes, dtype=float)
    t = np.asarray(targets, dtype=float)
    scale = max(np.ptp(x), 1e-300)
    diff = t[:, None] - x[None, :]
    exact = np.abs(diff) < 1e-14 * scale
    # avoid 0-division at exact hits; those rows are overwritten below
    diff[exact] = 1.0
    P = bary_w[None, :] / diff
    P /= np.sum(P, axis=1)[:, None]
    hit_rows = np.nonzero(exact.any(axis=1))[0]
    for i in hit_rows:
        P[i, :] = 0.0
        P[i, np.nonzero(exact[i])[0][0]] = 1.0
    return P
