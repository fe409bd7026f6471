"""Empirical pair-correlation engine.

Ingests files of real ordinates, evaluates the normalized form factor

    F(alpha, T) = ((lam T / 2 pi) log T)^{-1}
                  * sum over window pairs of T^{i lam alpha (g - g')} w(g - g'),

with w(u) = 4 / (4 + u^2), via both the direct double sum and the
positive-definite integral representation; averages it over alpha windows;
and evaluates the two extremal-problem functionals (the measure functional
ratio that the kernel diagonal optimizes, and the triangle-transform witness
of the universal 1/2 floor).
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import polygamma

from .errors import EmptyDataset, EmptyWindow, ParseError
from .kernels import k0_endpoint_value, kernel_k00, kernel_k0z_grid
from .measures import Measure, nu_hat_grid
from .quadrature import panel_rule

_PAIR_CHUNK = 512            # rows per chunk of the double sum
MAX_ORDINATES = 100_000


class Window(enum.Enum):
    ZERO_TO_T = "zero_to_t"        # (0, T]
    T_TO_TWO_T = "t_to_two_t"      # (T, 2T]
    SYMMETRIC_T = "symmetric_t"    # [-T/2, T/2]


def pair_weight(u):
    """Montgomery's weight w(u) = 4 / (4 + u^2)."""
    u = np.asarray(u, dtype=float)
    return 4.0 / (4.0 + u * u)


@dataclass(frozen=True)
class ZeroDataset:
    """Sorted ordinates with multiplicity, plus the density parameter lam
    and the window convention used for all sums."""

    ordinates: np.ndarray
    lam: float
    window: Window = Window.ZERO_TO_T
    source: str = ""

    def __post_init__(self):
        arr = np.asarray(self.ordinates, dtype=float)
        if arr.ndim != 1 or len(arr) == 0:
            raise EmptyDataset("no ordinates")
        if not np.all(np.isfinite(arr)):
            raise ValueError("ordinates must be finite")
        if np.any(np.diff(arr) < 0):
            raise ValueError("ordinates must be sorted")
        if not (self.lam > 0):
            raise ValueError("lam must be > 0")

    def in_window(self, T: float) -> np.ndarray:
        g = self.ordinates
        if self.window is Window.ZERO_TO_T:
            mask = (g > 0) & (g <= T)
        elif self.window is Window.T_TO_TWO_T:
            mask = (g > T) & (g <= 2 * T)
        else:
            mask = (g >= -T / 2) & (g <= T / 2)
        return g[mask]

    def summary(self) -> str:
        g = self.ordinates
        return (f"{len(g)} ordinates in [{g[0]:.6g}, {g[-1]:.6g}], "
                f"lam={self.lam:.6g}, window={self.window.value}")


@dataclass(frozen=True)
class FormFactorGrid:
    alphas: np.ndarray
    values: np.ndarray
    T: float
    dataset_ref: str = ""


def load_zeros(path, lam: float = None,
               window: Window = Window.ZERO_TO_T) -> ZeroDataset:
    """Read one ordinate per line from a UTF-8 text file.

    Blank lines and '#' comments are skipped; a header '# lambda=<value>'
    supplies the density parameter when the caller does not.  Unsorted
    input is sorted with a warning.
    """
    path = Path(path)
    ordinates = []
    header_lam = None
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                body = text[1:].strip().replace(" ", "")
                if body.lower().startswith("lambda="):
                    try:
                        header_lam = float(body.split("=", 1)[1])
                    except ValueError:
                        raise ParseError(lineno, line.rstrip("\n"),
                                         "bad lambda header") from None
                continue
            try:
                ordinates.append(float(text))
            except ValueError:
                raise ParseError(lineno, line.rstrip("\n"),
                                 "not a decimal literal") from None
    if not ordinates:
        raise EmptyDataset(str(path))
    if len(ordinates) > MAX_ORDINATES:
        raise ValueError(f"dataset exceeds the {MAX_ORDINATES}-ordinate cap")
    arr = np.array(ordinates, dtype=float)
    if np.any(np.diff(arr) < 0):
        warnings.warn(f"{path}: ordinates were not sorted; sorting on load")
        arr = np.sort(arr)
    if lam is None:
        lam = header_lam
    if lam is None:
        raise ValueError("no lambda given and no '# lambda=' header found")
    return ZeroDataset(ordinates=arr, lam=float(lam), window=window,
                       source=str(path))


def _normalizer(ds: ZeroDataset, T: float) -> float:
    if T <= 1.0:
        raise ValueError("need T > 1 so log T > 0")
    return (ds.lam * T / (2.0 * np.pi)) * np.log(T)


def form_factor(ds: ZeroDataset, T: float, alpha: float) -> float:
    """Direct double-sum evaluation of the form factor (real and even in
    alpha; the imaginary part cancels pairwise and is asserted tiny)."""
    g = ds.in_window(T)
    n = len(g)
    if n == 0:
        raise EmptyWindow(f"no ordinates in the {ds.window.value} window for T={T}")
    theta = ds.lam * alpha * np.log(T)
    phase = np.exp(1j * theta * g)
    total = 0.0 + 0.0j
    for lo in range(0, n, _PAIR_CHUNK):
        hi = min(lo + _PAIR_CHUNK, n)
        diff = g[lo:hi, None] - g[None, :]
        total += np.sum(phase[lo:hi, None] * np.conj(phase)[None, :] * pair_weight(diff))
    if abs(total.imag) > 1e-10 * n * n:
        raise AssertionError(f"imaginary part {total.imag:.3e} did not cancel")
    return float(total.real) / _normalizer(ds, T)


def form_factor_positive(ds: ZeroDataset, T: float, alpha: float,
                         u_cutoff: float = 10.0) -> float:
    """The same quantity through the positive-definite representation

        2 pi * integral e^{-4 pi |u|} | sum_g T^{i lam alpha g} e^{2 pi i g u} |^2 du,

    truncated at |u| <= u_cutoff (the integrand dies like e^{-4 pi u}).
    Nonnegative by construction.
    """
    if u_cutoff <= 0:
        raise ValueError("u_cutoff must be > 0")
    g = ds.in_window(T)
    if len(g) == 0:
        raise EmptyWindow(f"no ordinates in the {ds.window.value} window for T={T}")
    theta = ds.lam * alpha * np.log(T)

    def integrand(u):
        u = np.asarray(u, dtype=float)
        s = np.exp(1j * (theta * g[None, :] + 2.0 * np.pi * u[:, None] * g[None, :]))
        mag = np.abs(np.sum(s, axis=1)) ** 2
        return np.exp(-4.0 * np.pi * np.abs(u)) * mag

    spread = max(float(g[-1] - g[0]), 1.0)
    val = 0.0
    for (a, b) in ((-u_cutoff, 0.0), (0.0, u_cutoff)):   # kink of e^{-4 pi |u|}
        pts, wts = panel_rule(a, b, panel_length=0.25 / spread, order=16)
        val += float(np.dot(wts, integrand(pts)))
    return 2.0 * np.pi * val / _normalizer(ds, T)


def form_factor_grid(ds: ZeroDataset, T: float, alphas) -> FormFactorGrid:
    alphas = np.asarray(alphas, dtype=float)
    vals = np.array([form_factor(ds, T, a) for a in alphas])
    return FormFactorGrid(alphas=alphas, values=vals, T=T, dataset_ref=ds.source)


def windowed_average(ds: ZeroDataset, T: float, b: float, ell: float,
                     grid_step: float) -> float:
    """Trapezoid average (1/ell) integral_b^{b+ell} F(alpha, T) d alpha."""
    if b < 0 or ell <= 0:
        raise ValueError("need b >= 0 and ell > 0")
    if grid_step > ell / 16.0:
        raise ValueError("grid_step must be <= ell / 16")
    n = int(np.ceil(ell / grid_step))
    alphas = np.linspace(b, b + ell, n + 1)
    vals = np.array([form_factor(ds, T, a) for a in alphas])
    return float(np.trapezoid(vals, alphas) / ell)


def symmetric_average(ds: ZeroDataset, T: float, beta: float,
                      grid_step: float) -> float:
    """(1 / 2 beta) integral_{-beta}^{beta} F(alpha, T) d alpha."""
    if beta <= 0:
        raise ValueError("beta must be > 0")
    n = int(np.ceil(2.0 * beta / grid_step))
    if n % 2:
        n += 1          # keep 0 on the grid
    alphas = np.linspace(-beta, beta, n + 1)
    vals = np.array([form_factor(ds, T, a) for a in alphas])
    return float(np.trapezoid(vals, alphas) / (2.0 * beta))


# ---------------------------------------------------------------------------
# extremal-problem functionals
# ---------------------------------------------------------------------------

def phi_functional(m: Measure, g_hat_samples, grid) -> float:
    """c1 * g_hat(0) + c2 * integral of g_hat(a) |a| e^{-c3 |a|} over
    [-Delta, Delta], from samples of g_hat on a covering grid."""
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(g_hat_samples, dtype=float)
    if grid.shape != vals.shape or grid.ndim != 1:
        raise ValueError("grid and samples must be matching 1-d arrays")
    if grid[0] > -m.delta or grid[-1] < m.delta:
        raise ValueError("grid must cover [-Delta, Delta]")
    at0 = float(np.interp(0.0, grid, vals))
    lo = np.searchsorted(grid, -m.delta, side="left")
    hi = np.searchsorted(grid, m.delta, side="right")
    xs = np.concatenate(([-m.delta], grid[lo:hi], [m.delta]))
    ys = np.concatenate(([np.interp(-m.delta, grid, vals)], vals[lo:hi],
                         [np.interp(m.delta, grid, vals)]))
    if 0.0 not in xs:
        pos = np.searchsorted(xs, 0.0)
        xs = np.insert(xs, pos, 0.0)
        ys = np.insert(ys, pos, at0)
    weight = np.abs(xs) * np.exp(-m.c3 * np.abs(xs))
    integral = float(np.trapezoid(ys * weight, xs))
    return m.c1 * at0 + m.c2 * integral


def ep1_ratio_check(m: Measure, truncation: float = None,
                    extended: bool = False) -> float:
    """Ratio Phi(g) / g(0) for the extremal candidate g = |K(0, .)|^2,
    computed through the Plancherel form integral |K(0,x)|^2 nu_hat(x) dx
    divided by K(0,0)^2.  Should reproduce 1 / K(0,0).

    The real-line integral is truncated with a closed-form correction for
    the non-oscillatory 1/x^2 far field of |K(0, x)|^2.
    """
    m.require_admissible(extended=extended)
    k00 = kernel_k00(m, extended=extended)
    if truncation is None:
        truncation = 2000.0 / m.delta
    pts, wts = panel_rule(-truncation, truncation, 1.0 / (2.0 * m.delta))
    kv = np.real(kernel_k0z_grid(m, pts.astype(complex), extended=extended))
    integral = float(np.dot(wts, kv * kv * nu_hat_grid(m, pts)))
    # far field K(0,x) ~ uL sin(pi Delta x)/(pi x): non-oscillatory tail part
    u_end = k0_endpoint_value(m)
    integral += m.c1 * u_end ** 2 / (np.pi ** 2 * truncation)
    return integral / (k00 * k00)


# ---------------------------------------------------------------------------
# triangle-transform witness of the universal floor
# ---------------------------------------------------------------------------

def fejer_witness(beta: float, x):
    """g(x) = beta (sin(pi beta x) / (pi beta x))^2, whose transform is the
    triangle (1 - |a|/beta)_+ <= indicator of [-beta, beta]."""
    arg = np.asarray(x, dtype=float) * beta
    return beta * np.sinc(arg) ** 2


def fejer_check(beta: float, grid_points: int = 2001) -> float:
    """Verify the witness membership conditions on a grid and return its
    value at the origin, which is exactly beta (the optimum of the
    second extremal problem)."""
    if beta <= 0:
        raise ValueError("beta must be > 0")
    a = np.linspace(-2.0 * beta, 2.0 * beta, grid_points)
    triangle = np.maximum(1.0 - np.abs(a) / beta, 0.0)
    indicator = (np.abs(a) <= beta).astype(float)
    if np.any(triangle > indicator + 1e-15):
        raise AssertionError("transform exceeds the indicator")
    x = np.linspace(-50.0, 50.0, grid_points)
    if np.any(fejer_witness(beta, x) < -1e-15):
        raise AssertionError("witness is negative somewhere")
    return float(beta)


def fejer_poisson_check(beta: float, n_max: int = 2000) -> tuple[float, float, float]:
    """Both sides of the lattice identity  sum_n g(n) = sum_k g_hat(k)  for
    the rescaled triangle witness, with the left tail beyond n_max evaluated
    in closed form.  Returns (lhs, rhs, |lhs - rhs|).

    Tail machinery: g(n) = sin^2(pi beta n) / (pi^2 beta n^2) for n != 0,
    and sum_{n>N} n^{-2} = psi'(N+1)  while
    sum_{n>N} cos(2 pi beta n)/n^2 = pi^2 (b^2 - b + 1/6) - partial sum,
    with b the fractional part of beta.
    """
    if beta <= 0:
        raise ValueError("beta must be > 0")
    n = np.arange(1, n_max + 1, dtype=float)
    s2 = np.sin(np.pi * beta * n) ** 2
    lhs = beta + (2.0 / (np.pi ** 2 * beta)) * float(np.sum(s2 / n ** 2))
    # analytic tail: sum_{n>N} (1 - cos(2 pi beta n)) / (2 n^2), both sides
    frac = beta - np.floor(beta)
    tail_one = float(polygamma(1, n_max + 1))
    cos_full = np.pi ** 2 * (frac * frac - frac + 1.0 / 6.0)
    cos_partial = float(np.sum(np.cos(2.0 * np.pi * beta * n) / n ** 2))
    tail_cos = cos_full - cos_partial
    lhs += (tail_one - tail_cos) / (np.pi ** 2 * beta)
    kmax = int(np.floor(beta))
    ks = np.arange(-kmax, kmax + 1, dtype=float)
    rhs = float(np.sum(np.maximum(1.0 - np.abs(ks) / beta, 0.0)))
    return lhs, rhs, abs(lhs - rhs)
