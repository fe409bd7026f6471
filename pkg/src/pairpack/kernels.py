"""Closed-form reproducing kernels of the weighted band-limited spaces.

Two regimes:

* c3 = 0: the full kernel K(w, z) is available for all complex w, z.  It is
  assembled from coefficient functions of w and two transformed basis
  functions of z, plus a shifted sinc term.  The w-side coefficients share
  a removable singularity at 2 c1 pi^2 w^2 = c2, handled by a symmetric
  circle average (the kernel is entire in each variable).

* c3 > 0: only the section K(0, z) has a closed form.  It is built from the
  characteristic quartic roots eta1, eta2, the moment functions A, B, the
  transform C(eta, z), and the constant mu.  When the two roots collide
  (lam = 4 c3^2) the formula degenerates and the derivative forms A', B',
  dC/deta take over.

Sign conventions: B carries a minus sign on its integral term and the
second basis transform r(z) a minus sign on its first term.  Both are fixed
by requiring the removable singularities to actually cancel and are
confirmed against the independent integral-equation oracle in the tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRoots, InvalidRegime, NotAdmissible
from .measures import Measure
from .special import (cosh_moment, cosh_moment_deta, cosh_scaled, sin_quot,
                      sinc_band_c, sinh_quot, sinh_quot_ds, sinh_quot_scaled)

DEGENERACY_RTOL = 1e-9
SCRIPT_L_SIGMA_MAX = 2.9     # certified nonvanishing range for the divisor
_REMOVABLE_RTOL = 1e-8       # w-side singularity detection, relative to c2
_CIRCLE_RADIUS = 1e-3        # radius of the 4-point limit average


class CaseTag(enum.Enum):
    PURELY_IMAGINARY = "purely_imaginary"    # lam > 4 c3^2
    CONJUGATE_QUADRANT = "conjugate_quadrant"  # lam < 4 c3^2
    DEGENERATE = "degenerate"                # lam = 4 c3^2


class LimitPath(enum.Enum):
    NONE = "none"
    REMOVABLE_W = "removable_w"
    REMOVABLE_Z = "removable_z"
    DEGENERATE_ETA = "degenerate_eta"


@dataclass(frozen=True)
class EtaPair:
    """The two characteristic roots, with Re >= 0 and eta1 + eta2 != 0.

    eta1 carries the '+' branch of the discriminant square root; the final
    kernel value is invariant under swapping the two roots.
    """

    eta1: complex
    eta2: complex
    degenerate: bool
    case_tag: CaseTag


@dataclass(frozen=True)
class KernelEvaluation:
    value: complex
    at_w: complex
    at_z: complex
    limit_path: LimitPath = LimitPath.NONE


def quartic_roots(m: Measure) -> EtaPair:
    """Roots eta1, eta2 of  eta^4 + 2(lam - c3^2) eta^2 + c3^2 (2 lam + c3^2) = 0
    with lam = c2/c1, taking eta^2 = c3^2 - lam +/- sqrt(lam) Lam and the
    square roots with nonnegative real part."""
    if m.c3 == 0.0:
        raise InvalidRegime("c3 = 0 has its own kernel formula; no quartic roots")
    if m.c2 == 0.0:
        raise InvalidRegime("c2 = 0 degenerates to the pure sinc kernel")
    lam, c3 = m.lam(), m.c3
    if lam >= 4.0 * c3 ** 2:
        big_lam = complex(np.sqrt(lam - 4.0 * c3 ** 2))
    else:
        big_lam = 1j * np.sqrt(4.0 * c3 ** 2 - lam)
    eta1_sq = c3 ** 2 - lam + np.sqrt(lam) * big_lam
    eta2_sq = c3 ** 2 - lam - np.sqrt(lam) * big_lam
    eta1 = np.sqrt(eta1_sq)   # principal branch has Re >= 0
    eta2 = np.sqrt(eta2_sq)
    degenerate = abs(eta1_sq - eta2_sq) <= DEGENERACY_RTOL * (abs(eta1_sq) + abs(eta2_sq))
    if degenerate:
        tag = CaseTag.DEGENERATE
    elif lam > 4.0 * c3 ** 2:
        tag = CaseTag.PURELY_IMAGINARY
    else:
        tag = CaseTag.CONJUGATE_QUADRANT
    return EtaPair(eta1=complex(eta1), eta2=complex(eta2),
                   degenerate=bool(degenerate), case_tag=tag)


def quartic_residual(m: Measure, eta: complex) -> float:
    """Relative residual of eta in the characteristic quartic (test hook)."""
    lam, c3 = m.lam(), m.c3
    val = eta ** 4 + 2.0 * (lam - c3 ** 2) * eta ** 2 + c3 ** 2 * (2.0 * lam + c3 ** 2)
    scale = abs(eta) ** 4 + 2.0 * abs(lam - c3 ** 2) * abs(eta) ** 2 \
        + c3 ** 2 * (2.0 * lam + c3 ** 2)
    return abs(val) / max(scale, 1e-300)


def mu(m: Measure) -> float:
    """mu = c3^2 / (2 c2 + c3^2 c1); zero exactly when c3 = 0."""
    if m.c2 == 0.0 and m.c3 == 0.0:
        raise ValueError("mu requires c2 > 0 or c3 > 0")
    return m.c3 ** 2 / (2.0 * m.c2 + m.c3 ** 2 * m.c1)


def aux_A(m: Measure, eta: complex) -> complex:
    """A(eta) = 1 + lam * integral of cosh(eta a) |a| e^{-c3|a|} over the
    half-support interval [-Delta/2, Delta/2].  Even in eta."""
    if m.c2 == 0.0:
        return 1.0 + 0.0j
    return 1.0 + m.lam() * cosh_moment(1, eta, m.c3, m.delta)


def aux_B(m: Measure, eta: complex) -> complex:
    """B(eta) = eta^2 + 2 lam - c3^2 - 2 lam c3 * integral of
    cosh(eta a) e^{-c3|a|}.  Even in eta."""
    lam, c3 = m.lam(), m.c3
    out = eta * eta + 2.0 * lam - c3 ** 2
    if m.c2 != 0.0 and c3 != 0.0:
        out -= 2.0 * lam * c3 * cosh_moment(0, eta, c3, m.delta)
    return out


def aux_A_prime(m: Measure, eta: complex) -> complex:
    if m.c2 == 0.0:
        return 0.0 + 0.0j
    return m.lam() * cosh_moment_deta(1, eta, m.c3, m.delta)


def aux_B_prime(m: Measure, eta: complex) -> complex:
    out = 2.0 * eta
    if m.c2 != 0.0 and m.c3 != 0.0:
        out -= 2.0 * m.lam() * m.c3 * cosh_moment_deta(0, eta, m.c3, m.delta)
    return out


def aux_C(m: Measure, eta: complex, z: complex) -> complex:
    """C(eta, z) = integral of cosh(eta t) e^{2 pi i z t} over
    [-Delta/2, Delta/2], written as two sinh quotients so the removable
    points z = +/- i eta / (2 pi) need no special casing."""
    L = m.delta / 2.0
    s = 2j * np.pi * z
    return sinh_quot(eta + s, L) + sinh_quot(-eta + s, L)


def aux_C_deta(m: Measure, eta: complex, z: complex) -> complex:
    """d/d_eta of C(eta, z), the transform of t sinh(eta t)."""
    L = m.delta / 2.0
    s = 2j * np.pi * z
    return sinh_quot_ds(eta + s, L) - sinh_quot_ds(-eta + s, L)


def script_L(m: Measure) -> complex:
    """The divisor A(eta1) B(eta2) - B(eta1) A(eta2) of the c3 > 0 kernel.

    Real and negative when the roots are purely imaginary; purely imaginary
    with negative imaginary part when they sit in conjugate quadrants.
    Certified nonzero for sigma <= 2.9 away from the degenerate line.
    """
    if m.c3 == 0.0 or m.c2 == 0.0:
        raise InvalidRegime("script_L needs c2 > 0 and c3 > 0")
    if m.sigma() > SCRIPT_L_SIGMA_MAX:
        raise NotAdmissible(
            f"sigma = {m.sigma():.6g} > {SCRIPT_L_SIGMA_MAX}: nonvanishing of the "
            "divisor is not certified there")
    roots = quartic_roots(m)
    if roots.degenerate:
        raise DegenerateRoots("lam = 4 c3^2: the two-root divisor is not defined")
    a1, a2 = aux_A(m, roots.eta1), aux_A(m, roots.eta2)
    b1, b2 = aux_B(m, roots.eta1), aux_B(m, roots.eta2)
    return a1 * b2 - b1 * a2


@dataclass(frozen=True)
class TransformSolution:
    """Fourier-side solution u0 of the kernel section K(0, .), expressed in
    the cosh basis: u0(t) = T1 cosh(eta1 t) + T2 cosh(eta2 t) + mu for the
    generic case, u0(t) = T1 cosh(eta1 t) + T2 t sinh(eta1 t) + mu when the
    roots are degenerate.

    The coefficients are stored with the exponential damping e^{-c3 Delta/2}
    factored out (T_i = t_i_scaled * e^{-scale}): both right-hand sides of
    the defining linear system carry that factor exactly, and keeping it
    symbolic lets the assembly survive c3 Delta in the thousands, where T_i
    underflows and cosh(eta L) overflows individually.
    """

    roots: EtaPair
    t1_scaled: complex
    t2_scaled: complex
    mu: float
    degenerate: bool
    scale: float        # c3 * delta / 2

    def endpoint_value(self, m: Measure) -> complex:
        """u0 at the endpoint Delta/2 (used by far-field tail corrections)."""
        L = m.delta / 2.0
        e1 = self.roots.eta1
        if self.degenerate:
            damp = np.exp(-self.scale)
            return (self.t1_scaled * cosh_scaled(e1, L, m.c3)
                    + self.t2_scaled * damp * L * np.sinh(e1 * L) + self.mu)
        return (self.t1_scaled * cosh_scaled(e1, L, m.c3)
                + self.t2_scaled * cosh_scaled(self.roots.eta2, L, m.c3)
                + self.mu)


def k0_transform_solution(m: Measure) -> TransformSolution:
    roots = quartic_roots(m)
    mu_val = mu(m)
    L = m.delta / 2.0
    # exact closed forms: R1 = e^{-c3 L} rho1, R2 = e^{-c3 L} rho2
    denom = m.c1 * (2.0 * m.c2 + m.c3 ** 2 * m.c1)
    rho1 = 2.0 * m.c2 * (1.0 + m.c3 * L) / denom
    rho2 = 4.0 * m.c2 * m.c3 ** 2 / denom
    e1, e2 = roots.eta1, roots.eta2
    if roots.degenerate:
        a1, b1 = aux_A(m, e1), aux_B(m, e1)
        ap, bp = aux_A_prime(m, e1), aux_B_prime(m, e1)
        det = a1 * bp - ap * b1
        t1 = (rho1 * bp + rho2 * ap) / det
        t2 = -(rho1 * b1 + rho2 * a1) / det
    else:
        a1, a2 = aux_A(m, e1), aux_A(m, e2)
        b1, b2 = aux_B(m, e1), aux_B(m, e2)
        div = a1 * b2 - b1 * a2
        t1 = (rho1 * b2 + rho2 * a2) / div
        t2 = -(rho1 * b1 + rho2 * a1) / div
    return TransformSolution(roots=roots, t1_scaled=t1, t2_scaled=t2,
                             mu=mu_val, degenerate=roots.degenerate,
                             scale=m.c3 * L)


def kernel_k0z(m: Measure, z: complex, extended: bool = False) -> KernelEvaluation:
    """K(0, z) for c3 > 0, real entire and even in z."""
    if m.c3 == 0.0:
        raise InvalidRegime("use kernel_c3zero for c3 = 0")
    m.require_admissible(extended=extended)
    if m.c2 == 0.0:
        return KernelEvaluation(value=complex(sinc_band_c(m.delta, z) / m.c1),
                                at_w=0.0, at_z=complex(z))
    sol = k0_transform_solution(m)
    val = _k0z_assemble(m, sol, z)
    path = LimitPath.DEGENERATE_ETA if sol.degenerate else LimitPath.NONE
    return KernelEvaluation(value=complex(val), at_w=0.0, at_z=complex(z),
                            limit_path=path)


def _aux_C_scaled(m: Measure, eta, z):
    """e^{-c3 Delta/2} C(eta, z), overflow-free for large c3."""
    L = m.delta / 2.0
    s = 2j * np.pi * np.asarray(z, dtype=complex)
    return (sinh_quot_scaled(eta + s, L, m.c3)
            + sinh_quot_scaled(-eta + s, L, m.c3))


def _k0z_assemble(m: Measure, sol: TransformSolution, z):
    sinc_term = 2.0 * sin_quot(2.0 * np.pi * np.asarray(z, dtype=complex),
                               m.delta / 2.0)
    if sol.degenerate:
        # degenerate roots force c3 = sqrt(lam)/2, so the scale is small and
        # the derivative transform needs no stabilization
        damp = np.exp(-sol.scale)
        return (sol.t1_scaled * _aux_C_scaled(m, sol.roots.eta1, z)
                + sol.t2_scaled * damp * aux_C_deta(m, sol.roots.eta1, z)
                + sol.mu * sinc_term)
    return (sol.t1_scaled * _aux_C_scaled(m, sol.roots.eta1, z)
            + sol.t2_scaled * _aux_C_scaled(m, sol.roots.eta2, z)
            + sol.mu * sinc_term)


def kernel_k00(m: Measure, extended: bool = False) -> float:
    """K(0, 0), the diagonal kernel value whose reciprocal upper-bounds the
    optimization constant of the averaged form factor."""
    m.require_admissible(extended=extended)
    if m.c2 == 0.0:
        return m.delta / m.c1
    if m.c3 == 0.0:
        # K = (Delta/c1) (sin th / th) / (cos th + th sin th), th^2 = sigma/2;
        # this arrangement is stable down to c2 -> 0
        th = np.sqrt(m.c2 / (2.0 * m.c1)) * m.delta
        return (m.delta / m.c1) * np.sinc(th / np.pi) / (np.cos(th) + th * np.sin(th))
    val = kernel_k0z(m, 0.0, extended=extended).value
    return float(val.real)


# ---------------------------------------------------------------------------
# c3 = 0: the full two-variable kernel
# ---------------------------------------------------------------------------

def _coeff_abc(m: Measure, w: complex):
    """Coefficient functions a(w), b(w), c(w) of the c3 = 0 solution.  All
    three share the denominator 2 c1 pi^2 w^2 - c2."""
    c1, c2, d = m.c1, m.c2, m.delta
    om = np.sqrt(2.0 * c2 / c1)
    th = om * d / 2.0
    den = 2.0 * c1 * np.pi ** 2 * w * w - c2
    cw = np.cos(np.pi * d * w)
    sw = np.sin(np.pi * d * w)
    a = -2.0 * c2 * (cw + np.pi * d * w * sw) / (
        c1 * den * (2.0 * np.cos(th) + om * d * np.sin(th)))
    b = om * 1j * np.pi * w * cw / (den * np.cos(th))
    c = 2.0 * np.pi ** 2 * w * w / den
    return a, b, c


def _qr_transforms(m: Measure, z: complex):
    """q(z), r(z): transforms of cos(om t) and sin(om t) over the support."""
    om = np.sqrt(2.0 * m.c2 / m.c1)
    L = m.delta / 2.0
    s = 2.0 * np.pi * z
    q = sin_quot(s + om, L) + sin_quot(s - om, L)
    r = 1j * (sin_quot(s - om, L) - sin_quot(s + om, L))
    return q, r


def _near_coeff_zero(m: Measure, v: complex) -> bool:
    """True when 2 c1 pi^2 v^2 - c2 is within tolerance of its zero."""
    if m.c2 == 0.0:
        return False
    return abs(2.0 * m.c1 * np.pi ** 2 * v * v - m.c2) <= _REMOVABLE_RTOL * m.c2


def _kernel_c3zero_raw(m: Measure, w: complex, z: complex) -> complex:
    wb = np.conj(w)
    a, b, c = _coeff_abc(m, wb)
    q, r = _qr_transforms(m, z)
    sinc_term = 2.0 * sin_quot(2.0 * np.pi * (z - wb), m.delta / 2.0)
    return a * q + b * r + c * sinc_term


def kernel_c3zero(m: Measure, w: complex, z: complex,
                  extended: bool = False) -> KernelEvaluation:
    """Full kernel K(w, z) for c3 = 0; Hermitian, entire in each variable.

    Near the shared zero of the coefficient denominators the value is
    recovered as a 4-point circle average around the singular parameter,
    exact to fourth order because the kernel is analytic there.
    """
    if m.c3 != 0.0:
        raise InvalidRegime("use kernel_k0z for c3 > 0")
    m.require_admissible(extended=extended)
    w = complex(w)
    z = complex(z)
    if m.c2 == 0.0:
        val = sinc_band_c(m.delta, z, center=np.conj(w)) / m.c1
        return KernelEvaluation(value=complex(val), at_w=w, at_z=z)

    # the z-side removable points are absorbed by the sinc-quotient split in
    # q and r, so only the w side needs an actual limit branch
    path = LimitPath.NONE
    if _near_coeff_zero(m, z):
        path = LimitPath.REMOVABLE_Z
    if _near_coeff_zero(m, w):
        path = LimitPath.REMOVABLE_W
        r0 = _CIRCLE_RADIUS * max(1.0, abs(w))
        pts = [w + r0 * np.exp(1j * np.pi * (k + 0.5) / 2.0) for k in range(4)]
        val = sum(_kernel_c3zero_raw(m, p, z) for p in pts) / 4.0
    else:
        val = _kernel_c3zero_raw(m, w, z)
    return KernelEvaluation(value=complex(val), at_w=w, at_z=z, limit_path=path)


# ---------------------------------------------------------------------------
# vectorized section evaluation
# ---------------------------------------------------------------------------

def kernel_k0z_grid(m: Measure, z: np.ndarray, extended: bool = False) -> np.ndarray:
    """K(0, z) over an array of points, for any c3 >= 0."""
    m.require_admissible(extended=extended)
    z = np.asarray(z, dtype=complex)
    if m.c2 == 0.0:
        return np.asarray(sinc_band_c(m.delta, z)) / m.c1
    if m.c3 == 0.0:
        # b(0) = c(0) = 0, so the section collapses to a(0) q(z)
        a0, _, _ = _coeff_abc_at_zero(m)
        q, _ = _qr_transforms(m, z)
        return a0 * q
    return _k0z_assemble(m, k0_transform_solution(m), z)


def _coeff_abc_at_zero(m: Measure):
    """a(0), b(0), c(0) for the c3 = 0 kernel; b and c vanish at w = 0."""
    th = np.sqrt(m.c2 / (2.0 * m.c1)) * m.delta
    a0 = 1.0 / (m.c1 * (np.cos(th) + th * np.sin(th)))
    return a0, 0.0, 0.0


def k0_endpoint_value(m: Measure) -> float:
    """Value of the transform-side solution u0 at the support endpoint
    Delta/2; the coefficient of the 1/x far field of K(0, x)."""
    if m.c2 == 0.0:
        return 1.0 / m.c1
    if m.c3 == 0.0:
        om = np.sqrt(2.0 * m.c2 / m.c1)
        th = om * m.delta / 2.0
        a0, _, _ = _coeff_abc_at_zero(m)
        return float(a0 * np.cos(th))
    return float(k0_transform_solution(m).endpoint_value(m).real)
