"""Measure family: transform closed form, surface bounds, admissibility."""

import numpy as np
import pytest

from pairpack import (Measure, NotAdmissible, extended_sigma_threshold,
                      g_surface, norm_bounds, nu_hat, nu_hat_grid, sup_g,
                      sup_g_point)
from pairpack.quadrature import integrate_with_kink


def nu_hat_quadrature(m, x):
    """Oracle: adaptive Gauss-Legendre quadrature of the defining integral,
    split at the |a| kink."""
    dens = integrate_with_kink(
        lambda a: np.cos(2 * np.pi * x * a) * np.abs(a) * np.exp(-m.c3 * np.abs(a)),
        -m.delta, m.delta, tol=1e-13)
    return m.c1 + m.c2 * dens


class TestMeasure:
    def test_field_validation(self):
        with pytest.raises(ValueError):
            Measure(0.0, 1, 0, 0.5)
        with pytest.raises(ValueError):
            Measure(1, -0.1, 0, 0.5)
        with pytest.raises(ValueError):
            Measure(1, 1, -1.0, 0.5)
        with pytest.raises(ValueError):
            Measure(1, 1, 0, 0.0)

    def test_sigma_and_gates(self):
        m = Measure(1.0, 1.0, 0.0, 0.5)
        assert m.sigma() == pytest.approx(0.25)
        assert m.is_admissible()
        # the 5/3 threshold is inclusive
        m_edge = Measure(3.0, 5.0, 0.0, 1.0)
        assert m_edge.sigma() == pytest.approx(5.0 / 3.0)
        assert m_edge.is_admissible()
        m_over = Measure(1.0, 1.7, 0.0, 1.0)
        assert not m_over.is_admissible()
        assert m_over.is_extended_admissible()
        assert extended_sigma_threshold() == pytest.approx(1.0 / sup_g(), abs=0)

    def test_total_mass_is_transform_at_zero(self):
        for m in (Measure(1, 1, 0, 0.5), Measure(1, 1, 4, 0.5),
                  Measure(2, 0.3, 1.7, 0.9)):
            assert nu_hat(m, 0.0) == pytest.approx(m.total_mass(), abs=1e-13)


class TestNuHat:
    def test_pure_atom(self):
        m = Measure(2.0, 0.0, 0.0, 1.0)
        assert nu_hat(m, 0.37) == 2.0

    def test_value_at_zero_is_total_mass(self):
        m = Measure(1.0, 1.0, 0.0, 0.5)
        assert nu_hat(m, 0.0) == pytest.approx(1.25, abs=1e-14)

    def test_against_quadrature_oracle(self):
        m = Measure(1.0, 1.0, 4.0, 0.5)
        assert nu_hat(m, 0.8) == pytest.approx(nu_hat_quadrature(m, 0.8), abs=1e-10)

    def test_quadrature_equivalence_random(self):
        rng = np.random.default_rng(7)
        for _ in range(12):
            c1 = rng.uniform(0.5, 2.0)
            delta = rng.uniform(0.3, 1.2)
            c2 = rng.uniform(0.0, 1.6) * c1 / delta ** 2
            c3 = rng.uniform(0.0, 5.0)
            m = Measure(c1, c2, c3, delta)
            x = rng.uniform(-3.0, 3.0)
            assert nu_hat(m, x) == pytest.approx(nu_hat_quadrature(m, x), abs=1e-10)

    def test_even(self):
        rng = np.random.default_rng(8)
        m = Measure(1.0, 1.0, 2.0, 0.7)
        for x in rng.uniform(0, 50, 50):
            assert abs(nu_hat(m, x) - nu_hat(m, -x)) <= 1e-12

    def test_series_branch_matches_formula(self):
        # c3 = 0 near x = 0: series switch at |pi delta x| < 1e-4
        m = Measure(1.0, 1.0, 0.0, 0.7)
        for x in (1e-5, 4.5e-5, -3e-5):
            assert nu_hat(m, x) == pytest.approx(nu_hat_quadrature(m, x), abs=1e-12)

    def test_grid_matches_scalar(self):
        m = Measure(1.0, 0.8, 1.3, 0.6)
        xs = np.linspace(-5, 5, 101)
        grid = nu_hat_grid(m, xs)
        for i in (0, 3, 50, 77, 100):
            assert grid[i] == pytest.approx(nu_hat(m, xs[i]), abs=1e-14)


class TestGSurface:
    def test_value_on_sigma_axis(self):
        # G(1, 0) = 2 (2/e - 1)
        assert g_surface(1.0, 0.0) == pytest.approx(2.0 * (2.0 * np.exp(-1.0) - 1.0),
                                                    abs=1e-12)

    def test_origin_limit(self):
        # series oracle: G(0, t) = -1 + t^2/4 + O(t^4)
        for t in (1e-3, 1e-4, 1e-5):
            assert g_surface(0.0, t) == pytest.approx(-1.0 + t * t / 4.0, abs=1e-8)
        assert g_surface(0.0, 0.0) == pytest.approx(-1.0, abs=1e-13)

    def test_series_formula_agreement_at_switch(self):
        # both branches active near |z| = 0.25
        for (s, t) in ((0.2, 0.12), (0.05, 0.26), (0.3, 0.05)):
            z2 = s * s + t * t
            direct = -np.exp(-s) / z2 ** 2 * (
                2 * np.exp(s) * (s * s - t * t)
                - 2 * (s * s - t * t + s ** 3 + t * t * s) * np.cos(t)
                + 2 * t * (2 * s + s * s + t * t) * np.sin(t))
            assert g_surface(s, t) == pytest.approx(direct, abs=1e-11)

    def test_nonpositive_on_t_zero_line(self):
        for s in np.linspace(0.0, 30.0, 301):
            assert g_surface(float(s), 0.0) <= 1e-15

    def test_rejects_negative_sigma(self):
        with pytest.raises(ValueError):
            g_surface(-0.1, 1.0)


class TestSupG:
    def test_value(self):
        assert sup_g() == pytest.approx(0.5864, abs=1e-3)
        assert 0.586 < sup_g() < 0.587

    def test_dominates_samples(self):
        ts = np.linspace(0.01, 100.0, 20000)
        vals = np.array([g_surface(0.0, float(t)) for t in ts])
        assert sup_g() >= vals.max() - 1e-12
        assert sup_g() >= g_surface(0.0, np.pi)

    def test_argmax_reproduces_sup(self):
        tstar, val = sup_g_point()
        assert abs(g_surface(0.0, tstar) - val) <= 1e-9
        # golden-section refinement oracle around the argmax
        lo, hi = tstar - 0.05, tstar + 0.05
        invphi = (np.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        for _ in range(80):
            c = b - invphi * (b - a)
            d = a + invphi * (b - a)
            if g_surface(0.0, c) > g_surface(0.0, d):
                b = d
            else:
                a = c
        refined = 0.5 * (a + b)
        assert abs(g_surface(0.0, refined) - val) <= 1e-9


class TestNormBounds:
    def test_pure_atom(self):
        nb = norm_bounds(Measure(1.0, 0.0, 0.0, 1.0))
        assert (nb.a_sq, nb.b_sq) == (1.0, 1.0)

    def test_formula_example(self):
        nb = norm_bounds(Measure(1.0, 1.0, 0.0, 0.5))
        assert nb.b_sq == pytest.approx(1.25, abs=0)
        assert nb.a_sq == pytest.approx(0.25 * (4.0 - sup_g()), abs=1e-14)
        assert nb.a_sq == pytest.approx(0.8534, abs=1e-3)

    def test_bounds_bracket_transform_on_grid(self):
        for m in (Measure(1, 1, 0, 0.5), Measure(1, 1, 2.0, 0.5),
                  Measure(1.0, 1.5, 0.7, 1.0)):
            nb = norm_bounds(m)
            xs = np.linspace(-1000.0, 1000.0, 200001)
            vals = nu_hat_grid(m, xs)
            assert vals.min() >= nb.a_sq - 1e-9
            assert vals.max() <= nb.b_sq + 1e-9

    def test_random_consistency(self):
        rng = np.random.default_rng(11)
        m = Measure(1.0, 1.0, 1.0, 0.5)
        nb = norm_bounds(m)
        xs = rng.uniform(-1e4, 1e4, 10000)
        vals = nu_hat_grid(m, xs)
        assert np.all(vals >= nb.a_sq - 1e-9)
        assert np.all(vals <= nb.b_sq + 1e-9)

    def test_not_admissible(self):
        m = Measure(1.0, 2.0, 0.0, 1.0)     # sigma = 2
        with pytest.raises(NotAdmissible):
            norm_bounds(m)
        with pytest.raises(NotAdmissible):
            norm_bounds(m, extended=True)
        m2 = Measure(1.0, 1.69, 0.0, 1.0)   # between 5/3 and 1/sup_g
        with pytest.raises(NotAdmissible):
            norm_bounds(m2)
        nb = norm_bounds(m2, extended=True)
        assert nb.a_sq > 0
