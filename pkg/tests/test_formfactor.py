"""Empirical form factor, functionals, and the triangle-transform witness."""

import numpy as np
import pytest

from pairpack import (EmptyDataset, EmptyWindow, Measure, ParseError, Window,
                      ZeroDataset, ep1_ratio_check, fejer_check,
                      fejer_poisson_check, form_factor, form_factor_positive,
                      kernel_k00, kernel_k0z_grid, load_zeros, phi_functional,
                      symmetric_average, windowed_average)
from pairpack.formfactor import fejer_witness, pair_weight
from pairpack.kernels import k0_transform_solution
from pairpack.quadrature import gauss_legendre


def hand_form_factor(ordinates, lam, T, alpha):
    """Oracle: literal term-by-term expansion of the normalized double sum."""
    total = 0.0
    for gi in ordinates:
        for gj in ordinates:
            total += np.cos(lam * alpha * np.log(T) * (gi - gj)) \
                * 4.0 / (4.0 + (gi - gj) ** 2)
    return total / ((lam * T / (2 * np.pi)) * np.log(T))


class TestLoadZeros:
    def test_basic(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.1347\n21.0220\n25.0109\n")
        ds = load_zeros(p, lam=1.0)
        assert len(ds.ordinates) == 3
        assert ds.ordinates[0] == pytest.approx(14.1347)

    def test_comments_and_blanks(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("# a comment\n\n10.0\n# another\n12.5\n\n")
        ds = load_zeros(p, lam=1.0)
        assert list(ds.ordinates) == [10.0, 12.5]

    def test_lambda_header(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("# lambda=2.5\n10.0\n11.0\n")
        assert load_zeros(p).lam == 2.5
        # explicit argument wins over the header
        assert load_zeros(p, lam=1.0).lam == 1.0

    def test_unsorted_sorted_with_warning(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("12.0\n10.0\n11.0\n")
        with pytest.warns(UserWarning, match="not sorted"):
            ds = load_zeros(p, lam=1.0)
        assert list(ds.ordinates) == [10.0, 11.0, 12.0]

    def test_parse_error_carries_position(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("10.0\nnot-a-number\n")
        with pytest.raises(ParseError) as exc:
            load_zeros(p, lam=1.0)
        assert exc.value.lineno == 2
        assert "not-a-number" in exc.value.content

    def test_empty_dataset(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("# only comments\n")
        with pytest.raises(EmptyDataset):
            load_zeros(p, lam=1.0)

    def test_missing_lambda(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("10.0\n")
        with pytest.raises(ValueError):
            load_zeros(p)


class TestFormFactor:
    def test_single_ordinate_diagonal(self):
        ds = ZeroDataset(ordinates=np.array([10.0]), lam=1.0)
        expected = 1.0 / ((100.0 / (2 * np.pi)) * np.log(100.0))
        for alpha in (0.0, 0.37, -2.0):
            assert form_factor(ds, 100.0, alpha) == pytest.approx(expected,
                                                                  abs=1e-15)
        assert expected == pytest.approx(0.013644, abs=1e-6)

    def test_two_ordinates_hand_expansion(self):
        ds = ZeroDataset(ordinates=np.array([10.0, 10.5]), lam=1.0)
        norm = (100.0 / (2 * np.pi)) * np.log(100.0)
        expected_at_zero = (2.0 + 2.0 * (4.0 / 4.25)) / norm
        assert form_factor(ds, 100.0, 0.0) == pytest.approx(expected_at_zero,
                                                            abs=1e-14)
        assert form_factor(ds, 100.0, 0.8) == pytest.approx(
            hand_form_factor([10.0, 10.5], 1.0, 100.0, 0.8), abs=1e-14)

    def test_even_in_alpha(self):
        rng = np.random.default_rng(21)
        ds = ZeroDataset(ordinates=np.sort(rng.uniform(5, 50, 12)), lam=1.3)
        for alpha in (0.3, 1.7):
            assert form_factor(ds, 60.0, alpha) == pytest.approx(
                form_factor(ds, 60.0, -alpha), abs=1e-12)

    def test_nonnegative(self):
        rng = np.random.default_rng(22)
        for _ in range(10):
            n = int(rng.integers(1, 8))
            ds = ZeroDataset(ordinates=np.sort(rng.uniform(1, 30, n)), lam=1.0)
            assert form_factor(ds, 40.0, float(rng.uniform(-3, 3))) >= -1e-10

    def test_window_conventions(self):
        g = np.array([5.0, 15.0, 25.0, 45.0])
        ds_0T = ZeroDataset(ordinates=g, lam=1.0, window=Window.ZERO_TO_T)
        ds_T2T = ZeroDataset(ordinates=g, lam=1.0, window=Window.T_TO_TWO_T)
        assert len(ds_0T.in_window(20.0)) == 2       # 5, 15
        assert len(ds_T2T.in_window(20.0)) == 1      # 25
        sym = ZeroDataset(ordinates=np.array([-3.0, 1.0, 9.0]), lam=1.0,
                          window=Window.SYMMETRIC_T)
        assert len(sym.in_window(10.0)) == 2         # [-5, 5]

    def test_empty_window(self):
        ds = ZeroDataset(ordinates=np.array([50.0]), lam=1.0)
        with pytest.raises(EmptyWindow):
            form_factor(ds, 20.0, 0.3)


class TestFormFactorPositive:
    def test_single_ordinate_matches_direct(self):
        ds = ZeroDataset(ordinates=np.array([10.0]), lam=1.0)
        direct = form_factor(ds, 100.0, 0.5)
        positive = form_factor_positive(ds, 100.0, 0.5, u_cutoff=10.0)
        assert positive == pytest.approx(direct, abs=1e-8)

    def test_small_random_sets(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            n = int(rng.integers(2, 6))
            ds = ZeroDataset(ordinates=np.sort(rng.uniform(5, 25, n)),
                             lam=float(rng.uniform(0.5, 2.0)))
            alpha = 0.3
            assert form_factor_positive(ds, 50.0, alpha) == pytest.approx(
                form_factor(ds, 50.0, alpha), abs=1e-6)

    def test_always_nonnegative(self):
        ds = ZeroDataset(ordinates=np.array([3.0, 3.0, 17.0]), lam=0.7)
        for alpha in (-2.3, 0.0, 5.1):
            assert form_factor_positive(ds, 20.0, alpha) >= 0.0


class TestMultiplicity:
    def test_duplicates_enter_with_multiplicity(self):
        # doubling an ordinate quadruples its diagonal block
        ds1 = ZeroDataset(ordinates=np.array([10.0]), lam=1.0)
        ds2 = ZeroDataset(ordinates=np.array([10.0, 10.0]), lam=1.0)
        assert form_factor(ds2, 100.0, 0.4) == pytest.approx(
            4.0 * form_factor(ds1, 100.0, 0.4), abs=1e-14)


class TestWindowedAverage:
    def test_single_ordinate_constant(self):
        ds = ZeroDataset(ordinates=np.array([10.0]), lam=1.0)
        avg = windowed_average(ds, 100.0, 1.0, 1.0, 1.0 / 32.0)
        assert avg == pytest.approx(form_factor(ds, 100.0, 0.0), abs=1e-12)

    def test_halving_step_converges(self):
        rng = np.random.default_rng(24)
        ds = ZeroDataset(ordinates=np.sort(rng.uniform(3, 60, 64)), lam=1.0)
        a1 = windowed_average(ds, 60.0, 1.0, 1.0, 1.0 / 32.0)
        a2 = windowed_average(ds, 60.0, 1.0, 1.0, 1.0 / 64.0)
        assert abs(a1 - a2) / abs(a2) < 1e-3

    def test_symmetric_decomposition_identity(self):
        # (1/l) int_b^{b+l} = (1/2B) int_{-B}^{B} + (b/l) ((1/2B) int - (1/2b) int),
        # B = b + l; exact on nested trapezoid grids by evenness
        rng = np.random.default_rng(25)
        ds = ZeroDataset(ordinates=np.sort(rng.uniform(3, 60, 40)), lam=1.0)
        T, b, ell, h = 60.0, 1.0, 1.0, 1.0 / 32.0
        beta = b + ell
        lhs = windowed_average(ds, T, b, ell, h)
        s_beta = symmetric_average(ds, T, beta, h)
        s_b = symmetric_average(ds, T, b, h)
        rhs = s_beta + (b / ell) * (s_beta - s_b)
        assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_grid_step_guard(self):
        ds = ZeroDataset(ordinates=np.array([10.0]), lam=1.0)
        with pytest.raises(ValueError):
            windowed_average(ds, 100.0, 1.0, 1.0, 0.5)


class TestPhiFunctional:
    def test_constant_transform(self):
        m = Measure(1.0, 1.0, 0.0, 0.5)
        grid = np.linspace(-0.5, 0.5, 2001)
        assert phi_functional(m, np.ones_like(grid), grid) == pytest.approx(
            1.25, abs=1e-12)

    def test_triangle_transform(self):
        m = Measure(1.0, 1.0, 0.0, 1.0)
        grid = np.linspace(-1.0, 1.0, 4001)
        tri = np.maximum(1.0 - np.abs(grid), 0.0)
        assert phi_functional(m, tri, grid) == pytest.approx(1.0 + 1.0 / 3.0,
                                                             abs=1e-6)

    def test_kernel_square_gives_diagonal(self):
        # transform of |K(0,.)|^2 is the autocorrelation of the transform-side
        # solution; feeding it back through the functional returns K(0,0)
        m = Measure(1.0, 1.0, 1.0, 0.5)
        sol = k0_transform_solution(m)
        L = m.delta / 2.0
        damp = np.exp(-sol.scale)
        t1 = sol.t1_scaled * damp
        t2 = sol.t2_scaled * damp

        def u0(t):
            t = np.asarray(t, dtype=complex)
            return (t1 * np.cosh(sol.roots.eta1 * t)
                    + t2 * np.cosh(sol.roots.eta2 * t) + sol.mu).real

        def g_hat(a):
            # autocorrelation int u0(t) u0(t - a) dt over the overlap
            a = abs(a)
            if a >= 2 * L:
                return 0.0
            x, wq = gauss_legendre(80, -L + a, L)
            return float(np.sum(wq * u0(x) * u0(x - a)))

        grid = np.linspace(-1.0, 1.0, 801)
        samples = np.array([g_hat(a) for a in grid])
        val = phi_functional(m, samples, grid)
        assert val == pytest.approx(kernel_k00(m), abs=1e-6)


class TestEp1Ratio:
    def test_matches_reciprocal_diagonal_c3zero(self):
        m = Measure(1.0, 1.0, 0.0, 0.5)
        assert ep1_ratio_check(m) == pytest.approx(1.0 / kernel_k00(m), abs=1e-5)

    def test_near_atom_limit(self):
        m = Measure(1.0, 1e-10, 0.0, 1.0)
        assert ep1_ratio_check(m) == pytest.approx(1.0, abs=1e-5)

    def test_matches_reciprocal_diagonal_c3pos(self):
        m = Measure(1.0, 1.0, 1.0, 0.5)
        assert ep1_ratio_check(m) == pytest.approx(1.0 / kernel_k00(m), abs=1e-5)

    def test_converges_with_truncation(self):
        m = Measure(1.0, 1.0, 1.0, 0.5)
        target = 1.0 / kernel_k00(m)
        errs = [abs(ep1_ratio_check(m, truncation=float(X)) - target)
                for X in (50.0, 1000.0, 4000.0)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[0] <= 1e-5


class TestFejer:
    def test_witness_value_is_beta(self):
        for beta in (0.5, 1.0, 2.5):
            assert fejer_check(beta) == beta

    def test_poisson_identity(self):
        lhs, rhs, diff = fejer_poisson_check(1.0)
        assert lhs == rhs == 1.0
        for beta in (0.5, 2.5):
            _, _, diff = fejer_poisson_check(beta)
            assert diff <= 1e-9

    def test_poisson_against_multiprecision(self):
        # sum sin^2(pi b n)/n^2 = (zeta(2) - Re Li_2(e^{2 pi i b}))/2, with the
        # dilogarithm evaluated by mpmath as an independent route
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 30
        for beta in (0.5, 2.5, 1.3):
            theta = mpmath.mpf(2) * mpmath.pi * mpmath.mpf(str(beta))
            series = (mpmath.zeta(2)
                      - mpmath.re(mpmath.polylog(2, mpmath.exp(1j * theta)))) / 2
            lhs_mp = beta + 2 * series / (mpmath.pi ** 2 * mpmath.mpf(str(beta)))
            lhs, _, _ = fejer_poisson_check(beta)
            assert lhs == pytest.approx(float(lhs_mp), abs=1e-12)

    def test_competitors_do_not_beat_witness(self):
        # shrunken and shift-averaged triangle transforms stay feasible and
        # never exceed the witness value at the origin
        rng = np.random.default_rng(26)
        for beta in (0.7, 1.0, 2.0):
            for _ in range(20):
                scale = float(rng.uniform(0.1, 1.0))
                shift = float(rng.uniform(0.0, 3.0))
                g0 = 0.5 * (fejer_witness(beta, shift) + fejer_witness(beta, -shift))
                assert scale * g0 <= beta + 1e-6
