"""Exact finite-N kernel: norms, series evaluation, density, orthonormality."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import mp_kernel_alpha2, rel_err_mp
from nkernel.errors import DomainError
from nkernel.kernel_exact import (
    KernelParams,
    density_exact,
    kernel,
    kernel_tilde,
    monomial_log_norm,
    orthonormality_defect,
)


class TestKernelParams:
    @pytest.mark.parametrize(
        "alpha,n",
        [(0.0, 5), (-1.0, 5), (math.nan, 5), (math.inf, 5), (2.0, 0), (2.0, -3)],
    )
    def test_rejects_bad_parameters(self, alpha, n):
        with pytest.raises(DomainError):
            KernelParams(alpha, n)

    def test_rejects_non_integer_n(self):
        with pytest.raises(DomainError):
            KernelParams(2.0, 2.5)
        with pytest.raises(DomainError):
            KernelParams(2.0, True)


class TestMonomialLogNorm:
    def test_alpha2_single_point(self):
        # c_1 = sqrt(N/pi) at alpha=2; N=1 gives ln sqrt(1/pi)
        assert monomial_log_norm(1, KernelParams(2.0, 1)) == pytest.approx(
            -0.5 * math.log(math.pi), rel=1e-13
        )

    def test_alpha2_n100(self):
        assert monomial_log_norm(1, KernelParams(2.0, 100)) == pytest.approx(
            math.log(10.0 / math.sqrt(math.pi)), rel=1e-13
        )

    def test_general_alpha_reference(self):
        # ln c_j = (1/2)(ln(alpha/2pi) + (2j/alpha) ln N - ln Gamma(2j/alpha)),
        # frozen from a 50-digit evaluation
        got = monomial_log_norm(5, KernelParams(3.0, 50))
        assert got == pytest.approx(5.639511807960304575, rel=1e-13)

    def test_agrees_with_quadrature(self):
        # 2 pi c_j^2 int r^{2j-1} e^{-N r^alpha} dr = 1
        for alpha, n, j in ((2.0, 20, 4), (1.5, 30, 7), (4.0, 10, 1)):
            ln_c = monomial_log_norm(j, KernelParams(alpha, n))
            val, _ = quad(
                lambda r: r ** (2 * j - 1) * math.exp(2 * ln_c - n * r**alpha),
                0.0,
                4.0 * (2.0 / alpha) ** (1.0 / alpha),
                limit=200,
            )
            assert 2.0 * math.pi * val == pytest.approx(1.0, abs=1e-10)

    def test_rejects_j_below_one(self):
        with pytest.raises(DomainError):
            monomial_log_norm(0, KernelParams(2.0, 10))
        with pytest.raises(DomainError):
            monomial_log_norm(-1, KernelParams(2.0, 10))

    def test_accepts_j_beyond_n(self):
        # the index sweep of the orthonormality check evaluates j > n, so
        # the norm accepts any j >= 1 rather than capping at n
        assert math.isfinite(monomial_log_norm(15, KernelParams(2.0, 10)))


class TestKernelTilde:
    def test_origin_keeps_only_first_term(self):
        for alpha, n in ((2.0, 7), (3.0, 12), (1.0, 4)):
            ref = (alpha / (2.0 * math.pi)) * n ** (2.0 / alpha) / math.gamma(2.0 / alpha)
            got = kernel_tilde(0j, 0.3 + 0.1j, KernelParams(alpha, n))
            assert got.to_complex() == pytest.approx(ref, rel=1e-13)

    def test_single_point_alpha2(self):
        got = kernel_tilde(1.0 + 0j, 1.0 + 0j, KernelParams(2.0, 1))
        assert got.to_complex() == pytest.approx(1.0 / math.pi, rel=1e-14)

    def test_reference_value_alpha3(self):
        # frozen from a variable-precision evaluation of the 12-term series
        got = kernel_tilde(0.7 + 0.2j, 0.4 - 0.1j, KernelParams(3.0, 12)).to_complex()
        ref = complex(-1.5749860949328421761, 18.865162268922362352)
        assert abs(got - ref) <= 1e-13 * abs(ref)

    def test_rejects_non_finite_points(self):
        with pytest.raises(DomainError):
            kernel_tilde(complex(math.nan, 0), 0j, KernelParams(2.0, 3))
        with pytest.raises(DomainError):
            kernel_tilde(0j, complex(math.inf, 0), KernelParams(2.0, 3))


class TestKernel:
    def test_origin_diagonal_alpha2(self):
        for n in (1, 10, 250):
            got = kernel(0j, 0j, KernelParams(2.0, n))
            assert got.to_complex() == pytest.approx(n / math.pi, rel=1e-13)

    def test_reference_value_alpha3(self):
        got = kernel(0.7 + 0.2j, 0.4 - 0.1j, KernelParams(3.0, 12)).to_complex()
        ref = complex(-0.10214261305887896169, 1.2234628458797060387)
        assert abs(got - ref) <= 1e-13 * abs(ref)

    def test_reference_value_alpha1(self):
        got = kernel(0.5 + 0j, 0.3 + 0j, KernelParams(1.0, 8)).to_complex()
        assert got.real == pytest.approx(1.4819011744618320923, rel=1e-13)
        assert got.imag == 0.0

    def test_alpha2_closed_form_well_conditioned(self):
        # positive-real z wbar: every series term is positive, so the naive
        # double closed form is itself accurate and 1e-12 is reachable
        n = 50
        z = w = 0.5 + 0j
        s = 0.0
        term = 1.0
        x = n * (z * w.conjugate()).real
        for k in range(n):
            s += term
            term *= x / (k + 1)
        ref = (n / math.pi) * s * math.exp(-n * 0.5 * (abs(z) ** 2 + abs(w) ** 2))
        got = kernel(z, w, KernelParams(2.0, n)).to_complex()
        assert abs(got - ref) <= 1e-12 * abs(ref)

    def test_alpha2_oracle_across_scales(self):
        # variable-precision oracle at mixed magnitudes and phases, at pairs
        # whose cancellation exponent stays small enough for doubles
        for z, w, n in (
            (0.3 + 0.1j, 0.32 + 0.08j, 100),
            (1.2 + 0.0j, 1.1 + 0.1j, 40),
            (0.05 - 0.02j, 0.04 + 0.01j, 200),
        ):
            ref = mp_kernel_alpha2(z, w, n)
            got = kernel(z, w, KernelParams(2.0, n)).to_complex()
            cond = n * (abs(z * w.conjugate()) - (z * w.conjugate()).real)
            assert cond < 25.0  # config sanity: stays measurable
            assert rel_err_mp(got, ref) <= 1e-12 * math.exp(cond) + 1e-13

    def test_diagonal_real_positive(self):
        for alpha in (1.0, 1.5, 2.0, 3.0):
            for z in (0.2 + 0j, 0.5 + 0.4j, 1.1 - 0.3j):
                got = kernel(z, z, KernelParams(alpha, 25))
                assert got.significand.imag == 0.0
                assert got.significand.real > 0.0

    def test_hermitian_bit_exact(self):
        p = KernelParams(2.5, 30)
        for z, w in ((0.4 + 0.2j, 0.1 - 0.5j), (0.9 + 0j, 0.3 + 0.3j)):
            a = kernel(z, w, p)
            b = kernel(w, z, p)
            assert a.log_scale == b.log_scale
            assert a.significand == b.significand.conjugate()

    def test_positive_semidefinite_minors(self):
        # leading principal minors of [K(z_i, z_j)] stay nonnegative up to
        # float noise for clustered points (measured worst 7.4e-3 here)
        rng = np.random.default_rng(11)
        pts = [0.4 + 0.15 * complex(*rng.standard_normal(2)) for _ in range(6)]
        p = KernelParams(2.0, 50)
        scs = [[kernel(zi, zj, p) for zj in pts] for zi in pts]
        common = max(scs[i][i].abs_log for i in range(6))
        m = np.array(
            [
                [
                    0j
                    if scs[i][j].is_zero
                    else cmath.exp(complex(scs[i][j].abs_log - common, scs[i][j].phase))
                    for j in range(6)
                ]
                for i in range(6)
            ]
        )
        for k in range(1, 7):
            minor = np.linalg.det(m[:k, :k]).real
            scale = float(np.prod(np.diag(m).real[:k]))
            assert minor >= -1e-10 * scale

    def test_reproducing_on_monomials(self):
        # projecting w^m through the kernel must return z^m for m < n:
        # angular integration leaves c_{m+1}^2 2pi I_{m+1} z^m = z^m
        for alpha, n, m in ((2.0, 20, 0), (2.0, 20, 3), (2.0, 20, 19), (3.0, 20, 3)):
            ln_c = monomial_log_norm(m + 1, KernelParams(alpha, n))
            val, _ = quad(
                lambda r: r ** (2 * m + 1) * math.exp(2 * ln_c - n * r**alpha),
                0.0,
                4.0 * (2.0 / alpha) ** (1.0 / alpha),
                limit=200,
            )
            a = 2.0 * math.pi * val
            for z in (0.3 + 0j, 0.7j):
                zm = z**m
                assert abs(a * zm - zm) <= 1e-8 * abs(zm)


class TestDensityExact:
    def test_bulk_alpha2(self):
        got = density_exact(0.5 + 0j, KernelParams(2.0, 2000))
        lim = 1.0 / math.pi
        assert abs(got - lim) <= 0.02 * lim

    def test_bulk_alpha4(self):
        got = density_exact(0.5 + 0j, KernelParams(4.0, 2000))
        lim = (16.0 / (4.0 * math.pi)) * 0.5**2
        assert abs(got - lim) <= 0.03 * lim

    def test_outside_support(self):
        assert density_exact(2.0 + 0j, KernelParams(2.0, 500)) < 1e-10

    def test_positive_everywhere(self):
        p = KernelParams(1.5, 60)
        for z in (0j, 0.3 + 0.2j, 1.0 + 0j):
            assert density_exact(z, p) > 0.0


class TestOrthonormalityDefect:
    def test_off_diagonal_exactly_zero(self):
        p = KernelParams(2.0, 10)
        assert orthonormality_defect(1, 2, p) == 0.0
        assert orthonormality_defect(7, 3, p) == 0.0

    def test_diagonal_alpha2(self):
        # I_1 = int r e^{-N r^2} dr = 1/(2N) up to the truncated tail
        assert orthonormality_defect(1, 1, KernelParams(2.0, 10)) < 1e-10

    def test_diagonal_fractional_alpha(self):
        assert orthonormality_defect(7, 7, KernelParams(1.5, 30)) < 1e-8

    def test_diagonal_closed_form_cross_check(self):
        # same integral by hand: defect = |2 pi c_1^2 (1 - e^{-N r_cut^2})/(2N) - 1|
        n = 10
        ln_c = monomial_log_norm(1, KernelParams(2.0, n))
        exact = 2.0 * math.pi * math.exp(2.0 * ln_c) / (2.0 * n)
        assert abs(exact - 1.0) < 1e-12  # the tail e^{-N r_cut^2} is below eps

    def test_rejects_bad_indices(self):
        p = KernelParams(2.0, 10)
        with pytest.raises(DomainError):
            orthonormality_defect(0, 1, p)
        with pytest.raises(DomainError):
            orthonormality_defect(1, -2, p)
