import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from focklab.errors import EvaluationRangeError
from focklab.hermite import (
    Convention,
    SpectralVector,
    basis_table,
    convert_convention,
    eval_hermite,
    gauss_hermite,
    graded_indices,
    hermite_axis_table,
    index_count,
    ladder,
    ladder_factor_squared,
    project,
    random_vector,
    synthesize,
)

mp.mp.dps = 40


def _mp_paper_h(k, x):
    """Normalized oscillator eigenfunction by the same recurrence in 40-digit
    arithmetic; the independent deep oracle."""
    x = mp.mpf(x) if not isinstance(x, complex) else mp.mpc(x)
    p0 = mp.pi ** mp.mpf("-0.25") * mp.e ** (-x * x / 2)
    if k == 0:
        return p0
    p1 = mp.sqrt(2) * x * p0
    for j in range(1, k):
        p0, p1 = p1, mp.sqrt(mp.mpf(2) / (j + 1)) * x * p1 - mp.sqrt(mp.mpf(j) / (j + 1)) * p0
    return p1


class TestMultiIndex:
    def test_enumeration_graded_and_complete(self):
        idx = graded_indices(2, 4)
        assert len(idx) == index_count(2, 4) == math.comb(6, 2)
        orders = [i.order for i in idx]
        assert orders == sorted(orders)
        assert len(set(i.components for i in idx)) == len(idx)

    def test_factorials(self):
        from focklab.hermite import MultiIndex

        a = MultiIndex((3, 2))
        assert a.order == 5
        assert a.factorial == 12
        assert a.log_factorial == pytest.approx(math.log(12))

    def test_rejects_negative(self):
        from focklab.hermite import MultiIndex

        with pytest.raises(ValueError):
            MultiIndex((1, -1))


class TestEvaluation:
    def test_paper_h_closed_forms_at_zero(self):
        assert eval_hermite(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-15)
        assert eval_hermite(1, 0.0) == 0.0
        # closed form -1/(sqrt(2) pi^{1/4}), cross-checked against the recurrence
        assert eval_hermite(2, 0.0) == pytest.approx(-1 / (math.sqrt(2) * math.pi ** 0.25),
                                                     rel=1e-14)

    def test_bargmann_h_ground_state(self):
        xs = np.linspace(-2, 2, 9)
        got = hermite_axis_table(0, xs, Convention.BARGMANN_H)[0]
        assert got == pytest.approx((2 / math.pi) ** 0.25 * np.exp(-xs ** 2), rel=1e-14)

    def test_rescaling_relation_between_conventions(self):
        # hh_k(x) = 2^{1/4} h_k(sqrt(2) x)
        xs = np.linspace(-3, 3, 11)
        for k in (0, 1, 5, 12):
            lhs = hermite_axis_table(k, xs, Convention.BARGMANN_H)[k]
            rhs = 2 ** 0.25 * hermite_axis_table(k, math.sqrt(2) * xs, Convention.PAPER_H)[k]
            assert lhs == pytest.approx(rhs, rel=1e-13)

    @pytest.mark.parametrize("k", [10, 50, 120, 200])
    @pytest.mark.parametrize("x", [0.3, 4.0, 11.5, 19.5])
    def test_deep_recurrence_matches_mpmath(self, k, x):
        want = float(_mp_paper_h(k, x))
        got = eval_hermite(k, x)
        if want != 0:
            assert abs(got - want) / abs(want) <= 1e-12

    def test_complex_argument_against_mpmath(self):
        z = 0.7 - 0.4j
        want = complex(_mp_paper_h(6, z))
        assert abs(eval_hermite(6, z) - want) <= 1e-13 * abs(want)

    def test_overflow_guard(self):
        with pytest.raises(EvaluationRangeError):
            eval_hermite(2, 60j, Convention.PAPER_H)
        with pytest.raises(EvaluationRangeError):
            eval_hermite(2, 40j, Convention.BARGMANN_H)
        eval_hermite(2, 30j, Convention.PAPER_H)  # inside the envelope


class TestProjection:
    def test_unit_vector_recovery(self, grid2):
        u = SpectralVector.unit(1, 8, Convention.BARGMANN_H, 3)
        v = project(lambda x: synthesize(u, x), 8, grid2, Convention.BARGMANN_H)
        off = v.coeffs.copy()
        off[3] -= 1
        assert np.abs(off).max() <= 1e-10

    def test_linearity(self, grid2):
        f = lambda x: (hermite_axis_table(5, x, Convention.BARGMANN_H)[0]
                       + 2 * hermite_axis_table(5, x, Convention.BARGMANN_H)[5])
        v = project(f, 8, grid2, Convention.BARGMANN_H)
        assert v.coeffs[0] == pytest.approx(1, abs=1e-12)
        assert v.coeffs[5] == pytest.approx(2, abs=1e-12)

    def test_x_times_ground_state_paper_h(self, grid1):
        # <x h_0, h_1> = 1/sqrt(2); oracle: direct Gaussian integral below
        v = project(lambda x: x * hermite_axis_table(0, x, Convention.PAPER_H)[0],
                    6, grid1, Convention.PAPER_H)
        oracle = quad(lambda x: x * math.pi ** -0.25 * math.exp(-x * x / 2)
                      * math.sqrt(2) * x * math.pi ** -0.25 * math.exp(-x * x / 2),
                      -12, 12)[0]
        assert oracle == pytest.approx(1 / math.sqrt(2), rel=1e-10)
        assert v.coeffs[1] == pytest.approx(oracle, rel=1e-12)

    def test_x_times_ground_state_bargmann_h(self, grid2):
        # the rescaled system halves the first-excited overlap: <x hh_0, hh_1> = 1/2
        v = project(lambda x: x * hermite_axis_table(0, x, Convention.BARGMANN_H)[0],
                    6, grid2, Convention.BARGMANN_H)
        oracle = quad(lambda x: 2 * math.sqrt(2 / math.pi) * 2 * x * x * math.exp(-2 * x * x),
                      -12, 12)[0] / 2
        assert v.coeffs[1] == pytest.approx(oracle, rel=1e-12)
        assert v.coeffs[1] == pytest.approx(0.5, rel=1e-12)

    def test_roundtrip_random(self, grid2):
        v = random_vector(1, 20, Convention.BARGMANN_H, 77)
        w = project(lambda x: synthesize(v, x), 20, grid2, Convention.BARGMANN_H)
        assert np.abs(w.coeffs - v.coeffs).max() <= 1e-10

    def test_complex_synthesis_extended_precision(self):
        v = random_vector(1, 20, Convention.BARGMANN_H, 3)
        z = 0.5 + 0.3j
        # independent 40-digit sum
        x = mp.mpc(z)
        p = [(mp.mpf(2) / mp.pi) ** mp.mpf("0.25") * mp.e ** (-x * x)]
        p.append(2 * x * p[0])
        for j in range(1, 20):
            p.append(2 / mp.sqrt(j + 1) * x * p[-1] - mp.sqrt(mp.mpf(j) / (j + 1)) * p[-2])
        want = complex(mp.fsum((complex(c) * pk for c, pk in zip(v.coeffs, p)),
                               absolute=False))
        assert abs(synthesize(v, z) - want) <= 1e-10


class TestLadder:
    def test_annihilates_ground_state(self):
        v = SpectralVector.unit(1, 6, Convention.PAPER_H, 0)
        assert ladder(v, "lower").norm() == 0.0

    def test_oscillator_composition_is_diagonal(self):
        # (1/2)(H_j H_-j + H_-j H_j) = 2k+1: exact on the integer factor level
        for k in range(0, 50):
            assert Fraction(ladder_factor_squared(k, "raise")
                            + ladder_factor_squared(k, "lower"), 2) == Fraction(2 * k + 1)
        # and tight along the float path
        for k in (0, 3, 11):
            v = SpectralVector.unit(1, 16, Convention.PAPER_H, k)
            comp = 0.5 * (ladder(ladder(v, "raise"), "lower").coeffs
                          + ladder(ladder(v, "lower"), "raise").coeffs)
            assert comp[k] == pytest.approx(2 * k + 1, rel=4e-16)

    def test_raise_factor_with_quadrature_oracle(self, grid1):
        # <H_{-1} h_3, h_4> = sqrt(8) via (-d/dx + x) h_3 against h_4
        h = 1e-4
        xs = grid1.nodes[:, 0]
        t = hermite_axis_table(4, np.concatenate([xs - h, xs + h, xs]), Convention.PAPER_H)
        n = len(xs)
        deriv = (t[3][n:2 * n] - t[3][:n]) / (2 * h)
        val = float(np.sum(grid1.loaded_weights(1.0)
                           * (-deriv + xs * t[3][2 * n:]) * t[4][2 * n:]))
        assert val == pytest.approx(math.sqrt(8), abs=1e-7)
        v = SpectralVector.unit(1, 10, Convention.PAPER_H, 3)
        assert ladder(v, "raise").coeffs[4] == pytest.approx(math.sqrt(8), rel=1e-15)

    def test_truncation_loss_recorded(self):
        v = SpectralVector.unit(1, 5, Convention.PAPER_H, 5)
        r = ladder(v, "raise")
        assert r.norm() == 0.0
        assert r.truncation_loss == pytest.approx(math.sqrt(12), rel=1e-15)
        assert ladder(v, "lower").truncation_loss == 0.0

    def test_multi_axis(self):
        v = SpectralVector.unit(2, 4, Convention.PAPER_H, (1, 2))
        w = ladder(v, "lower", axis=2)
        assert w[(1, 1)] == pytest.approx(math.sqrt(4))
        u = ladder(v, "raise", axis=1)
        assert u[(2, 2)] == pytest.approx(math.sqrt(2 * 1 + 2))


class TestConventions:
    def test_roundtrip_identity(self):
        v = random_vector(1, 10, Convention.PAPER_H, 5)
        w = convert_convention(convert_convention(v, Convention.BARGMANN_H),
                               Convention.PAPER_H)
        assert np.array_equal(w.coeffs, v.coeffs)
        assert w.norm() == v.norm()

    def test_pointwise_values_change(self):
        u = SpectralVector.unit(1, 4, Convention.PAPER_H, 0)
        assert synthesize(u, 0.0) == pytest.approx(math.pi ** -0.25)
        assert synthesize(convert_convention(u, Convention.BARGMANN_H), 0.0) \
            == pytest.approx((2 / math.pi) ** 0.25)

    def test_fock_retag_rejected(self):
        v = random_vector(1, 4, Convention.PAPER_H, 1)
        with pytest.raises(ValueError):
            convert_convention(v, Convention.FOCK)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(4, 24))
def test_parseval_roundtrip_property(seed, N):
    v = random_vector(1, N, Convention.BARGMANN_H, seed)
    grid = gauss_hermite(N + 12, 2.0, 1)
    w = project(lambda x: synthesize(v, x), N, grid, Convention.BARGMANN_H)
    assert np.abs(w.coeffs - v.coeffs).max() <= 1e-9
    assert v.norm() == pytest.approx(float(np.linalg.norm(v.coeffs)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 12), st.integers(1, 2))
def test_ladder_adjointness_property(seed, k, axis_count):
    # <raise u, v> == <u, lower v> on coefficients away from the cutoff
    n = axis_count
    N = 14
    u = random_vector(n, N, Convention.PAPER_H, seed, band=N - 2)
    v = random_vector(n, N, Convention.PAPER_H, seed + 1, band=N - 2)
    lhs = np.vdot(v.coeffs, ladder(u, "raise").coeffs)
    rhs = np.vdot(ladder(v, "lower").coeffs, u.coeffs)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_basis_table_grid_consistency(grid2):
    # weightless table times the Gaussian equals the weighted table
    xs = grid2.nodes[:, 0]
    full = basis_table(1, 6, xs, Convention.BARGMANN_H)
    bare = basis_table(1, 6, xs, Convention.BARGMANN_H, weightless=True)
    assert np.abs(full - bare * np.exp(-xs ** 2)).max() <= 1e-14
