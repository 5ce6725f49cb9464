import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from focklab.errors import GridMismatchError
from focklab.hermite import Convention, gauss_hermite, project


def test_single_node_rule():
    g = gauss_hermite(1, 1.0, 1)
    assert g.axis_nodes[0] == pytest.approx(0.0, abs=1e-15)
    assert g.axis_weights[0] == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_two_node_rule_matches_hermite_roots():
    # roots of the degree-2 Hermite polynomial 4x^2 - 2 are +-1/sqrt(2)
    g = gauss_hermite(2, 1.0, 1)
    assert np.sort(g.axis_nodes) == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)], rel=1e-14)
    assert g.axis_weights == pytest.approx([math.sqrt(math.pi) / 2] * 2, rel=1e-14)


def test_two_node_rule_integrates_x_squared_exactly():
    g = gauss_hermite(2, 1.0, 1)
    val = float(np.sum(g.weights * g.nodes[:, 0] ** 2))
    assert val == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)


@pytest.mark.parametrize("order,scale,dim", [(8, 1.0, 1), (40, 2.0, 1), (64, 0.5, 1),
                                             (16, 1.0, 2), (10, 2.0, 3)])
def test_weight_sum(order, scale, dim):
    g = gauss_hermite(order, scale, dim)
    target = (math.pi / scale) ** (dim / 2)
    assert float(g.weights.sum()) == pytest.approx(target, rel=1e-12)


@pytest.mark.parametrize("order", [4, 16, 64])
def test_polynomial_exactness(order):
    # exact for monomials up to degree 2*order - 1 against exp(-x^2)
    g = gauss_hermite(order, 1.0, 1)
    for deg in range(0, 2 * order, 4):
        got = float(np.sum(g.weights * g.nodes[:, 0] ** deg))
        want = math.gamma((deg + 1) / 2)  # int x^deg e^{-x^2}, deg even
        assert got == pytest.approx(want, rel=1e-12), deg


def test_scaled_rule_relation():
    u = gauss_hermite(12, 1.0, 1)
    s = gauss_hermite(12, 3.0, 1)
    assert s.axis_nodes == pytest.approx(u.axis_nodes / math.sqrt(3), rel=1e-14)
    assert s.axis_weights == pytest.approx(u.axis_weights / math.sqrt(3), rel=1e-14)


def test_order_cap_and_validation():
    with pytest.raises(ValueError):
        gauss_hermite(513, 1.0, 1)
    with pytest.raises(ValueError):
        gauss_hermite(0, 1.0, 1)
    with pytest.raises(ValueError):
        gauss_hermite(8, -1.0, 1)
    gauss_hermite(600, 1.0, 1, max_order=640)  # cap is configurable


def test_projection_rejects_mismatched_scale(grid1):
    with pytest.raises(GridMismatchError):
        project(lambda x: np.exp(-x * x), 8, grid1, Convention.BARGMANN_H)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 48), st.sampled_from([0.5, 1.0, 2.0]))
def test_weights_positive_and_nodes_symmetric(order, scale):
    g = gauss_hermite(order, scale, 1)
    assert np.all(g.weights > 0)
    srt = np.sort(g.axis_nodes)
    assert srt == pytest.approx(-srt[::-1], abs=1e-13)
