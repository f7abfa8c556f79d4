import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drkernel.group import (
    AlgebraElement,
    GroupPoint,
    connection_coeffs,
    frame_at,
    identity_point,
    inverse,
    lie_bracket_s,
    multiply,
)

from conftest import get_algebra


def _frame_element(alg, alpha):
    """AlgebraElement matching frame index alpha."""
    v = np.zeros(alg.k)
    y = np.zeros(alg.m)
    t = 0.0
    if alpha == 0:
        t = 1.0
    elif alpha <= alg.k:
        v[alpha - 1] = 1.0
    else:
        y[alpha - alg.k - 1] = 1.0
    return AlgebraElement(v, y, t)


def _as_frame_vector(alg, elem):
    return np.concatenate([[elem.t], elem.v, elem.y])


def test_point_validation():
    with pytest.raises(ValueError):
        GroupPoint([0.0], [0.0], -1.0)
    with pytest.raises(ValueError):
        GroupPoint([np.inf], [0.0], 1.0)


def test_identity_element(heis):
    e = identity_point(heis)
    x = GroupPoint([0.3, -1.2], [0.7], 2.5)
    prod = multiply(heis, e, x)
    np.testing.assert_array_equal(prod.V, x.V)
    np.testing.assert_array_equal(prod.Y, x.Y)
    assert prod.a == x.a


def test_multiply_heisenberg_example(heis):
    x = GroupPoint([1.0, 0.0], [0.0], 1.0)
    y = GroupPoint([0.0, 1.0], [0.0], 1.0)
    prod = multiply(heis, x, y)
    np.testing.assert_array_equal(prod.V, [1.0, 1.0])
    np.testing.assert_array_equal(prod.Y, [0.5])
    assert prod.a == 1.0


def test_inverse_formula(heis):
    x = GroupPoint([0.8, -0.4], [0.0], 4.0)
    xi = inverse(heis, x)
    np.testing.assert_allclose(xi.V, [-0.4, 0.2])
    np.testing.assert_array_equal(xi.Y, [0.0])
    assert xi.a == 0.25

    y = GroupPoint([0.0, 0.0], [1.4], 2.0)
    yi = inverse(heis, y)
    np.testing.assert_array_equal(yi.V, [0.0, 0.0])
    np.testing.assert_allclose(yi.Y, [-0.7])
    assert yi.a == 0.5


def test_inverse_round_trip(any_algebra):
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = GroupPoint(rng.uniform(-2, 2, any_algebra.k),
                       rng.uniform(-2, 2, any_algebra.m),
                       rng.uniform(0.2, 5.0))
        back = multiply(any_algebra, x, inverse(any_algebra, x))
        np.testing.assert_allclose(back.V, 0, atol=1e-12)
        np.testing.assert_allclose(back.Y, 0, atol=1e-12)
        assert abs(back.a - 1.0) < 1e-12


def test_associativity(any_algebra):
    rng = np.random.default_rng(6)
    for _ in range(20):
        pts = [GroupPoint(rng.uniform(-2, 2, any_algebra.k),
                          rng.uniform(-2, 2, any_algebra.m),
                          rng.uniform(0.2, 5.0)) for _ in range(3)]
        lhs = multiply(any_algebra, multiply(any_algebra, pts[0], pts[1]), pts[2])
        rhs = multiply(any_algebra, pts[0], multiply(any_algebra, pts[1], pts[2]))
        np.testing.assert_allclose(lhs.V, rhs.V, atol=1e-12)
        np.testing.assert_allclose(lhs.Y, rhs.Y, atol=1e-12)
        assert abs(lhs.a - rhs.a) < 1e-12


def test_lie_bracket_a_action(heis):
    # [A, V'] = V'/2
    A = AlgebraElement([0.0, 0.0], [0.0], 1.0)
    vp = AlgebraElement([2.0, -1.0], [0.0], 0.0)
    out = lie_bracket_s(heis, A, vp)
    np.testing.assert_array_equal(out.v, [1.0, -0.5])
    np.testing.assert_array_equal(out.y, [0.0])
    assert out.t == 0.0


def test_lie_bracket_antisymmetry(heis):
    xi = AlgebraElement([0.3, 0.4], [0.2], 1.3)
    out = lie_bracket_s(heis, xi, xi)
    np.testing.assert_array_equal(out.v, [0.0, 0.0])
    np.testing.assert_array_equal(out.y, [0.0])


def test_lie_bracket_reduces_to_nilpotent(heis):
    e1 = AlgebraElement([1.0, 0.0], [0.0], 0.0)
    e2 = AlgebraElement([0.0, 1.0], [0.0], 0.0)
    out = lie_bracket_s(heis, e1, e2)
    np.testing.assert_array_equal(out.v, [0.0, 0.0])
    np.testing.assert_array_equal(out.y, [1.0])


def test_frame_at_identity(heis):
    fr = frame_at(heis, identity_point(heis))
    n = heis.dim_s
    np.testing.assert_array_equal(fr[0], [0, 0, 0, 1])  # E_0 = a d/da, a = 1
    np.testing.assert_array_equal(fr[1], [1, 0, 0, 0])  # correction vanishes at V=0
    np.testing.assert_array_equal(fr[2], [0, 1, 0, 0])
    np.testing.assert_array_equal(fr[3], [0, 0, 1, 0])
    assert fr.shape == (n, n)


def test_frame_e0_coefficient(heis):
    x = GroupPoint([0.0, 0.0], [0.0], 3.7)
    fr = frame_at(heis, x)
    assert fr[0, -1] == 3.7


def test_frame_correction_term(heis):
    # at x = (e_1, 0, 1): E_2 = d/dV^2 + (1/2) d/dY^1 since A_21^1 = -1
    x = GroupPoint([1.0, 0.0], [0.0], 1.0)
    fr = frame_at(heis, x)
    np.testing.assert_allclose(fr[2], [0.0, 1.0, 0.5, 0.0])


def test_connection_zero_along_e0(any_algebra):
    n = any_algebra.dim_s
    for beta in range(n):
        np.testing.assert_array_equal(connection_coeffs(any_algebra, 0, beta),
                                      np.zeros(n))


def test_connection_z_with_e0(heis):
    # D_{E_{k+r}} E_0 = -E_{k+r}
    out = connection_coeffs(heis, 3, 0)
    np.testing.assert_array_equal(out, [0, 0, 0, -1])


def test_connection_diagonal_v(heis):
    # D_{E_i} E_i = E_0 / 2 (diagonal structure constants vanish)
    out = connection_coeffs(heis, 1, 1)
    np.testing.assert_array_equal(out, [0.5, 0, 0, 0])


def test_connection_index_error(heis):
    with pytest.raises(IndexError):
        connection_coeffs(heis, 5, 0)


def test_metric_compatibility(any_algebra):
    # <D_a E_b, E_c> + <E_b, D_a E_c> = 0, exactly for dyadic coefficients
    n = any_algebra.dim_s
    coeffs = np.array([[connection_coeffs(any_algebra, a, b) for b in range(n)]
                       for a in range(n)])
    for a in range(n):
        asym = coeffs[a] + coeffs[a].T
        np.testing.assert_array_equal(asym, np.zeros((n, n)))


def test_torsion_free(any_algebra):
    n = any_algebra.dim_s
    for a in range(n):
        for b in range(n):
            lhs = (connection_coeffs(any_algebra, a, b)
                   - connection_coeffs(any_algebra, b, a))
            br = lie_bracket_s(any_algebra, _frame_element(any_algebra, a),
                               _frame_element(any_algebra, b))
            np.testing.assert_allclose(lhs, _as_frame_vector(any_algebra, br),
                                       atol=1e-14)


def test_point_json_round_trip(heis):
    x = GroupPoint([0.1, -0.2], [0.9], 1.7)
    data = x.to_json_dict()
    assert data == {"V": [0.1, -0.2], "Y": [0.9], "a": 1.7}
    back = GroupPoint.from_json_dict(data)
    np.testing.assert_array_equal(back.V, x.V)
    assert back.a == x.a


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_associativity_property(data):
    alg = get_algebra(2, 1)
    elems = st.floats(min_value=-2, max_value=2, allow_nan=False)
    pos = st.floats(min_value=0.2, max_value=5.0, allow_nan=False)

    def draw_point():
        V = np.array(data.draw(st.lists(elems, min_size=alg.k, max_size=alg.k)))
        Y = np.array(data.draw(st.lists(elems, min_size=alg.m, max_size=alg.m)))
        return GroupPoint(V, Y, data.draw(pos))

    x, y, z = draw_point(), draw_point(), draw_point()
    lhs = multiply(alg, multiply(alg, x, y), z)
    rhs = multiply(alg, x, multiply(alg, y, z))
    np.testing.assert_allclose(lhs.V, rhs.V, atol=1e-11)
    np.testing.assert_allclose(lhs.Y, rhs.Y, atol=1e-11)
    assert abs(lhs.a - rhs.a) < 1e-11
