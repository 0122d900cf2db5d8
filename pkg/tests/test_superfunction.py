import numpy as np
import pytest
from hypothesis import given, strategies as st

from hcft import oracle
from hcft.errors import DimensionError
from hcft.scalar import GaussPoly
from hcft.superalgebra import PBWElement, parse_element
from hcft.superfunction import (
    SuperFunction,
    evaluate,
    involution,
    left_action,
    product,
    schwartz_seminorm,
    translate,
)
from conftest import monomials, superfunctions

X = np.linspace(-5, 5, 101)
f = GaussPoly.gaussian(1.0, 0.2)
g = GaussPoly.gaussian(0.7, -0.4, 2.0)


def test_construction_and_keys():
    F = SuperFunction(3, {"{}": f, "{1,3}": g, (2,): f})
    assert set(F.comps) == {0, 0b101, 0b010}
    assert F.parity is None
    assert SuperFunction(3, {"{1,3}": g}).parity == 0
    assert SuperFunction(3, {"{2}": g}).parity == 1
    with pytest.raises(ValueError):
        SuperFunction(2, {"{3}": f})


def test_evaluate_examples():
    F = SuperFunction(2, {0: f, 0b01: g})
    np.testing.assert_allclose(evaluate(F, PBWElement.one(2))(X), f(X))
    # z acts as +d/dx in this library's convention
    np.testing.assert_allclose(evaluate(F, parse_element("z^1 a{1}", 2))(X), g.derivative()(X))
    np.testing.assert_allclose(evaluate(F, parse_element("a{1} a{1}", 2))(X), evaluate(F, PBWElement.z(2))(X))


def test_product_examples():
    fg = (f * g)(X)
    P = product(SuperFunction(2, {0: f}), SuperFunction(2, {0b10: g}))
    np.testing.assert_allclose(P.component(0b10)(X), fg)
    assert product(SuperFunction(2, {0b01: f}), SuperFunction(2, {0b01: g})).is_zero()
    # xi^2 xi^1: the coordinate sign of the adopted convention is +1
    P = product(SuperFunction(2, {0b10: f}), SuperFunction(2, {0b01: g}))
    np.testing.assert_allclose(P.component(0b11)(X), fg)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_product_matches_coproduct_oracle(n, rng):
    from hcft.verify import random_superfunction

    F, G = random_superfunction(n, rng), random_superfunction(n, rng)
    assert product(F, G).max_abs_diff(oracle.delta_product(F, G)) < 1e-12


@given(superfunctions(3), superfunctions(3))
def test_product_supercommutative(F, G):
    for pf in (0, 1):
        for pg in (0, 1):
            A, B = F.parity_part(pf), G.parity_part(pg)
            sign = -1 if pf and pg else 1
            assert product(A, B).max_abs_diff(product(B, A).scale(sign)) < 1e-10


@given(superfunctions(2), superfunctions(2), superfunctions(2))
def test_product_associative(F, G, H):
    assert product(product(F, G), H).max_abs_diff(product(F, product(G, H))) < 1e-9


def test_left_action_examples():
    F = SuperFunction(2, {0: f, 0b11: g})
    T = left_action(PBWElement.one(2), 0.7, F)
    np.testing.assert_allclose(T.component(0b11)(X), g(X - 0.7))
    assert translate(F, 0.7).max_abs_diff(T) == 0
    # S(z) = -z and z acts as +d/dx, so L_z differentiates with a minus sign
    Z = left_action(PBWElement.z(2), 0.0, F)
    np.testing.assert_allclose(Z.component(0)(X), -f.derivative()(X))


@given(st.data())
def test_left_action_is_representation(data):
    n = data.draw(st.integers(1, 4))
    F = data.draw(superfunctions(n))
    u, v = data.draw(monomials(n)), data.draw(monomials(n))
    for p in (0, 1):
        Fp = F.parity_part(p)
        lhs = left_action(u, 0.0, left_action(v, 0.0, Fp))
        rhs = left_action(u * v, 0.0, Fp)
        assert lhs.max_abs_diff(rhs) < 1e-8 * max(1.0, rhs.max_abs_diff(SuperFunction.zero(n)))


def test_involution_is_reflection_with_signs():
    F = SuperFunction(2, {0: f, 0b01: g})
    iF = involution(F)
    np.testing.assert_allclose(iF.component(0)(X), f(-X))
    assert involution(iF).max_abs_diff(F) < 1e-14


def test_schwartz_seminorm_examples():
    F = SuperFunction(2, {0: GaussPoly.gaussian(1.0)})
    assert abs(schwartz_seminorm(F, 0, PBWElement.one(2)) - 1.0) < 1e-12
    assert abs(schwartz_seminorm(F, 0, PBWElement.z(2)) - np.sqrt(2 / np.e)) < 1e-10
    for j in range(5):
        for k in range(4):
            assert np.isfinite(schwartz_seminorm(F, j, PBWElement.from_mask(2, 0, k)))
    grid = F.to_grid()
    flat = SuperFunction(2, {0: grid.component(0).__class__(0.0, 0.1, np.ones(20))})
    assert schwartz_seminorm(flat, 0, PBWElement.one(2)) == np.inf


def test_arithmetic_and_dimension_checks():
    F = SuperFunction(2, {0: f})
    G = SuperFunction(2, {0b01: g})
    assert (F + G - G).max_abs_diff(F) < 1e-15
    with pytest.raises(DimensionError):
        F + SuperFunction(3, {0: f})
    with pytest.raises(DimensionError):
        product(F, SuperFunction(3, {0: f}))
