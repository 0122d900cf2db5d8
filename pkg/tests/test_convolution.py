import numpy as np
import pytest
from hypothesis import given, strategies as st

from hcft import oracle
from hcft.convolution import (
    banach_check,
    convolution_table,
    convolution_theorem_error,
    convolve,
    convolve_dist,
    convolve_via_pairing,
    fourier_of_product,
    mollify,
    sobolev_norm,
)
from hcft.errors import DimensionError, OrderError
from hcft.fourier import transform
from hcft.integral import CompactDistribution
from hcft.scalar import GaussPoly
from hcft.superalgebra import PBWElement, full_mask
from hcft.superfunction import SuperFunction, evaluate, involution, left_action, product
from hcft.verify import random_superfunction
from conftest import monomials, superfunctions

X = np.linspace(-5, 5, 101)
Z = np.linspace(-2.5, 2.5, 6)
f = GaussPoly.gaussian(1.0, 0.3)
g = GaussPoly.gaussian(0.6, -0.5, 1.5)


def test_table_shape():
    for n in range(1, 5):
        rows = convolution_table(n)
        assert len(rows) == 4 ** n
        for i, j, k, sign, order in rows:
            assert k == full_mask(n) ^ i ^ j and sign in (1, -1)
            assert order == (~i & ~j & full_mask(n)).bit_count()


def test_scalar_examples():
    # I = J = {} lands on (I xor J)^c = {1} with one derivative
    C = convolve(SuperFunction(1, {0: f}), SuperFunction(1, {0: g}))
    assert set(C.comps) == {1}
    np.testing.assert_allclose(np.abs(C.component(1)(X)), np.abs(f.convolve(g).derivative()(X)), atol=1e-13)
    for n in (1, 2, 3):
        C = convolve(SuperFunction(n, {full_mask(n): f}), SuperFunction(n, {0: g}))
        assert set(C.comps) == {0}
        np.testing.assert_allclose(np.abs(C.component(0)(X)), np.abs(f.convolve(g)(X)), atol=1e-13)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_path_agreement(n, rng):
    F, G = random_superfunction(n, rng), random_superfunction(n, rng)
    C = convolve(F, G)
    for _ in range(15):
        u = PBWElement.from_mask(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 3)))
        x = float(rng.uniform(-2, 2))
        fast = evaluate(C, u)(np.array([x]))[0]
        assert abs(fast - convolve_via_pairing(F, G, u, x)) < 1e-8


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(superfunctions(n), superfunctions(n))))
def test_convolution_theorem(FG):
    F, G = FG
    assert convolution_theorem_error(F, G, Z) < 1e-7


def test_convolution_theorem_grid(rng):
    F, G = random_superfunction(3, rng).to_grid(), random_superfunction(3, rng).to_grid()
    assert convolution_theorem_error(F, G, Z) < 1e-5


@given(st.data())
def test_left_action_commutes_with_convolution(data):
    n = data.draw(st.integers(1, 3))
    F, G = data.draw(superfunctions(n)), data.draw(superfunctions(n))
    u = data.draw(monomials(n, 1))
    y = data.draw(st.floats(-1.5, 1.5))
    for pf in (0, 1):
        Fp = F.parity_part(pf)
        lhs = left_action(u, y, convolve(Fp, G))
        rhs = convolve(left_action(u, y, Fp), G)
        assert lhs.max_abs_diff(rhs) < 1e-8


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(superfunctions(n), superfunctions(n))))
def test_flip_law(FG):
    F, G = FG
    n = F.n
    for pf in (0, 1):
        for pg in (0, 1):
            A, B = F.parity_part(pf), G.parity_part(pg)
            sign = (-1) ** (pf * pg) * (-1) ** (n * (pf + pg))
            lhs = convolve(A, B)
            rhs = involution(convolve(involution(B), involution(A))).scale(sign)
            assert lhs.max_abs_diff(rhs) < 1e-8


@pytest.mark.parametrize("n", range(1, 5))
def test_delta_identity(n, rng):
    F = random_superfunction(n, rng)
    assert convolve_dist(CompactDistribution.delta_identity(n), F).max_abs_diff(F) < 1e-10


def test_shifted_delta_translates():
    n = 2
    F = SuperFunction(n, {0: f, 0b01: g, 0b11: f})
    U = CompactDistribution(n, {0: [(0, 0.8, 1.0)]})
    out = convolve_dist(U, F)
    for m in F.comps:
        np.testing.assert_allclose(out.component(m)(X), F.component(m)(X - 0.8), atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_distribution_convolution_matches_mollified_limit(n, rng):
    F = random_superfunction(n, rng)
    U = CompactDistribution(n, {0: [(1, 0.2, 1.0)], 1: [(0, -0.4, 0.5)], full_mask(n): [(2, 0.1, -1.0)]})
    exact = convolve_dist(U, F)
    e1 = oracle.mollified_convolution(U, F, 0.004).max_abs_diff(exact)
    e2 = oracle.mollified_convolution(U, F, 0.002).max_abs_diff(exact)
    assert np.log2(e1 / e2) > 1.5
    assert e2 < 1e-3 * max(1.0, exact.max_abs_diff(SuperFunction.zero(n)))


def test_distribution_convolution_order_limit():
    U = CompactDistribution(1, {0: [(9, 0.0, 1.0)]})
    F = SuperFunction(1, {0: f}).to_grid()
    with pytest.raises(OrderError):
        convolve_dist(U, F)


def test_mollify_is_smooth_approximant():
    U = CompactDistribution.delta_identity(2)
    H = mollify(U, 0.1)
    assert set(H.comps) == {0b11}
    assert abs(H.component(0b11).integral() - 1) < 1e-12


@pytest.mark.parametrize("seed", range(3))
def test_product_duality(seed):
    rng = np.random.default_rng(seed)
    F, G = random_superfunction(2, rng), random_superfunction(2, rng)
    lhs = transform(product(F, G))(Z)
    assert np.abs(lhs - fourier_of_product(F, G, Z)).max() < 1e-7


def test_product_duality_grid_quadrature():
    F = SuperFunction(1, {0: f, 1: g})
    G = SuperFunction(1, {0: g, 1: f})
    z = np.array([-0.7, 0.4])
    exact = fourier_of_product(F, G, z)
    Fg = F.to_grid()
    assert np.abs(fourier_of_product(Fg, G, z) - exact).max() < 1e-6


def test_sobolev_norm_examples():
    e = GaussPoly.gaussian(1.0)
    assert abs(sobolev_norm(SuperFunction(2, {0: e}), 0, 1).value - np.sqrt(np.pi)) < 1e-10
    assert sobolev_norm(SuperFunction(3, {0b111: e}), 2, 1).value == 0
    with pytest.raises(ValueError):
        sobolev_norm(SuperFunction(1, {0: e}), -1)
    with pytest.raises(ValueError):
        sobolev_norm(SuperFunction(1, {0: e}), 1, 0.5)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(superfunctions(n), superfunctions(n))),
       st.floats(-3, 3))
def test_sobolev_norm_axioms(FG, c):
    F, G = FG
    n = F.n
    nf, ng = sobolev_norm(F, n).value, sobolev_norm(G, n).value
    assert sobolev_norm(F + G, n).value <= nf + ng + 1e-8
    assert abs(sobolev_norm(F.scale(c), n).value - abs(c) * nf) < 1e-8 * max(1, nf)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(superfunctions(n), superfunctions(n))))
def test_banach_inequality(FG):
    rep = banach_check(*FG)
    assert rep.passed and rep.ratio <= 1


def test_banach_zero_and_narrow_bumps():
    Zr = SuperFunction.zero(2)
    rep = banach_check(Zr, Zr)
    assert rep.lhs == 0 and rep.passed
    narrow = SuperFunction(1, {0: GaussPoly.gaussian(50.0), 1: GaussPoly.gaussian(50.0)})
    rep = banach_check(narrow, narrow)
    assert rep.passed and 0 < rep.ratio <= 1


def test_dimension_checks():
    with pytest.raises(DimensionError):
        convolve(SuperFunction(1, {0: f}), SuperFunction(2, {0: f}))
    with pytest.raises(DimensionError):
        convolve_dist(CompactDistribution.delta_identity(2), SuperFunction(1, {0: f}))
