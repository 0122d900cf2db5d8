import itertools

import pytest
from hypothesis import given, strategies as st

from hcft import oracle
from hcft.superalgebra import (
    IndexSet,
    PBWElement,
    antipode,
    coproduct,
    format_element,
    full_mask,
    gamma,
    hodge_star,
    merge_sign,
    multiply,
    oracle_normalize,
    parse_element,
    tensor_multiply,
)
from conftest import monomials


def el(text, n):
    return parse_element(text, n)


def test_generator_square_is_z():
    assert multiply(el("a{1}", 1), el("a{1}", 1)) == PBWElement.z(1)


def test_unit_law():
    u = el("2 z^1 a{1,3} + (0,1) a{2}", 3)
    assert multiply(PBWElement.one(3), u) == u
    assert multiply(u, PBWElement.one(3)) == u


def test_a13_times_a12():
    # a1 a3 a1 a2 = -a1 a1 a3 a2 = +z a2 a3
    assert multiply(el("a{1,3}", 3), el("a{1,2}", 3)) == el("z^1 a{2,3}", 3)


def test_antipode_examples():
    assert antipode(el("a{1}", 2)) == el("-1 a{1}", 2)
    assert antipode(PBWElement.one(2)) == PBWElement.one(2)
    # S(a1 a2) = S(a2) S(a1) = a2 a1 = -a1 a2
    assert antipode(el("a{1,2}", 2)) == oracle.word_antipode(el("a{1,2}", 2))
    assert antipode(el("a{1,2}", 2)) == el("-1 a{1,2}", 2) * PBWElement.one(2).scale(-1)


def test_hodge_examples():
    sign, mono = hodge_star(IndexSet.of(3, []), 3)
    assert (sign, mono.mask) == (1, 0b111)
    sign, mono = hodge_star(IndexSet.of(3, [2]), 3)
    assert (sign, mono.mask) == (-1, 0b101)


@pytest.mark.parametrize("n", range(1, 7))
def test_hodge_completes_to_gamma(n):
    g = gamma(n)
    for m in range(1 << n):
        sign, star = hodge_star(m, n)
        prod = multiply(PBWElement.from_mask(n, m), PBWElement.from_mask(n, star.mask, coeff=sign))
        assert prod == g
        assert sign == oracle.hodge_sign(m, n)


def test_coproduct_examples():
    d1 = coproduct(el("a{1}", 1))
    assert set(d1.items()) == {((m0, m1), 1) for m0, m1 in [((0, 1), (0, 0)), ((0, 0), (0, 1))]}
    d2 = coproduct(el("a{1,2}", 2))
    keys = {(x.mask, y.mask): c for (x, y), c in d2.items()}
    assert keys[(0b01, 0b10)] == 1
    assert keys[(0b10, 0b01)] == -1


def test_normalize_examples():
    assert oracle_normalize([2, 1], 2) == el("-1 a{1,2}", 2)
    assert oracle_normalize([1, 1, 1], 1) == el("z^1 a{1}", 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_multiply_matches_oracle_exhaustively(n):
    for i, j in itertools.product(range(1 << n), repeat=2):
        for k in range(2):
            u = PBWElement.from_mask(n, i, k)
            v = PBWElement.from_mask(n, j)
            assert multiply(u, v) == oracle.word_product(u, v)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.sampled_from(["z", *range(1, n + 1)]), max_size=8)
                                 .map(lambda w: (n, w))))
def test_random_words_match_folded_multiply(nw):
    n, word = nw
    acc = PBWElement.one(n)
    for s in word:
        acc = acc * (PBWElement.z(n) if s == "z" else PBWElement.a(n, s))
    assert acc == oracle_normalize(word, n)


@given(st.data())
def test_associativity(data):
    n = data.draw(st.integers(1, 5))
    u, v, w = (data.draw(monomials(n)) for _ in range(3))
    assert (u * v) * w == u * (v * w)


@given(st.data())
def test_antipode_is_super_antihomomorphism(data):
    n = data.draw(st.integers(1, 5))
    u, v = data.draw(monomials(n)), data.draw(monomials(n))
    sign = -1 if u.parity == 1 and v.parity == 1 else 1
    assert antipode(u * v) == (antipode(v) * antipode(u)).scale(sign)
    assert antipode(antipode(u)) == u


@given(st.data())
def test_coproduct_is_algebra_map(data):
    n = data.draw(st.integers(1, 4))
    u, v = data.draw(monomials(n, 1)), data.draw(monomials(n, 1))
    lhs = coproduct(u * v)
    rhs = tensor_multiply(coproduct(u), coproduct(v))
    keys = set(lhs) | set(rhs)
    assert all(abs(lhs.get(k, 0) - rhs.get(k, 0)) < 1e-12 for k in keys)


@given(st.data())
def test_antipode_counit_identity(data):
    # mu (S (x) id) Delta = epsilon
    n = data.draw(st.integers(1, 4))
    u = data.draw(monomials(n, 1))
    total = PBWElement.zero(n)
    for (x, y), c in coproduct(u).items():
        total = total + (antipode(PBWElement.from_mask(n, x.mask, x.zpow)) * PBWElement.from_mask(n, y.mask, y.zpow)).scale(c)
    (mono, _), = u.items()
    expected = PBWElement.one(n) if mono == (0, 0) else PBWElement.zero(n)
    assert total == expected


@given(st.integers(0, 63), st.integers(0, 63))
def test_merge_sign_matches_bubble_sort(i, j):
    n = 6
    word = oracle_normalize([m + 1 for m in range(n) if i >> m & 1] + [m + 1 for m in range(n) if j >> m & 1], n)
    assert word.coeff((i & j).bit_count(), i ^ j) == merge_sign(i, j)


def test_brute_force_table_small():
    table = oracle.brute_force_sign_table(3)
    assert all(table[(i, j)] == merge_sign(i, j) for i in range(8) for j in range(8))


@given(st.data())
def test_parse_format_round_trip(data):
    n = data.draw(st.integers(1, 6))
    u = data.draw(monomials(n)).scale(complex(data.draw(st.integers(-5, 5)), data.draw(st.integers(-5, 5))))
    assert parse_element(format_element(u), n) == u


@pytest.mark.parametrize("bad", ["a{0}", "a{4}", "z^ a{1}", "+", "b{1}", "2 3 a{1}"])
def test_parse_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        parse_element(bad, 3)


def test_full_mask_and_gamma():
    assert full_mask(4) == 0b1111
    assert gamma(3) == el("a{1,2,3}", 3)


def test_parse_orders_factors_left_to_right():
    assert parse_element("a{2} a{1}", 2) == el("-1 a{1,2}", 2)
    assert parse_element("2 1", 1) == PBWElement.one(1).scale(2)
