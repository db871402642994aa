from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdhopf.core import (
    MAX_TABLE_LEVEL,
    Element,
    LevelError,
    associator,
    basis,
    build_table,
    cd_mul_arrays,
    conj,
    double,
    e_tilde,
    embed,
    hat,
    inner,
    mul,
    mul_many,
    mul_via_table,
    norm2,
    one,
    parse_scalar,
    products_match,
    split,
    tilde,
    trace,
)
from conftest import elements
from oracle import ref_conj, ref_mul, ref_table

levels = st.integers(min_value=0, max_value=5)


@st.composite
def pair(draw, min_level=0, max_level=5):
    n = draw(st.integers(min_value=min_level, max_value=max_level))
    return draw(elements(n)), draw(elements(n))


@given(pair())
def test_product_matches_reference(xy):
    x, y = xy
    assert list(mul(x, y).coeffs) == ref_mul(list(x.coeffs), list(y.coeffs))


@given(pair(min_level=1))
def test_conj_matches_reference(xy):
    x, _ = xy
    assert list(conj(x).coeffs) == ref_conj(list(x.coeffs))


@pytest.mark.parametrize("n", range(0, 6))
def test_table_matches_reference(n):
    t = build_table(n)
    ref = ref_table(n)
    d = 1 << n
    for i in range(d):
        for j in range(d):
            k, s = t.entry(i, j)
            assert ref[i, j] == (s, k), (i, j)


def test_quaternion_table_is_the_familiar_one():
    # rows e0, e1, e2, e3 as (sign, index)
    t = build_table(2)
    got = [[t.entry(i, j)[::-1] for j in range(4)] for i in range(4)]
    assert got == [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]


def test_table_level_bounds():
    with pytest.raises(LevelError):
        build_table(MAX_TABLE_LEVEL + 1)
    with pytest.raises(LevelError):
        build_table(-1)


@given(pair(max_level=4))
@settings(max_examples=50)
def test_table_product_agrees(xy):
    x, y = xy
    assert mul_via_table(build_table(x.level), x, y) == mul(x, y)


def test_table_product_with_large_numerators():
    big = Fraction(10**40, 7)
    x = Element(3, [big, 1, -big, 0, 3, 0, 0, Fraction(1, 9)])
    y = Element(3, [Fraction(1, 3)] * 8)
    assert mul_via_table(build_table(3), x, y) == mul(x, y)


def test_int64_and_object_paths_agree():
    rng = np.random.default_rng(5)
    X = rng.integers(-9, 10, size=(6, 16)).astype(object)
    Y = rng.integers(-9, 10, size=(6, 16)).astype(object)
    fast = cd_mul_arrays(X.astype(np.int64), Y.astype(np.int64))
    slow = cd_mul_arrays(X * 10**20, Y) // 10**20
    assert np.array_equal(np.asarray(fast, dtype=object), slow)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@given(data=st.data())
@settings(max_examples=30)
def test_norm_is_multiplicative_up_to_octonions(n, data):
    x, y = data.draw(elements(n)), data.draw(elements(n))
    assert norm2(mul(x, y)) == norm2(x) * norm2(y)


def test_norm_fails_at_level_four():
    # (e1 + e10)(e4 - e15) == 0 while both factors are nonzero
    a = basis(4, 1) + basis(4, 10)
    b = basis(4, 4) - basis(4, 15)
    assert mul(a, b).is_zero()
    assert norm2(a) * norm2(b) == 4


@given(pair(max_level=5))
@settings(max_examples=40)
def test_flexible_at_every_level(xy):
    x, y = xy
    assert associator(x, y, x).is_zero()


@given(pair(max_level=3))
@settings(max_examples=40)
def test_alternative_up_to_octonions(xy):
    x, y = xy
    assert associator(x, x, y).is_zero()


def test_sedenions_are_not_alternative():
    x = basis(4, 1) + basis(4, 10)
    y = basis(4, 4)
    assert not associator(x, x, y).is_zero()


@given(pair(max_level=5))
@settings(max_examples=40)
def test_inner_is_half_trace_of_x_conj_y(xy):
    x, y = xy
    assert inner(x, y) == trace(mul(x, conj(y))) / 2
    assert inner(x, y) == sum(a * b for a, b in zip(x.coeffs, y.coeffs))


@given(pair(min_level=1, max_level=5))
@settings(max_examples=40)
def test_tilde_and_hat(xy):
    x, _ = xy
    a, b = split(x)
    assert tilde(x) == double(-b, a)
    assert tilde(x) == mul(x, e_tilde(x.level))
    assert hat(x) == double(b, a)
    assert tilde(tilde(x)) == -x
    assert hat(hat(x)) == x


def test_split_double_embed_roundtrip():
    x = Element(3, range(8))
    assert double(*split(x)) == x
    y = embed(x, 5)
    assert y.level == 5 and y.coeffs[:8] == x.coeffs and not any(y.coeffs[8:])
    assert mul(embed(x, 5), embed(x, 5)) == embed(mul(x, x), 5)
    with pytest.raises(LevelError):
        embed(y, 3)


def test_one_is_identity_and_basis_squares():
    for n in range(5):
        x = Element(n, [Fraction(i + 1, 3) for i in range(1 << n)])
        assert mul(one(n), x) == x == mul(x, one(n))
        for i in range(1, 1 << n):
            assert mul(basis(n, i), basis(n, i)) == -one(n)


def test_level_mismatch_is_an_error():
    with pytest.raises(LevelError):
        mul(one(2), one(3))
    with pytest.raises(LevelError):
        Element(2, [1, 2, 3])


def test_exact_scalars_only():
    with pytest.raises(TypeError):
        Element(1, [0.5, 1])
    with pytest.raises(ValueError):
        parse_scalar("0.5")
    assert parse_scalar(" -3/6 ") == Fraction(-1, 2)


def test_json_roundtrip_is_canonical():
    x = Element(2, ["2/4", 0, -3, Fraction(7, 9)])
    obj = x.to_json()
    assert obj == {"level": 2, "coeffs": ["1/2", "0", "-3", "7/9"]}
    assert Element.from_json(obj) == x
    for bad in ({"level": 2}, {"level": True, "coeffs": []}, {"level": 1, "coeffs": [1, 2]}):
        with pytest.raises(ValueError):
            Element.from_json(bad)


def test_batched_helpers():
    xs = [basis(3, i) for i in range(8)]
    ys = [basis(3, 7 - i) for i in range(8)]
    prods = mul_many(xs, ys)
    assert prods == [mul(x, y) for x, y in zip(xs, ys)]
    ok = products_match(xs, ys, prods, [1] * 8)
    assert ok == [True] * 8
    wrong = products_match(xs, ys, [-p for p in prods], [1] * 8)
    assert wrong == [False] * 8
