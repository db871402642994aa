from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdhopf.core import Element, LevelError, basis, double, inner, mul, norm2, one, tilde
from cdhopf.frames import (
    OCT_LABELS,
    QUAT_TABLE,
    FramePair,
    ambient_dim,
    approx_in_W,
    constraint_jacobian_rank,
    epsilon,
    hermitian,
    in_H_eps_perp,
    in_V,
    in_V_doubly,
    in_W,
    is_doubly_pure,
    is_W_type,
    oct_basis,
    project_H,
    quat_basis,
    quat_table_check,
    table_check,
)
from cdhopf.report import Report
from cdhopf.sampling import frame_V, frame_V_doubly, frame_W, rng_for, unit_doubly_pure, unit_H_eps_perp
from conftest import elements

seeds = st.integers(min_value=0, max_value=2**32)


def test_doubly_pure_means_no_e0_and_no_e0_tilde():
    assert is_doubly_pure(basis(3, 1))
    assert not is_doubly_pure(basis(3, 4))
    assert not is_doubly_pure(one(3))
    assert not is_doubly_pure(Element(0, [0]))


@given(seeds, st.integers(min_value=2, max_value=6))
@settings(max_examples=40)
def test_quaternion_table_for_unit_a(seed, n):
    a = unit_doubly_pure(rng_for(seed, "t"), n)
    assert norm2(a) == 1
    assert quat_table_check(a).passed


def test_quaternion_table_needs_unit_input():
    with pytest.raises(ValueError):
        quat_table_check(basis(3, 1).scale(2))
    with pytest.raises(ValueError):
        quat_basis(one(3))


@given(elements(4, doubly=True))
@settings(max_examples=30)
def test_quaternion_table_up_to_norm(a):
    if a.is_zero():
        return
    rep = Report("t")
    w = norm2(a)
    assert table_check(rep, "scaled", list(quat_basis(a).as_tuple()), QUAT_TABLE, [1, w, w, 1])


@given(elements(4, doubly=True), elements(4, doubly=True))
@settings(max_examples=30)
def test_projection_onto_H_a(a, b):
    if a.is_zero():
        return
    c, d = project_H(a, b)
    assert c + d == b
    for f in quat_basis(a).as_tuple():
        assert inner(d, f) == 0


@given(seeds, st.integers(min_value=3, max_value=6))
@settings(max_examples=30)
def test_sampled_frames_are_members(seed, n):
    rng = rng_for(seed, "frames")
    assert in_V(FramePair(*frame_V(rng, n)))
    assert in_V_doubly(FramePair(*frame_V_doubly(rng, n)))
    p = FramePair(*frame_W(rng, n))
    assert in_W(p) and is_W_type(p)
    assert approx_in_W(p.a.to_float(), p.b.to_float())


def test_W_excludes_complex_collinear_pairs():
    a = basis(3, 1)
    assert not in_W(FramePair(a, tilde(a)))
    assert in_V_doubly(FramePair(a, tilde(a)))
    with pytest.raises(LevelError):
        in_W(FramePair(basis(2, 1), basis(2, 3)))


@given(elements(4, doubly=True), elements(4, doubly=True), elements(4, doubly=True))
@settings(max_examples=30)
def test_hermitian_form(a, b, c):
    h = hermitian(a, b)
    assert hermitian(b, a) == h.conjugate()
    assert hermitian(tilde(a), b) == h.times_i()
    assert hermitian(a + c, b) == h + hermitian(c, b)
    if not a.is_zero():
        assert hermitian(a, a).re > 0 and hermitian(a, a).im == 0


def test_epsilon_is_e0_tilde_in_the_first_half():
    for n in range(1, 6):
        eps = epsilon(n)
        assert eps.level == n + 1
        assert eps == double(tilde(one(n)), Element(n, [0] * (1 << n)))


@given(seeds, st.integers(min_value=3, max_value=5))
@settings(max_examples=20)
def test_oct_basis_is_orthogonal_with_expected_norms(seed, n):
    alpha = unit_H_eps_perp(rng_for(seed, "oct"), n)
    assert in_H_eps_perp(alpha)
    vecs = list(oct_basis(alpha))
    assert len(vecs) == len(OCT_LABELS) == 8
    assert [norm2(v) for v in vecs] == [1] * 8
    eps = epsilon(n)
    assert vecs[5] == mul(alpha, eps)
    assert vecs[6] == mul(tilde(eps), alpha)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_constraint_ranks_and_dimensions(n):
    rng = rng_for(11, "dims")
    ranks = {
        "V": constraint_jacobian_rank(FramePair(*frame_V(rng, n)), "V"),
        "V_doubly": constraint_jacobian_rank(FramePair(*frame_V_doubly(rng, n)), "V_doubly"),
        "W": constraint_jacobian_rank(FramePair(*frame_W(rng, n)), "W"),
    }
    assert ranks == {"V": 3, "V_doubly": 3, "W": 4}
    m = 1 << (n + 1)
    assert ambient_dim(n, "V") - ranks["V"] == m - 5
    assert ambient_dim(n, "V_doubly") - ranks["V_doubly"] == m - 7
    assert ambient_dim(n, "W") - ranks["W"] == m - 8


def test_rank_requires_membership():
    with pytest.raises(ValueError):
        constraint_jacobian_rank(FramePair(basis(3, 1), basis(3, 1)), "V")
    with pytest.raises(ValueError):
        constraint_jacobian_rank(FramePair(basis(3, 1), basis(3, 2)), "X")


def test_table_check_reports_the_failing_cell():
    rep = Report("t")
    imgs = [one(2), basis(2, 2), basis(2, 1), basis(2, 3)]  # swapped, so ij = -k
    assert not table_check(rep, "swapped", imgs, QUAT_TABLE)
    cx = rep.checks[0].counterexample
    assert cx["cell"] == [1, 2]
    assert cx["got"] == -basis(2, 3)
    assert cx["expected"] == basis(2, 3)
    assert Fraction(1) == norm2(cx["got"])
