import json

import pytest

from cdhopf.core import Fraction, LevelError, basis, conj, double, mul, one, tilde
from cdhopf.frames import epsilon
from cdhopf.hopf_zero import search_exhaustive, unit_alpha
from cdhopf.mono import (
    AUDIT_CONDITIONS,
    OCT_PRINTED_TABLE,
    LinearMap,
    alpha_from_mono,
    alternation,
    basis_table_cells,
    bridge_identity,
    equivalence_audit,
    is_monomorphism,
    oct_mono_from_alpha,
    pair_to_quat_mono,
    phi_w,
    printed_table_disagreements,
    trivial_embedding,
)
from cdhopf.sampling import frame_V, frame_W, halve_to_unit, rng_for, unit_alpha_W, unit_pure


@pytest.fixture(scope="module")
def unit_alphas():
    return [unit_alpha(c) for c in search_exhaustive(4, 2)]


@pytest.mark.parametrize("m,n", [(0, 3), (1, 4), (2, 5), (3, 4)])
def test_trivial_embeddings_are_monomorphisms(m, n):
    assert is_monomorphism(trivial_embedding(m, n)).passed


def test_phi_w_for_unit_pure_w():
    rng = rng_for(0, "phi")
    for n in (2, 3, 4, 5):
        w = unit_pure(rng, n)
        assert is_monomorphism(phi_w(w)).passed
    x = basis(1, 0).scale(3) + basis(1, 1).scale(2)
    assert phi_w(-basis(1, 1))(x) == conj(x)
    with pytest.raises(ValueError):
        phi_w(basis(3, 1) + basis(3, 2))


def test_scaled_image_is_not_a_monomorphism():
    good = LinearMap(1, 3, (one(3), basis(3, 1).scale(Fraction(3, 5)) + basis(3, 2).scale(Fraction(4, 5))))
    assert is_monomorphism(good).passed
    scaled = LinearMap(1, 3, (one(3), basis(3, 1).scale(2)))
    rep = is_monomorphism(scaled)
    assert not rep.passed
    assert {c.name for c in rep.failures()} == {"multiplicative on basis pairs", "isometric (orthonormal columns)"}


@pytest.mark.parametrize("n", [2, 3])
def test_frames_below_sedenions_give_quaternion_monomorphisms(n):
    rng = rng_for(1, "quat")
    for _ in range(10):
        a, b = frame_V(rng, n)
        assert alternation(a, b).strong
        assert is_monomorphism(pair_to_quat_mono(a, b)).passed


def test_quaternion_monomorphism_needs_strong_alternation():
    # e1 and e10 in A_4 are orthonormal but do not alternate strongly
    a, b = basis(4, 1) + basis(4, 10), basis(4, 4)
    assert not alternation(a, b).weak
    with pytest.raises(ValueError):
        pair_to_quat_mono(basis(4, 1).scale(Fraction(1, 2)), basis(4, 2))
    a, b = frame_V(rng_for(5, "x"), 4)
    if alternation(a, b).strong:
        assert is_monomorphism(pair_to_quat_mono(a, b)).passed
    else:
        with pytest.raises(ValueError):
            pair_to_quat_mono(a, b)


def test_linear_map_json_roundtrip():
    phi = trivial_embedding(2, 3)
    assert LinearMap.from_json(json.loads(json.dumps(phi.to_json()))) == phi
    with pytest.raises(LevelError):
        LinearMap(2, 3, (one(3),))


def test_octonion_monomorphism_from_certificates(unit_alphas):
    for alpha in unit_alphas[::11]:
        phi, rep = oct_mono_from_alpha(alpha)
        verdicts = {c.name: c.passed for c in rep.checks}
        assert verdicts["unital"] and verdicts["injective"]
        assert verdicts["multiplicative on basis pairs"]
        assert verdicts["isometric (orthonormal columns)"]
        assert alpha_from_mono(phi) == alpha


def test_printed_table_differs_in_exactly_two_cells():
    diffs = printed_table_disagreements()
    assert [d["cell"] for d in diffs] == [["alpha~", "alpha"], ["alpha", "alpha~"]]
    assert diffs[0]["printed"] == (-1, 3) and diffs[0]["computed"] == (1, 3)
    cells = basis_table_cells(3)
    assert sum(OCT_PRINTED_TABLE[i][j] != cells[i][j] for i in range(8) for j in range(8)) == 2


def test_printed_table_cells_are_internally_consistent():
    # alpha~ alpha = alpha~ * alpha with alpha~ = alpha e0~ is +|alpha|^2 e0~ by direct computation
    alpha = halve_to_unit(*frame_W(rng_for(0, "cell"), 4))
    assert mul(tilde(alpha), alpha) == one(5).scale(0) + tilde(one(5))
    assert mul(alpha, tilde(alpha)) == -tilde(one(5))


def test_octonion_monomorphism_rejects_bad_alpha():
    with pytest.raises(ValueError):
        oct_mono_from_alpha(basis(5, 1).scale(2))
    with pytest.raises(ValueError):
        oct_mono_from_alpha(one(5))


def test_audit_all_true_on_certificates(unit_alphas):
    for alpha in unit_alphas[::5]:
        rep = equivalence_audit(alpha)
        assert rep.data["vector"] == [True] * 5
        assert rep.passed


def test_audit_accepts_scaled_certificates():
    c = search_exhaustive(4, 2)[0]
    rep = equivalence_audit(double(c.a, c.b))
    assert rep.data["vector"] == [True] * 5


def test_audit_all_false_off_the_zero_divisors():
    rng = rng_for(0, "audit")
    seen = 0
    for _ in range(10):
        alpha = unit_alpha_W(rng, 4)
        rep = equivalence_audit(alpha)
        assert len(rep.data["vector"]) == len(AUDIT_CONDITIONS)
        if not rep.data["vector"][0]:
            assert rep.data["vector"] == [False] * 5
            seen += 1
    assert seen > 0


def test_audit_needs_sedenion_halves():
    with pytest.raises(LevelError):
        equivalence_audit(halve_to_unit(*frame_W(rng_for(0, "x"), 3)))


def test_bridge_identity_on_W_type_alpha():
    rng = rng_for(7, "bridge")
    for _ in range(10):
        assert bridge_identity(double(*frame_W(rng, 4)))
    assert epsilon(4).level == 5
