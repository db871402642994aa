import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdhopf.core import associator, basis, double, mul, norm2, tilde
from cdhopf.frames import FramePair, epsilon, project_H
from cdhopf.hopf_zero import (
    CertificateError,
    ZeroDivisorCert,
    hopf,
    in_E,
    in_P,
    in_Xr,
    norm_violation_witness,
    rationalize,
    retract,
    search_exhaustive,
    search_numeric,
    search_numeric_many,
    unit_alpha,
    verify_pair,
    w_map,
)
from cdhopf.sampling import random_element, rng_for
from conftest import elements
from oracle import ref_zero_divisor_count

seeds = st.integers(min_value=0, max_value=2**32)


@pytest.fixture(scope="module")
def level4():
    return search_exhaustive(4, 2)


def test_exhaustive_count_matches_reference(level4):
    assert len(level4) == ref_zero_divisor_count(4) == 336


def test_no_two_term_zero_divisors_in_octonions():
    assert search_exhaustive(3, 2) == []
    assert ref_zero_divisor_count(3) == 0


def test_every_certificate_reverifies(level4):
    for c in level4:
        rep = c.verify()
        assert rep.passed, rep.failures()
        assert norm2(c.a) == norm2(c.b) == 2
        assert in_Xr(c.pair, 2)


def test_worker_count_does_not_change_results(level4):
    assert search_exhaustive(4, 2, workers=3) == level4


def test_certificate_json_roundtrip(level4):
    c = level4[17]
    obj = json.loads(json.dumps(c.to_json()))
    assert obj["residual"] == "0" and obj["method"] == "exhaustive"
    assert ZeroDivisorCert.from_json(obj) == c


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o.pop("a"),
        lambda o: o.update(level="4"),
        lambda o: o.update(method="guess"),
        lambda o: o.update(residual="1/2"),
        lambda o: o["a"].__setitem__(0, "0.5"),
    ],
)
def test_certificate_schema_errors(level4, mutate):
    obj = level4[0].to_json()
    mutate(obj)
    with pytest.raises(CertificateError):
        ZeroDivisorCert.from_json(obj)


def test_certificate_rejects_nonzero_product():
    with pytest.raises(CertificateError):
        ZeroDivisorCert(basis(4, 1), basis(4, 2))


def test_verify_pair_names_each_failure():
    rep = verify_pair(basis(4, 1), basis(4, 2))
    failed = {c.name for c in rep.failures()}
    assert "a*b == 0" in failed
    assert all(c.counterexample for c in rep.failures())
    assert not verify_pair(basis(4, 0), basis(4, 2)).passed


def test_hopf_map_norm_identity_in_normed_range():
    rng = rng_for(3, "hopf")
    for n in range(4):
        for _ in range(20):
            x, y = random_element(rng, n), random_element(rng, n)
            assert hopf(x, y).norm2() == (norm2(x) + norm2(y)) ** 2


def test_hopf_vanishes_on_equal_norm_zero_divisors(level4):
    for c in level4[:40]:
        assert hopf(c.a, c.b).is_zero()


def test_norm_violation_witness_at_level_four():
    x, y = norm_violation_witness(4)
    assert norm2(mul(x, y)) != norm2(x) * norm2(y)


@pytest.mark.parametrize("seed", range(5))
def test_numeric_finder_level3_stays_at_one(seed):
    r = search_numeric(3, seed, iters=200)
    assert 0.99 <= r.residual <= 1.01


def test_numeric_finder_level4_reaches_zero():
    runs = search_numeric_many(4, 0, 5)
    best = min(runs, key=lambda r: r.residual)
    assert best.residual < 1e-10
    assert abs(np.linalg.norm(best.a) - 1) < 1e-12 and abs(np.linalg.norm(best.b) - 1) < 1e-12
    assert [r.index for r in runs] == list(range(5))


def test_numeric_finder_is_deterministic():
    a, b = search_numeric(4, 9), search_numeric(4, 9)
    assert a.to_json() == b.to_json()
    assert search_numeric(4, 9, index=1).to_json() != a.to_json()


def test_numeric_finder_rejects_bad_input():
    with pytest.raises(ValueError):
        search_numeric(2, 0)
    with pytest.raises(ValueError):
        search_numeric(4, 0, tol=0)


def test_rationalize_recovers_an_exact_certificate(level4):
    c = level4[3]
    r = search_numeric(4, 0)
    r.a = np.array([float(x) for x in c.a.coeffs]) / np.sqrt(2)
    r.b = np.array([float(x) for x in c.b.coeffs]) / np.sqrt(2)
    cert = rationalize(r)
    assert cert is not None and cert.method == "numeric"
    assert cert.a == c.a and cert.b == c.b


def test_unit_alpha_has_norm_one(level4):
    alpha = unit_alpha(level4[0])
    assert norm2(alpha) == 1
    assert in_E(alpha) and not in_P(alpha)


def _in_E_generator(seed, level4):
    rng = rng_for(seed, "E")
    c = level4[int(rng.integers(len(level4)))]
    a, d = c.a, c.b
    k = int(rng.integers(1, 5))
    r, s = (int(v) for v in rng.integers(-3, 4, size=2))
    return a, d.scale(k), double(a, a.scale(r) + tilde(a).scale(s) + d.scale(k))


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_retraction_recovers_the_orthogonal_part(level4, seed):
    a, d, alpha = _in_E_generator(seed, level4)
    assert in_E(alpha) and not in_P(alpha)
    r = retract(alpha)
    assert r == FramePair(a, d)
    assert mul(r.a, r.b).is_zero()
    assert retract(r.as_alpha()) == r


def test_retraction_rejects_collinear_and_non_E_inputs():
    a = basis(4, 1)
    with pytest.raises(ValueError):
        retract(double(a, tilde(a).scale(3)))
    with pytest.raises(ValueError):
        retract(double(a, basis(4, 2)))  # (a, e2): ab != 0 and outside E
    assert in_P(double(a, a.scale(2) + tilde(a)))


def test_associator_with_epsilon_matches_w_map():
    rng = rng_for(1, "w")
    dp = [i for i in range(1, 16) if i != 8]
    for _ in range(20):
        a = random_element(rng, 4, dp)
        b = random_element(rng, 4, dp)
        alpha = double(a, b)
        lhs = associator(alpha, alpha, epsilon(4))
        assert lhs == double(a.scale(0), -w_map(a, b))


@given(elements(4, doubly=True), elements(4, doubly=True))
@settings(max_examples=25, deadline=None)
def test_w_map_on_H_a_perp(a, b):
    if a.is_zero():
        return
    _, d = project_H(a, b)
    assert w_map(a, d) == tilde(mul(a, d)).scale(-2)
