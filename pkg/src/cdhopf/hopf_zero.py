"""The Hopf construction, zero-divisor pairs and their searches, the
associator-vanishing set E_n, complex-collinear pairs P(n), and the retraction
of E_n minus P(n) onto the unnormalized zero divisors."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .core import (
    Element,
    LevelError,
    associator,
    build_table,
    double,
    e_tilde,
    inner,
    mul,
    norm2,
    split,
    tilde,
    to_scalar,
)
from .frames import (
    FramePair,
    _exact_sqrt,
    epsilon,
    in_H_eps_perp,
    is_doubly_pure,
    project_H,
    quat_basis,
)
from .linalg import rank
from .report import Report
from .sampling import random_element, rng_for


@dataclass(frozen=True)
class HopfValue:
    first: Element
    second: Fraction

    def norm2(self) -> Fraction:
        return norm2(self.first) + self.second * self.second

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second == 0


def hopf(x: Element, y: Element) -> HopfValue:
    """F(x, y) = (2xy, |y|^2 - |x|^2)."""
    if x.level != y.level:
        raise LevelError("hopf needs equal levels")
    return HopfValue(mul(x, y).scale(2), norm2(y) - norm2(x))


def norm_violation_witness(n: int, seed: int = 0, tries: int = 100):
    """Seeded pair (x, y) with |xy|^2 != |x|^2 |y|^2, or None."""
    for i in range(tries):
        rng = rng_for(seed, "norm-violation", i)
        x = random_element(rng, n)
        y = random_element(rng, n)
        if norm2(mul(x, y)) != norm2(x) * norm2(y):
            return x, y
    return None


# -- zero-divisor certificates -------------------------------------------------


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class ZeroDivisorCert:
    a: Element
    b: Element
    method: str = "exhaustive"
    seed: int | None = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        a, b = self.a, self.b
        if a.level != b.level:
            raise CertificateError("certificate coordinates differ in level")
        if a.is_zero() or b.is_zero():
            raise CertificateError("zero divisors must be nonzero")
        if not mul(a, b).is_zero():
            raise CertificateError("product a*b is not exactly zero")
        if not (is_doubly_pure(a) and is_doubly_pure(b)):
            raise CertificateError("zero divisor coordinates are not doubly pure")
        if inner(a, b) or inner(tilde(a), b):
            raise CertificateError("b is not orthogonal to H_a")

    @property
    def level(self) -> int:
        return self.a.level

    @property
    def pair(self) -> FramePair:
        return FramePair(self.a, self.b)

    @property
    def norms2(self) -> tuple[Fraction, Fraction]:
        return norm2(self.a), norm2(self.b)

    def verify(self) -> Report:
        """Re-derive every certificate invariant from scratch."""
        return verify_pair(self.a, self.b)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "a": [str(c) for c in self.a.coeffs],
            "b": [str(c) for c in self.b.coeffs],
            "residual": str(norm2(mul(self.a, self.b))),
            "seed": self.seed,
            "method": self.method,
        }

    @classmethod
    def from_json(cls, obj: Any) -> "ZeroDivisorCert":
        if not isinstance(obj, dict):
            raise CertificateError("certificate must be a JSON object")
        missing = {"level", "a", "b", "method"} - set(obj)
        if missing:
            raise CertificateError(f"certificate missing keys {sorted(missing)}")
        n = obj["level"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise CertificateError("certificate level must be a non-negative integer")
        try:
            a = Element(n, tuple(to_scalar(c) for c in _str_list(obj["a"])))
            b = Element(n, tuple(to_scalar(c) for c in _str_list(obj["b"])))
        except (ValueError, ZeroDivisionError) as exc:
            raise CertificateError(str(exc)) from None
        if obj["method"] not in ("exhaustive", "numeric"):
            raise CertificateError(f"unknown method {obj['method']!r}")
        if str(obj.get("residual", "0")) != "0":
            raise CertificateError("certificate records a nonzero residual")
        return cls(a, b, obj["method"], obj.get("seed"))


def verify_pair(a: Element, b: Element) -> Report:
    """Every zero-divisor certificate invariant, each recorded as its own check."""
    rep = Report("verify-cert", "zero-divisor certificate invariants")
    witness = {"a": a, "b": b}
    if a.level != b.level:
        rep.add("equal levels", False, counterexample=witness)
        return rep
    prod = mul(a, b)
    nonzero = not a.is_zero() and not b.is_zero()
    dp = is_doubly_pure(a) and is_doubly_pure(b)
    rep.add("a, b nonzero", nonzero, counterexample=None if nonzero else witness)
    rep.add("a*b == 0", prod.is_zero(), counterexample=None if prod.is_zero() else {**witness, "product": prod})
    rep.add("a, b doubly pure", dp, counterexample=None if dp else witness)
    perp = dp and nonzero and all(inner(b, f) == 0 for f in quat_basis(a).as_tuple())
    rep.add("b orthogonal to H_a", perp, counterexample=None if perp else witness)
    if a.level >= 1:
        at, bt = tilde(a), tilde(b)
        cx = mul(at, b).is_zero() and mul(a, bt).is_zero() and mul(at, bt).is_zero()
        rep.add("a~ b == a b~ == a~ b~ == 0", cx, counterexample=None if cx else witness)
    if norm2(a) == norm2(b):
        hz = hopf(a, b).is_zero()
        rep.add("hopf(a, b) == (0, 0)", hz, counterexample=None if hz else witness)
    return rep


def _str_list(v):
    if not isinstance(v, list) or not all(isinstance(c, str) for c in v):
        raise CertificateError("coordinates must be lists of 'p/q' strings")
    return v


def in_Xr(p: FramePair, r2) -> bool:
    """(a, b) in X^r with r^2 = r2: a*b == 0 and |a|^2 == |b|^2 == r2."""
    r2 = to_scalar(r2)
    if r2 <= 0:
        raise ValueError("radius must be positive")
    return norm2(p.a) == r2 and norm2(p.b) == r2 and mul(p.a, p.b).is_zero()


def rescale_X(p: FramePair, r2, s2) -> FramePair:
    """Map X^r onto X^s by the factor s/r, which must be rational."""
    r2, s2 = to_scalar(r2), to_scalar(s2)
    if r2 <= 0 or s2 <= 0:
        raise ValueError("radius must be positive")
    if not in_Xr(p, r2):
        raise ValueError("pair is not in X^r")
    f = _exact_sqrt(s2 / r2)
    if f is None:
        raise ValueError(f"scale factor sqrt({s2 / r2}) is irrational")
    return FramePair(p.a.scale(f), p.b.scale(f))


# -- exhaustive search -----------------------------------------------------------


def _candidates(n: int, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    # canonical form: sorted indices, first sign +1
    out = []
    for idx in itertools.combinations(range(1 << n), k):
        for tail in itertools.product((1, -1), repeat=k - 1):
            out.append((idx, (1,) + tail))
    return out


def _vector(n: int, cand) -> np.ndarray:
    v = np.zeros(1 << n, dtype=np.int64)
    idx, signs = cand
    v[list(idx)] = signs
    return v


def _search_chunk(args):
    n, k, lo, hi = args
    t = build_table(n)
    d = 1 << n
    cands = _candidates(n, k)
    B = np.stack([_vector(n, c) for c in cands], axis=1)  # d x N
    cols = np.arange(d)
    hits = []
    for ia in range(lo, hi):
        a = _vector(n, cands[ia])
        L = np.zeros((d, d), dtype=np.int64)
        for i in np.nonzero(a)[0]:
            np.add.at(L, (t.index[i], cols), a[i] * t.sign[i])
        zero_cols = np.nonzero(~np.any(L @ B, axis=0))[0]
        hits.extend((ia, int(ib)) for ib in zero_cols)
    return hits


def search_exhaustive(n: int, k: int = 2, workers: int = 1) -> list[ZeroDivisorCert]:
    """All pairs of k-term signed basis sums with exact product zero.

    Pairs differing only by the sign of either coordinate are reported once.
    """
    if n < 1 or k < 1:
        raise ValueError("need level >= 1 and support >= 1")
    cands = _candidates(n, k)
    N = len(cands)
    chunks = max(1, workers) * 4
    bounds = [(n, k, N * i // chunks, N * (i + 1) // chunks) for i in range(chunks)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_search_chunk, bounds))
    else:
        parts = [_search_chunk(b) for b in bounds]
    certs = []
    for ia, ib in itertools.chain.from_iterable(parts):
        a = Element(n, tuple(int(x) for x in _vector(n, cands[ia])))
        b = Element(n, tuple(int(x) for x in _vector(n, cands[ib])))
        certs.append(ZeroDivisorCert(a, b, "exhaustive", None, {"support": k}))
    return certs


# -- numeric search ----------------------------------------------------------------


@dataclass
class NumericResult:
    level: int
    seed: int
    residual: float
    a: np.ndarray
    b: np.ndarray
    iterations: int
    history: list[float] = field(default_factory=list, repr=False)
    index: int = 0

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "seed": self.seed,
            "index": self.index,
            "residual": repr(float(self.residual)),
            "iterations": self.iterations,
            "a": [repr(float(x)) for x in self.a],
            "b": [repr(float(x)) for x in self.b],
        }


def _least_singular(A: np.ndarray) -> tuple[float, np.ndarray]:
    _, s, vt = np.linalg.svd(A)
    return float(s[-1]), vt[-1]


def search_numeric(n: int, seed: int, iters: int = 500, tol: float = 1e-10, index: int = 0) -> NumericResult:
    """Minimize |ab| over unit doubly pure a, b by alternating least singular vectors.

    With a fixed, the best unit b is the least right singular vector of the
    left-multiplication matrix L_a restricted to doubly pure coordinates; then
    the roles swap using right multiplication by b.  The residual never
    increases.
    """
    if n < 3:
        raise ValueError("numeric search needs level >= 3")
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = build_table(n).left_matrices()  # M[i] @ y == e_i * y
    d = 1 << n
    h = d // 2
    keep = [i for i in range(1, d) if i != h]
    P = np.eye(d)[:, keep]
    rng = rng_for(seed, "numeric-search", index)
    a = P @ rng.standard_normal(len(keep))
    a /= np.linalg.norm(a)
    b = np.zeros(d)
    history = []
    residual = np.inf
    it = 0
    for it in range(1, iters + 1):
        La = np.tensordot(a, M, axes=1)
        _, v = _least_singular(La @ P)
        b = P @ v
        Rb = np.einsum("ikj,j->ki", M, b)
        s, u = _least_singular(Rb @ P)
        a = P @ u
        prev, residual = residual, s
        history.append(residual)
        if residual < tol or prev - residual <= 1e-15 * max(1.0, prev):
            break
    residual = float(np.linalg.norm(np.tensordot(a, M, axes=1) @ b))
    return NumericResult(n, seed, residual, a, b, it, history, index)


def search_numeric_many(n: int, seed: int, runs: int, iters: int = 500, tol: float = 1e-10, workers: int = 1) -> list[NumericResult]:
    """Runs 0 .. runs-1 of the numeric search under one master seed."""
    jobs = [(n, seed, iters, tol, i) for i in range(runs)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_numeric_job, jobs))
    return [search_numeric(*job) for job in jobs]


def _numeric_job(args):
    return search_numeric(*args)


def rationalize(result: NumericResult, max_den: int = 16) -> ZeroDivisorCert | None:
    """Snap a float zero divisor to small-denominator rationals and re-verify exactly."""
    n = result.level

    def snap(v):
        v = np.asarray(v, dtype=float)
        m = np.max(np.abs(v))
        if m == 0:
            return None
        v = v / m
        return Element(n, tuple(Fraction(float(x)).limit_denominator(max_den) for x in v))

    a, b = snap(result.a), snap(result.b)
    if a is None or b is None:
        return None
    try:
        return ZeroDivisorCert(a, b, "numeric", result.seed, {"max_den": max_den})
    except CertificateError:
        return None


# -- E_n, P(n), w_n and the retraction --------------------------------------------


def _halves(alpha: Element) -> tuple[Element, Element]:
    if not in_H_eps_perp(alpha):
        raise ValueError("alpha must have doubly pure halves")
    return split(alpha)


def in_E(alpha: Element) -> bool:
    """(alpha, alpha, eps) == 0 for alpha with doubly pure halves."""
    _halves(alpha)
    return associator(alpha, alpha, epsilon(alpha.level - 1)).is_zero()


def in_P(alpha: Element) -> bool:
    """The halves a, b are complex collinear under i x = x~."""
    a, b = _halves(alpha)
    if a.is_zero():
        return True
    return rank([a, tilde(a), b]) <= 2


def w_map(a: Element, b: Element) -> Element:
    """(a, e0~, b) for doubly pure a, b."""
    if not (is_doubly_pure(a) and is_doubly_pure(b)):
        raise ValueError("w_map needs doubly pure arguments")
    return associator(a, e_tilde(a.level), b)


def retract(alpha: Element) -> FramePair:
    """R(a, b) = (a, d) where b = c + d, c in H_a, d orthogonal to H_a."""
    a, b = _halves(alpha)
    if in_P(alpha):
        raise ValueError("retraction undefined on complex-collinear pairs (alpha in P(n))")
    if not in_E(alpha):
        raise ValueError("alpha is not in E_n: (alpha, alpha, eps) != 0")
    _, d = project_H(a, b)
    if d.is_zero() or not mul(a, d).is_zero():
        raise AssertionError("retraction image is not a zero divisor pair")
    return FramePair(a, d)


def normalize_to_X(p: FramePair) -> FramePair:
    """Divide each coordinate by its norm; norms must be rational."""
    if p.a.is_zero() or p.b.is_zero():
        raise ValueError("cannot normalize a zero coordinate")
    ra, rb = _exact_sqrt(norm2(p.a)), _exact_sqrt(norm2(p.b))
    if ra is None or rb is None:
        raise ValueError(
            f"norms sqrt({norm2(p.a)}), sqrt({norm2(p.b)}) are not rational; "
            "use float mode or test membership with in_Xr at the actual radius"
        )
    return FramePair(p.a / ra, p.b / rb)


def normalize_to_X_float(p: FramePair) -> tuple[np.ndarray, np.ndarray, dict]:
    if p.a.is_zero() or p.b.is_zero():
        raise ValueError("cannot normalize a zero coordinate")
    a, b = p.a.to_float(), p.b.to_float()
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    M = build_table(p.level).left_matrices()
    prod = np.tensordot(a, M, axes=1) @ b
    residuals = {
        "norm_a": abs(float(np.linalg.norm(a)) - 1.0),
        "norm_b": abs(float(np.linalg.norm(b)) - 1.0),
        "product": float(np.linalg.norm(prod)),
    }
    return a, b, residuals


def unit_alpha(cert: ZeroDivisorCert) -> Element:
    """double(a, b) scaled to norm 1; needs |a| == |b| and a rational total norm."""
    a, b = cert.a, cert.b
    if norm2(a) != norm2(b):
        raise ValueError("unit_alpha needs |a| == |b|")
    r = _exact_sqrt(norm2(a) + norm2(b))
    if r is None:
        raise ValueError("total norm is irrational")
    return double(a, b) / r
