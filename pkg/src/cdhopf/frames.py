"""Pure and doubly pure elements, the quaternion and octonion subspaces attached
to them, Stiefel-type frame predicates and the Hermitian form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .core import (
    Element,
    LevelError,
    basis,
    double,
    e_tilde,
    inner,
    mul,
    norm2,
    one,
    products_match,
    split,
    tilde,
    to_scalar,
    trace,
)
from .linalg import rank
from .report import Report


def is_pure(x: Element) -> bool:
    return trace(x) == 0


def is_doubly_pure(x: Element) -> bool:
    if x.level < 1:
        return False
    return x.coeffs[0] == 0 and x.coeffs[x.dim // 2] == 0


def _require_doubly_pure(*xs: Element):
    for x in xs:
        if not is_doubly_pure(x):
            raise ValueError(f"expected a doubly pure element, got {x!r}")


# -- the quaternion subalgebra H_a ------------------------------------------

# Rows/columns ordered (e0, a~, a, e0~); entry is (sign, index) of the product.
QUAT_TABLE = (
    ((+1, 0), (+1, 1), (+1, 2), (+1, 3)),
    ((+1, 1), (-1, 0), (+1, 3), (-1, 2)),
    ((+1, 2), (-1, 3), (-1, 0), (+1, 1)),
    ((+1, 3), (+1, 2), (-1, 1), (-1, 0)),
)


@dataclass(frozen=True)
class QuatBasis:
    e0: Element
    a_tilde: Element
    a: Element
    e0_tilde: Element

    def as_tuple(self):
        return (self.e0, self.a_tilde, self.a, self.e0_tilde)


def quat_basis(a: Element) -> QuatBasis:
    _require_doubly_pure(a)
    if a.is_zero():
        raise ValueError("H_a needs a != 0")
    return QuatBasis(one(a.level), tilde(a), a, e_tilde(a.level))


def table_check(
    report: Report,
    name: str,
    images: list[Element],
    table,
    weights: list[Fraction] | None = None,
) -> bool:
    """Compare images[i] * images[j] with sign * images[k] for every cell.

    ``weights`` are squared norms of the images; when they are not all 1 the
    expected cell is scaled so the table describes the normalized basis.
    """
    m = len(images)
    if weights is not None:
        weights = [to_scalar(w) for w in weights]
    cells = [(i, j) for i in range(m) for j in range(m)]
    factors = []
    for i, j in cells:
        sign, k = table[i][j]
        f = Fraction(sign)
        if weights is not None:
            f *= _cell_scale(weights, i, j, k)
        factors.append(f)
    results = products_match(
        [images[i] for i, _ in cells],
        [images[j] for _, j in cells],
        [images[table[i][j][1]] for i, j in cells],
        factors,
    )
    bad = None
    for (i, j), f, ok in zip(cells, factors, results):
        if not ok:
            k = table[i][j][1]
            bad = {"cell": [i, j], "got": mul(images[i], images[j]), "expected": images[k].scale(f)}
            break
    report.add(name, bad is None, m * m, bad)
    return bad is None


def _cell_scale(w, i, j, k) -> Fraction:
    # f_i f_j = sign sqrt(w_i w_j / w_k) f_k; the ratio is always a square
    ratio = w[i] * w[j] / w[k]
    r = _exact_sqrt(ratio)
    if r is None:
        raise ValueError("table weights are not compatible")
    return r


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def quat_table_check(a: Element) -> Report:
    """Multiplication table of {e0, a~, a, e0~} for a unit doubly pure a."""
    _require_doubly_pure(a)
    if norm2(a) != 1:
        raise ValueError(f"quat_table_check needs |a| = 1, got |a|^2 = {norm2(a)}")
    rep = Report("quat-table", "H_a = span{e0, a~, a, e0~} is a quaternion algebra")
    qb = quat_basis(a)
    table_check(rep, "16 products match the quaternion table", list(qb.as_tuple()), QUAT_TABLE)
    return rep


def project_H(a: Element, b: Element) -> tuple[Element, Element]:
    """Split b = c + d with c in H_a and d orthogonal to H_a."""
    basis4 = quat_basis(a).as_tuple()
    c = b.scale(0)
    for f in basis4:
        c = c + f.scale(inner(b, f) / norm2(f))
    return c, b - c


# -- frames ------------------------------------------------------------------


@dataclass(frozen=True)
class FramePair:
    a: Element
    b: Element

    def __post_init__(self):
        if self.a.level != self.b.level:
            raise LevelError("frame coordinates must share a level")

    @property
    def level(self) -> int:
        return self.a.level

    def as_alpha(self) -> Element:
        return double(self.a, self.b)

    @classmethod
    def from_alpha(cls, alpha: Element) -> "FramePair":
        return cls(*split(alpha))

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, obj) -> "FramePair":
        return cls(Element.from_json(obj["a"]), Element.from_json(obj["b"]))


def _level_guard(p: FramePair):
    if p.level < 1:
        raise LevelError("frame predicates need level >= 1")


def in_V(p: FramePair) -> bool:
    _level_guard(p)
    a, b = p.a, p.b
    return is_pure(a) and is_pure(b) and norm2(a) == 1 and norm2(b) == 1 and inner(a, b) == 0


def in_V_doubly(p: FramePair) -> bool:
    return in_V(p) and is_doubly_pure(p.a) and is_doubly_pure(p.b)


def in_W(p: FramePair) -> bool:
    if p.level < 3:
        raise LevelError("W membership needs level >= 3")
    return in_V_doubly(p) and inner(tilde(p.a), p.b) == 0


def is_W_type(p: FramePair) -> bool:
    """W membership up to a common scale: |a| = |b| != 0, a, a~ orthogonal to b."""
    a, b = p.a, p.b
    return (
        is_doubly_pure(a)
        and is_doubly_pure(b)
        and not a.is_zero()
        and norm2(a) == norm2(b)
        and inner(a, b) == 0
        and inner(tilde(a), b) == 0
    )


def approx_in_W(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Float-mode membership for search outputs."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    h = a.size // 2
    at = np.concatenate([-a[h:], a[:h]])
    vals = [
        a[0], a[h], b[0], b[h],
        a @ a - 1, b @ b - 1, a @ b, at @ b,
    ]
    return bool(np.max(np.abs(vals)) <= tol)


# -- Hermitian form ------------------------------------------------------------


@dataclass(frozen=True)
class ComplexScalar:
    re: Fraction
    im: Fraction

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def times_i(self) -> "ComplexScalar":
        return ComplexScalar(-self.im, self.re)

    def __add__(self, other: "ComplexScalar") -> "ComplexScalar":
        return ComplexScalar(self.re + other.re, self.im + other.im)

    def to_json(self):
        return {"re": str(self.re), "im": str(self.im)}


def hermitian(a: Element, b: Element) -> ComplexScalar:
    """2<a, b> - 2i <a~, b> on doubly pure elements of level >= 3."""
    _require_doubly_pure(a, b)
    if a.level < 3 or a.level != b.level:
        raise LevelError("hermitian needs equal levels >= 3")
    return ComplexScalar(2 * inner(a, b), -2 * inner(tilde(a), b))


# -- epsilon and the octonion subspace O_alpha ----------------------------------


def epsilon(n: int) -> Element:
    """(e0~, 0) in A_{n+1}; the basis vector e_{2^(n-1)}."""
    if n < 1:
        raise LevelError("epsilon needs n >= 1")
    return basis(n + 1, 1 << (n - 1))


def in_H_eps_perp(alpha: Element) -> bool:
    """Both halves of alpha are doubly pure (alpha orthogonal to H_epsilon)."""
    if alpha.level < 2:
        return False
    a, b = split(alpha)
    return is_doubly_pure(a) and is_doubly_pure(b)


OCT_LABELS = ("e0", "eps~", "eps", "e0~", "alpha~", "alpha eps", "eps~ alpha", "alpha")


@dataclass(frozen=True)
class OctBasis:
    vectors: tuple

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def oct_basis(alpha: Element) -> OctBasis:
    """{e0, eps~, eps, e0~, alpha~, alpha eps, eps~ alpha, alpha}, checked orthogonal."""
    if not in_H_eps_perp(alpha) or alpha.is_zero():
        raise ValueError("oct_basis needs a nonzero alpha with doubly pure halves")
    n = alpha.level - 1
    eps = epsilon(n)
    eps_t = tilde(eps)
    vecs = (
        one(n + 1),
        eps_t,
        eps,
        e_tilde(n + 1),
        tilde(alpha),
        mul(alpha, eps),
        mul(eps_t, alpha),
        alpha,
    )
    for i in range(8):
        if vecs[i].is_zero():
            raise AssertionError(f"O_alpha vector {OCT_LABELS[i]} vanished")
        for j in range(i):
            if inner(vecs[i], vecs[j]) != 0:
                raise AssertionError(f"O_alpha vectors {OCT_LABELS[j]} and {OCT_LABELS[i]} not orthogonal")
    return OctBasis(vecs)


# -- constraint Jacobians ------------------------------------------------------


def _ambient(n: int, variant: str) -> list[int]:
    if variant == "V":
        return list(range(1, 1 << n))
    h = 1 << (n - 1)
    return [i for i in range(1, 1 << n) if i != h]


def constraint_gradients(p: FramePair, variant: str) -> list[list[Fraction]]:
    """Gradients of the defining equations at p, in ambient (a, b) coordinates."""
    a, b = p.a, p.b
    zero = [Fraction(0)] * a.dim
    grads = [
        [2 * x for x in a.coeffs] + zero,  # |a|^2 - 1
        zero + [2 * x for x in b.coeffs],  # |b|^2 - 1
        list(b.coeffs) + list(a.coeffs),  # <a, b>
    ]
    if variant == "W":
        # <a~, b> = -<a, b~>
        grads.append([-x for x in tilde(b).coeffs] + list(tilde(a).coeffs))
    idx = _ambient(p.level, variant)
    cols = idx + [a.dim + i for i in idx]
    return [[g[c] for c in cols] for g in grads]


_MEMBERSHIP = {"V": in_V, "V_doubly": in_V_doubly, "W": in_W}


def constraint_jacobian_rank(p: FramePair, variant: str) -> int:
    if variant not in _MEMBERSHIP:
        raise ValueError(f"unknown variant {variant!r}; expected V, V_doubly or W")
    if not _MEMBERSHIP[variant](p):
        raise ValueError(f"point is not a member of {variant}")
    return rank(constraint_gradients(p, variant))


def ambient_dim(n: int, variant: str) -> int:
    return 2 * len(_ambient(n, variant))
