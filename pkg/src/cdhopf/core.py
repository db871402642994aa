"""Exact Cayley-Dickson arithmetic.

Elements of A_n are dense vectors of 2**n rationals.  The product is the
doubling rule

    (a, b)(x, y) = (a x - conj(y) b,  y a + b conj(x))

applied recursively down to the reals.  That recursion is the only definition
of multiplication; :class:`BasisTable` is a cached sign table derived from it
and checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "LevelError",
    "Element",
    "to_scalar",
    "scalar_str",
    "parse_scalar",
    "zero",
    "one",
    "basis",
    "double",
    "split",
    "embed",
    "mul",
    "conj",
    "trace",
    "inner",
    "norm2",
    "tilde",
    "hat",
    "associator",
    "e_tilde",
    "BasisTable",
    "build_table",
    "mul_via_table",
    "MAX_TABLE_LEVEL",
]

MAX_TABLE_LEVEL = 10


class LevelError(ValueError):
    """Operands live in different algebras, or the level is unsupported."""


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    raise TypeError(f"exact scalar expected, got {type(x).__name__}")


def scalar_str(x: Fraction) -> str:
    return str(x)


def parse_scalar(s: str) -> Fraction:
    s = s.strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


@dataclass(frozen=True)
class Element:
    """A point of A_level with exact rational coordinates."""

    level: int
    coeffs: tuple = field(repr=False)

    def __post_init__(self):
        if self.level < 0:
            raise LevelError(f"negative level {self.level}")
        coeffs = tuple(to_scalar(c) for c in self.coeffs)
        if len(coeffs) != 1 << self.level:
            raise LevelError(
                f"level {self.level} needs {1 << self.level} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self) -> int:
        return 1 << self.level

    @cached_property
    def _scaled(self):
        # integer numerators over one common denominator; feeds the fast product
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        nums = np.empty(self.dim, dtype=object)
        for i, c in enumerate(self.coeffs):
            nums[i] = c.numerator * (den // c.denominator)
        return nums, den

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _check_levels(self, other)
        return Element(self.level, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _check_levels(self, other)
        return Element(self.level, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.level, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def scale(self, r) -> "Element":
        r = to_scalar(r)
        return Element(self.level, tuple(r * x for x in self.coeffs))

    def conj(self) -> "Element":
        return conj(self)

    def tilde(self) -> "Element":
        return tilde(self)

    def hat(self) -> "Element":
        return hat(self)

    def norm2(self) -> Fraction:
        return norm2(self)

    def __repr__(self):
        terms = [f"{c}*e{i}" for i, c in enumerate(self.coeffs) if c]
        return f"Element(level={self.level}, {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": [scalar_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Element":
        if not isinstance(obj, dict) or "level" not in obj or "coeffs" not in obj:
            raise ValueError("element must be an object with 'level' and 'coeffs'")
        level = obj["level"]
        if not isinstance(level, int) or isinstance(level, bool):
            raise ValueError("element level must be an integer")
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, list) or not all(isinstance(c, str) for c in coeffs):
            raise ValueError("element coeffs must be a list of 'p/q' strings")
        return cls(level, tuple(parse_scalar(c) for c in coeffs))

    def to_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])


def _check_levels(*xs: Element):
    levels = {x.level for x in xs}
    if len(levels) != 1:
        raise LevelError(f"mixed levels {sorted(levels)}; use embed() explicitly")


def zero(n: int) -> Element:
    return Element(n, (0,) * (1 << n))


def one(n: int) -> Element:
    return basis(n, 0)


def basis(n: int, i: int) -> Element:
    dim = 1 << n
    if not 0 <= i < dim:
        raise IndexError(f"basis index {i} out of range for level {n}")
    c = [0] * dim
    c[i] = 1
    return Element(n, tuple(c))


def e_tilde(n: int) -> Element:
    """The unit (0, e0) of A_n, n >= 1."""
    if n < 1:
        raise LevelError("e_tilde needs level >= 1")
    return basis(n, 1 << (n - 1))


def double(a: Element, b: Element) -> Element:
    _check_levels(a, b)
    return Element(a.level + 1, a.coeffs + b.coeffs)


def split(x: Element) -> tuple[Element, Element]:
    if x.level < 1:
        raise LevelError("cannot split a level-0 element")
    h = x.dim // 2
    return Element(x.level - 1, x.coeffs[:h]), Element(x.level - 1, x.coeffs[h:])


def embed(x: Element, m: int) -> Element:
    """Pad x into A_m, m >= level, as (x, 0, ..., 0)."""
    if m < x.level:
        raise LevelError(f"cannot embed level {x.level} into level {m}")
    return Element(m, x.coeffs + (Fraction(0),) * ((1 << m) - x.dim))


# -- the recursive product -------------------------------------------------


def _conj_rows(X: np.ndarray) -> np.ndarray:
    out = -X
    out[:, 0] = X[:, 0]
    return out


def _cd_mul_rows(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise doubling product of two (batch, 2**k) arrays.

    The four half-size products of one doubling step are stacked into a single
    batch so the recursion depth is k rather than 4**k calls.
    """
    N = X.shape[1]
    if N == 1:
        return X * Y
    h = N // 2
    B = X.shape[0]
    a, b = X[:, :h], X[:, h:]
    x, y = Y[:, :h], Y[:, h:]
    L = np.concatenate([a, _conj_rows(y), y, b])
    R = np.concatenate([x, b, a, _conj_rows(x)])
    P = _cd_mul_rows(L, R)
    ax, yb, ya, bx = P[:B], P[B : 2 * B], P[2 * B : 3 * B], P[3 * B :]
    return np.concatenate([ax - yb, ya + bx], axis=1)


def cd_mul_arrays(X, Y) -> np.ndarray:
    """Doubling product on raw arrays (any dtype); 1-D or batched 2-D."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise LevelError(f"shape mismatch {X.shape} vs {Y.shape}")
    if X.ndim == 1:
        return cd_mul_arrays(X[None, :], Y[None, :])[0]
    if X.dtype == object and X.size:
        # every output entry is a sum of dim products; use int64 when that cannot overflow
        mx = max(abs(int(v)) for v in X.flat)
        my = max(abs(int(v)) for v in Y.flat)
        if X.shape[1] * mx * my < 1 << 62:
            P = _cd_mul_rows(X.astype(np.int64), Y.astype(np.int64))
            return P.astype(object)
    return _cd_mul_rows(X, Y)


def _from_scaled(level: int, nums, den: int) -> Element:
    return Element(level, tuple(Fraction(int(v), den) for v in nums))


def mul(x: Element, y: Element) -> Element:
    _check_levels(x, y)
    xn, xd = x._scaled
    yn, yd = y._scaled
    return _from_scaled(x.level, cd_mul_arrays(xn, yn), xd * yd)


def mul_many(xs: Sequence[Element], ys: Sequence[Element]) -> list[Element]:
    """Batched mul; same result as [mul(x, y) for ...]."""
    if len(xs) != len(ys):
        raise ValueError("batch length mismatch")
    if not xs:
        return []
    _check_levels(*xs, *ys)
    X = np.stack([x._scaled[0] for x in xs])
    Y = np.stack([y._scaled[0] for y in ys])
    P = cd_mul_arrays(X, Y)
    return [
        _from_scaled(x.level, row, x._scaled[1] * y._scaled[1])
        for row, x, y in zip(P, xs, ys)
    ]


def products_match(xs: Sequence[Element], ys: Sequence[Element], targets: Sequence[Element], factors) -> list[bool]:
    """[xs[k] * ys[k] == factors[k] * targets[k]], batched and exact, without building products."""
    if not (len(xs) == len(ys) == len(targets) == len(factors)):
        raise ValueError("batch length mismatch")
    if not xs:
        return []
    _check_levels(*xs, *ys, *targets)
    X = np.stack([x._scaled[0] for x in xs])
    Y = np.stack([y._scaled[0] for y in ys])
    P = cd_mul_arrays(X, Y)
    out = []
    for row, x, y, t, f in zip(P, xs, ys, targets, factors):
        f = to_scalar(f)
        tn, td = t._scaled
        pd = x._scaled[1] * y._scaled[1]
        out.append(bool(np.array_equal(row * (td * f.denominator), tn * (pd * f.numerator))))
    return out


def conj(x: Element) -> Element:
    c = x.coeffs
    return Element(x.level, (c[0],) + tuple(-v for v in c[1:]))


def trace(x: Element) -> Fraction:
    return 2 * x.coeffs[0]


def inner(a: Element, b: Element) -> Fraction:
    _check_levels(a, b)
    an, ad = a._scaled
    bn, bd = b._scaled
    return Fraction(int(np.dot(an, bn)), ad * bd)


def norm2(x: Element) -> Fraction:
    return inner(x, x)


def tilde(x: Element) -> Element:
    """(a, b) -> (-b, a); equals x * e_tilde."""
    if x.level < 1:
        raise LevelError("tilde needs level >= 1")
    h = x.dim // 2
    return Element(x.level, tuple(-v for v in x.coeffs[h:]) + x.coeffs[:h])


def hat(x: Element) -> Element:
    """(a, b) -> (b, a)."""
    if x.level < 1:
        raise LevelError("hat needs level >= 1")
    h = x.dim // 2
    return Element(x.level, x.coeffs[h:] + x.coeffs[:h])


def associator(a: Element, b: Element, c: Element) -> Element:
    _check_levels(a, b, c)
    return mul(mul(a, b), c) - mul(a, mul(b, c))


# -- basis sign table --------------------------------------------------------


@dataclass(frozen=True)
class BasisTable:
    """e_i * e_j = sign[i, j] * e_{index[i, j]} at a fixed level."""

    level: int
    index: np.ndarray = field(repr=False)
    sign: np.ndarray = field(repr=False)

    def entry(self, i: int, j: int) -> tuple[int, int]:
        return int(self.index[i, j]), int(self.sign[i, j])

    def left_matrices(self) -> np.ndarray:
        """M[i] is the matrix of left multiplication by e_i (float)."""
        d = 1 << self.level
        M = np.zeros((d, d, d))
        j = np.arange(d)
        for i in range(d):
            M[i, self.index[i], j] = self.sign[i]
        return M

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "index": self.index.tolist(),
            "sign": self.sign.tolist(),
        }


def _table_step(index: np.ndarray, sign: np.ndarray):
    # basis of A_{n+1}: e_i = (e_i, 0) for i < h, e_{h+i} = (0, e_i)
    h = index.shape[0]
    cs = np.ones(h, dtype=np.int64)
    cs[1:] = -1  # conj(e_i) = cs[i] e_i
    idx = np.empty((2 * h, 2 * h), dtype=np.int64)
    sg = np.empty((2 * h, 2 * h), dtype=np.int64)
    # (a,0)(x,0) = (ax, 0)
    idx[:h, :h] = index
    sg[:h, :h] = sign
    # (a,0)(0,y) = (0, y a)
    idx[:h, h:] = index.T + h
    sg[:h, h:] = sign.T
    # (0,b)(x,0) = (0, b conj(x))
    idx[h:, :h] = index + h
    sg[h:, :h] = sign * cs[None, :]
    # (0,b)(0,y) = (-conj(y) b, 0)
    idx[h:, h:] = index.T
    sg[h:, h:] = -sign.T * cs[None, :]
    return idx, sg


def _verify_table_rows(n: int, index: np.ndarray, sign: np.ndarray, rows: Iterable[int]):
    d = 1 << n
    eye = np.eye(d, dtype=np.int64)
    for i in rows:
        P = _cd_mul_rows(np.repeat(eye[i : i + 1], d, axis=0), eye)
        expect = np.zeros((d, d), dtype=np.int64)
        expect[np.arange(d), index[i]] = sign[i]
        if not np.array_equal(P, expect):
            bad = int(np.argmax(np.any(P != expect, axis=1)))
            raise AssertionError(
                f"level {n}: e_{i} * e_{bad} is not {sign[i, bad]:+d} e_{index[i, bad]}"
            )


_TABLES: dict[int, BasisTable] = {}


def build_table(n: int, *, verify_up_to: int = 6, max_level: int = MAX_TABLE_LEVEL) -> BasisTable:
    """Sign table for A_n, checked against the recursive product.

    Levels up to ``verify_up_to`` are checked on every basis pair; above it the
    table is the doubling recursion applied to an already checked table.
    """
    if not 0 <= n <= max_level:
        raise LevelError(f"table level must be in [0, {max_level}], got {n}")
    if n in _TABLES:
        return _TABLES[n]
    if n == 0:
        index = np.zeros((1, 1), dtype=np.int64)
        sign = np.ones((1, 1), dtype=np.int64)
    else:
        prev = build_table(n - 1, verify_up_to=verify_up_to, max_level=max_level)
        index, sign = _table_step(prev.index, prev.sign)
    if n <= verify_up_to:
        _verify_table_rows(n, index, sign, range(1 << n))
    index.setflags(write=False)
    sign.setflags(write=False)
    table = BasisTable(n, index, sign)
    _TABLES[n] = table
    return table


def mul_via_table(t: BasisTable, x: Element, y: Element) -> Element:
    _check_levels(x, y)
    if x.level != t.level:
        raise LevelError(f"table is for level {t.level}, operands are level {x.level}")
    xn, xd = x._scaled
    yn, yd = y._scaled
    bound = max((abs(int(v)) for v in xn), default=0) * max((abs(int(v)) for v in yn), default=0)
    dtype = np.int64 if x.dim * bound < 2**62 else object
    terms = np.multiply.outer(xn.astype(dtype), yn.astype(dtype)) * t.sign.astype(dtype)
    out = np.zeros(x.dim, dtype=dtype)
    np.add.at(out, t.index, terms)
    return _from_scaled(x.level, out, xd * yd)
