"""Seeded exact samplers.

Every sample draws from its own generator keyed on (seed, stream, index), so
a sample does not depend on which samples were drawn before it.  Unit vectors
come from rational Givens rotations built on Pythagorean triples, which keeps
norms exactly 1.
"""

from __future__ import annotations

import zlib
from fractions import Fraction

import numpy as np

from .core import Element, basis, double, tilde

_TRIPLE_GEN = [(m, k) for m in range(2, 9) for k in range(1, m) if (m - k) % 2 and np.gcd(m, k) == 1]


def rng_for(seed: int, stream: str, index: int = 0) -> np.random.Generator:
    key = zlib.crc32(stream.encode())
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, key, index])


def circle_point(rng) -> tuple[Fraction, Fraction]:
    """Random rational (c, s) with c^2 + s^2 == 1, never (+-1, 0)."""
    m, k = _TRIPLE_GEN[rng.integers(len(_TRIPLE_GEN))]
    a, b, c = m * m - k * k, 2 * m * k, m * m + k * k
    if rng.integers(2):
        a, b = b, a
    sa = -1 if rng.integers(2) else 1
    sb = -1 if rng.integers(2) else 1
    return Fraction(sa * a, c), Fraction(sb * b, c)


def sphere3_point(rng) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Random rational point on S^3 with every coordinate nonzero."""
    c1, s1 = circle_point(rng)
    c2, s2 = circle_point(rng)
    c3, s3 = circle_point(rng)
    # (c1, s1 c2, s1 s2 c3, s1 s2 s3) on S^3
    return c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3


def rational(rng, num: int = 9, den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def nonzero_rational(rng, num: int = 9, den: int = 4) -> Fraction:
    while True:
        r = rational(rng, num, den)
        if r:
            return r


# -- coordinate sets -------------------------------------------------------


def pure_indices(n: int) -> list[int]:
    return list(range(1, 1 << n))


def doubly_pure_indices(n: int) -> list[int]:
    h = 1 << (n - 1)
    return [i for i in range(1, 1 << n) if i != h]


def random_element(rng, n: int, indices=None, num: int = 9, den: int = 4) -> Element:
    dim = 1 << n
    idx = range(dim) if indices is None else indices
    c = [Fraction(0)] * dim
    for i in idx:
        c[i] = rational(rng, num, den)
    return Element(n, tuple(c))


def random_nonzero(rng, n: int, indices=None, **kw) -> Element:
    while True:
        x = random_element(rng, n, indices, **kw)
        if not x.is_zero():
            return x


def random_pure(rng, n: int, **kw) -> Element:
    return random_nonzero(rng, n, pure_indices(n), **kw)


def random_doubly_pure(rng, n: int, **kw) -> Element:
    return random_nonzero(rng, n, doubly_pure_indices(n), **kw)


# -- exact orthogonal maps ------------------------------------------------


def _givens(vecs: list[list[Fraction]], i: int, j: int, c: Fraction, s: Fraction):
    for v in vecs:
        vi, vj = v[i], v[j]
        v[i] = c * vi - s * vj
        v[j] = s * vi + c * vj


def rotate(rng, elements: list[Element], indices: list[int], steps: int = 6) -> list[Element]:
    """Apply one random rational rotation of the given coordinates to every element.

    With a single coordinate the only rotations are +-1.
    """
    n = elements[0].level
    if len(indices) < 2:
        sign = -1 if rng.integers(2) else 1
        return [e.scale(sign) for e in elements]
    vecs = [list(e.coeffs) for e in elements]
    for _ in range(steps):
        i, j = rng.choice(indices, size=2, replace=False)
        c, s = circle_point(rng)
        _givens(vecs, int(i), int(j), c, s)
    return [Element(n, tuple(v)) for v in vecs]


def rotate_unitary(rng, elements: list[Element], steps: int = 6) -> list[Element]:
    """A random rational orthogonal map that commutes with tilde.

    Coordinates k and k + h (h = half dimension) form one complex coordinate;
    the map mixes complex coordinates among the doubly pure ones by real
    rotations applied to both halves at once, and by phase rotations.
    """
    n = elements[0].level
    h = 1 << (n - 1)
    cplx = list(range(1, h))
    vecs = [list(e.coeffs) for e in elements]
    for _ in range(steps):
        c, s = circle_point(rng)
        if len(cplx) >= 2 and rng.integers(3):
            k, l = (int(v) for v in rng.choice(cplx, size=2, replace=False))
            _givens(vecs, k, l, c, s)
            _givens(vecs, k + h, l + h, c, s)
        else:
            k = int(rng.choice(cplx))
            # multiply z_k = x_k + i x_{k+h} by c + i s
            _givens(vecs, k, k + h, c, s)
    return [Element(n, tuple(v)) for v in vecs]


def unit_pure(rng, n: int, steps: int = 6) -> Element:
    idx = pure_indices(n)
    start = basis(n, int(rng.choice(idx)))
    return rotate(rng, [start], idx, steps)[0]


def unit_doubly_pure(rng, n: int, steps: int = 6) -> Element:
    idx = doubly_pure_indices(n)
    start = basis(n, int(rng.choice(idx)))
    return rotate(rng, [start], idx, steps)[0]


def frame_V(rng, n: int, steps: int = 8) -> tuple[Element, Element]:
    """Exact orthonormal pair of pure elements."""
    idx = pure_indices(n)
    i, j = (int(v) for v in rng.choice(idx, size=2, replace=False))
    a, b = rotate(rng, [basis(n, i), basis(n, j)], idx, steps)
    return a, b


def frame_V_doubly(rng, n: int, steps: int = 8) -> tuple[Element, Element]:
    idx = doubly_pure_indices(n)
    i, j = (int(v) for v in rng.choice(idx, size=2, replace=False))
    a, b = rotate(rng, [basis(n, i), basis(n, j)], idx, steps)
    return a, b


def frame_W(rng, n: int, steps: int = 8) -> tuple[Element, Element]:
    """Exact orthonormal doubly pure pair with tilde(a) orthogonal to b; n >= 3."""
    if n < 3:
        raise ValueError("W frames need level >= 3")
    h = 1 << (n - 1)
    k, l = (int(v) for v in rng.choice(range(1, h), size=2, replace=False))
    a, b = basis(n, k), basis(n, l)
    if rng.integers(2):
        b = basis(n, l + h)
    a, b = rotate_unitary(rng, [a, b], steps)
    return a, b


def complex_scale(x: Element, re, im) -> Element:
    """(re + i im) x under i x = tilde(x)."""
    return x.scale(re) + tilde(x).scale(im)


def halve_to_unit(a: Element, b: Element) -> Element:
    """double((a + a~)/2, (b + b~)/2); unit whenever |a| = |b| = 1."""
    return double(complex_scale(a, Fraction(1, 2), Fraction(1, 2)), complex_scale(b, Fraction(1, 2), Fraction(1, 2)))


def unit_alpha_W(rng, n: int, steps: int = 8) -> Element:
    """Unit element alpha = (a, b) of A_{n+1} with (a, b) W-type and |a|^2 = |b|^2 = 1/2."""
    a, b = frame_W(rng, n, steps)
    return halve_to_unit(a, b)


def random_H_eps_perp(rng, n: int, **kw) -> Element:
    """Random nonzero alpha in A_{n+1} with both halves doubly pure."""
    return double(random_element(rng, n, doubly_pure_indices(n), **kw), random_nonzero(rng, n, doubly_pure_indices(n), **kw))


def unit_H_eps_perp(rng, n: int, steps: int = 8) -> Element:
    """Exact unit alpha in A_{n+1} with doubly pure halves."""
    h = 1 << n
    idx = [i for i in doubly_pure_indices(n)] + [h + i for i in doubly_pure_indices(n)]
    start = basis(n + 1, int(rng.choice(idx)))
    return rotate(rng, [start], idx, steps)[0]

