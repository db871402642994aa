"""Circle, torus and 3-sphere actions on frame pairs and on H_eps-perp."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Element, double, e_tilde, mul, norm2, one, split, tilde, to_scalar
from .frames import FramePair, epsilon, in_H_eps_perp, in_V, oct_basis
from .linalg import rank, solve
from .report import Report


@dataclass(frozen=True)
class CircleParam:
    r: Fraction
    s: Fraction

    def __post_init__(self):
        r, s = to_scalar(self.r), to_scalar(self.s)
        if r * r + s * s != 1:
            raise ValueError(f"circle parameter off the unit circle: ({r}, {s})")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    def __mul__(self, other: "CircleParam") -> "CircleParam":
        # complex multiplication (r + i s)(q + i t)
        return CircleParam(self.r * other.r - self.s * other.s, self.r * other.s + self.s * other.r)

    @property
    def is_identity(self) -> bool:
        return self.r == 1 and self.s == 0

    def to_json(self):
        return [str(self.r), str(self.s)]


IDENTITY_CIRCLE = CircleParam(Fraction(1), Fraction(0))


@dataclass(frozen=True)
class TorusParam:
    first: CircleParam  # (r, s) acting on a
    second: CircleParam  # (p, q) acting on b

    @property
    def is_identity(self) -> bool:
        return self.first.is_identity and self.second.is_identity

    def to_json(self):
        return {"first": self.first.to_json(), "second": self.second.to_json()}


@dataclass(frozen=True)
class SphereParam:
    """r e0 + s eps~ + q eps + p e0~ on the unit sphere of H_eps."""

    r: Fraction
    s: Fraction
    q: Fraction
    p: Fraction

    def __post_init__(self):
        vals = [to_scalar(v) for v in (self.r, self.s, self.q, self.p)]
        if sum(v * v for v in vals) != 1:
            raise ValueError("sphere parameter off the unit 3-sphere")
        for name, v in zip("rsqp", vals):
            object.__setattr__(self, name, v)

    @property
    def is_identity(self) -> bool:
        return (self.r, self.s, self.q, self.p) == (1, 0, 0, 0)

    def element(self, n: int) -> Element:
        """The element of H_eps in A_{n+1}."""
        eps = epsilon(n)
        return (
            one(n + 1).scale(self.r)
            + tilde(eps).scale(self.s)
            + eps.scale(self.q)
            + e_tilde(n + 1).scale(self.p)
        )

    def to_json(self):
        return [str(v) for v in (self.r, self.s, self.q, self.p)]


def s1_act(g: CircleParam, p: FramePair, check: bool = False) -> FramePair:
    """(a, b) -> (r a - s b, s a + r b), i.e. r alpha + s alpha~."""
    if check and not in_V(p):
        raise ValueError("s1_act: pair is not in V")
    a, b = p.a, p.b
    return FramePair(a.scale(g.r) - b.scale(g.s), a.scale(g.s) + b.scale(g.r))


def t2_act(g: TorusParam, p: FramePair) -> FramePair:
    """(a, b) -> (r a + s a~, p b + q b~)."""
    a, b = p.a, p.b
    (r, s), (pp, q) = (g.first.r, g.first.s), (g.second.r, g.second.s)
    return FramePair(a.scale(r) + tilde(a).scale(s), b.scale(pp) + tilde(b).scale(q))


def _require_perp(alpha: Element):
    if not in_H_eps_perp(alpha):
        raise ValueError("alpha must lie in H_eps-perp (doubly pure halves)")


def s3_act(alpha: Element, g: SphereParam) -> Element:
    """alpha -> alpha u = r alpha + s alpha eps~ + q alpha eps + p alpha~."""
    _require_perp(alpha)
    n = alpha.level - 1
    eps = epsilon(n)
    return (
        alpha.scale(g.r)
        + mul(alpha, tilde(eps)).scale(g.s)
        + mul(alpha, eps).scale(g.q)
        + tilde(alpha).scale(g.p)
    )


def s3_act_coords(alpha: Element, g: SphereParam) -> Element:
    """Coordinate form (ra - s b~ + q a~ - p b, rb - s a~ - q b~ + p a)."""
    _require_perp(alpha)
    a, b = split(alpha)
    at, bt = tilde(a), tilde(b)
    r, s, q, p = g.r, g.s, g.q, g.p
    return double(
        a.scale(r) - bt.scale(s) + at.scale(q) - b.scale(p),
        b.scale(r) - at.scale(s) - bt.scale(q) + a.scale(p),
    )


def h_eps_basis(n: int) -> tuple[Element, Element, Element, Element]:
    eps = epsilon(n)
    return one(n + 1), tilde(eps), eps, e_tilde(n + 1)


def dot_action(u: Element, alpha: Element) -> Element:
    """u . alpha for u in H_eps, expanded on the basis {e0, eps~, eps, e0~}."""
    _require_perp(alpha)
    n = alpha.level - 1
    e0, eps_t, eps, e0_t = h_eps_basis(n)
    r, s, q, p = (u.coeffs[i] for i in (0, eps_t.support()[0], eps.support()[0], e0_t.support()[0]))
    if u != e0.scale(r) + eps_t.scale(s) + eps.scale(q) + e0_t.scale(p):
        raise ValueError("u is not in H_eps")
    return alpha.scale(r) + mul(alpha, eps_t).scale(s) + mul(alpha, eps).scale(q) + tilde(alpha).scale(p)


_H_LABELS = ("e0", "eps~", "eps", "e0~")


def module_check(alpha: Element, pairs=None) -> Report:
    """u.(v.alpha) == (uv).alpha over basis pairs of H_eps (all 16 by default)."""
    _require_perp(alpha)
    n = alpha.level - 1
    hb = h_eps_basis(n)
    if pairs is None:
        pairs = [(i, j) for i in range(4) for j in range(4)]
    rep = Report("module", "H_eps-perp is a left H_eps-module")
    for i, j in pairs:
        u, v = hb[i], hb[j]
        lhs = dot_action(u, dot_action(v, alpha))
        rhs = dot_action(mul(u, v), alpha)
        rep.add(
            f"{_H_LABELS[i]} . ({_H_LABELS[j]} . alpha)",
            lhs == rhs,
            counterexample=None if lhs == rhs else {"alpha": alpha, "lhs": lhs, "rhs": rhs},
        )
    return rep


def _oct_span(alpha: Element) -> list[Element]:
    return list(oct_basis(alpha))


def orbit_equiv_O(alpha: Element, beta: Element) -> bool:
    """Same S^3 orbit: equal norms and span(O_alpha) == span(O_beta)."""
    _require_perp(alpha)
    _require_perp(beta)
    if norm2(alpha) != norm2(beta):
        return False
    oa, ob = _oct_span(alpha), _oct_span(beta)
    return rank(oa) == 8 and rank(ob) == 8 and rank(oa + ob) == 8


def s3_torus_match(alpha: Element, g: SphereParam) -> TorusParam | None:
    """Torus parameters reproducing the S^3 image of alpha, if any exist.

    The first half of the image must be u a + v a~ and the second t b + m b~;
    this is an exact linear solve followed by a unit-circle check.
    """
    a, b = split(alpha)
    x, y = split(s3_act(alpha, g))
    uv = solve([a, tilde(a)], x)
    tm = solve([b, tilde(b)], y)
    if uv is None or tm is None:
        return None
    try:
        return TorusParam(CircleParam(*uv), CircleParam(*tm))
    except ValueError:
        return None


def s3_cap_T_check(alpha: Element, params: list[SphereParam]) -> Report:
    """The S^3 and torus actions agree exactly on the circle {s = p = 0}."""
    rep = Report("s3-cap-torus", "S(H_eps) meets the torus in the circle (r, -q)")
    matches = []
    for g in params:
        tp = s3_torus_match(alpha, g)
        on_circle = g.s == 0 and g.p == 0
        expected = TorusParam(CircleParam(g.r, g.q), CircleParam(g.r, -g.q)) if on_circle else None
        ok = tp == expected
        rep.add(
            f"g = {g.to_json()}",
            ok,
            counterexample=None if ok else {"alpha": alpha, "g": g, "found": tp},
        )
        if tp is not None:
            matches.append({"g": g, "torus": tp})
    rep.data["matches"] = matches
    return rep
