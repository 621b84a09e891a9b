"""The point scheme E = V(phi) in P^2, the map sigma and the chord-tangent group law.

Third intersections are exact: for a line s*p + t*q the cubic phi(s*p + t*q)
is a binary form whose known roots can be divided out by reading off two
polarized coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InternalConsistencyError, NotOnCurve
from .exactfield import DEFAULT_CONDUCTOR, CycNum, format_cycnum, parse_cycnum
from .params import SklyaninParams, as_params


def _simp(x):
    if isinstance(x, CycNum):
        return x.to_fraction() if x.is_rational() else x
    return Fraction(x) if isinstance(x, int) else x


def _fmt(x) -> str:
    return format_cycnum(x) if isinstance(x, CycNum) else str(x)


class ProjPoint:
    """A point of P^2 scaled so its last nonzero coordinate is 1."""

    __slots__ = ("v",)

    def __init__(self, v1, v2, v3):
        v = [_simp(x) for x in (v1, v2, v3)]
        last = next((x for x in reversed(v) if x), None)
        if last is None:
            raise ValueError("the zero vector is not a projective point")
        if last != 1:
            inv = 1 / last
            v = [_simp(x * inv) for x in v]
        self.v = tuple(v)

    @classmethod
    def parse(cls, text: str, m: int = DEFAULT_CONDUCTOR) -> "ProjPoint":
        body = text.strip().lstrip("[").rstrip("]")
        parts = body.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected [v1:v2:v3], got {text!r}")
        return cls(*(parse_cycnum(p, m) for p in parts))

    def __iter__(self):
        return iter(self.v)

    def __getitem__(self, i):
        return self.v[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.v == other.v

    def __hash__(self):
        return hash(self.v)

    def __str__(self):
        return "[" + ":".join(_fmt(x) for x in self.v) + "]"

    __repr__ = __str__


ORIGIN = ProjPoint(1, -1, 0)


def _cross(u, w):
    return (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])


def _dot(u, w):
    return u[0] * w[0] + u[1] * w[1] + u[2] * w[2]


def _proportional(u, w) -> bool:
    return not any(_cross(u, w))


@dataclass(frozen=True)
class CurveData:
    params: SklyaninParams

    def __post_init__(self):
        if self.phi(ORIGIN) or self.phi(self.translation_point):
            raise InternalConsistencyError("origin or [a:b:c] not on E")

    @cached_property
    def _coeffs(self):
        a, b, c = self.params.triple
        return a * b * c, a ** 3 + b ** 3 + c ** 3

    @property
    def origin(self) -> ProjPoint:
        return ORIGIN

    @cached_property
    def translation_point(self) -> ProjPoint:
        return ProjPoint(*self.params.triple)

    def phi(self, v) -> object:
        """abc(v1^3 + v2^3 + v3^3) - (a^3 + b^3 + c^3) v1 v2 v3."""
        k, s = self._coeffs
        v1, v2, v3 = v
        return k * (v1 ** 3 + v2 ** 3 + v3 ** 3) - s * v1 * v2 * v3

    def grad(self, v) -> tuple:
        k, s = self._coeffs
        v1, v2, v3 = v
        return (3 * k * v1 * v1 - s * v2 * v3, 3 * k * v2 * v2 - s * v1 * v3, 3 * k * v3 * v3 - s * v1 * v2)

    def on_curve(self, p) -> bool:
        return not self.phi(p)

    def require(self, p: ProjPoint) -> None:
        if not self.on_curve(p):
            raise NotOnCurve(f"{p} is not on E for params {self.params}")

    # -- group law ----------------------------------------------------
    def third_point(self, p: ProjPoint, q: ProjPoint) -> ProjPoint:
        """Third intersection of E with the line pq (tangent line if p = q)."""
        if p == q:
            gp = self.grad(p.v)
            if not any(gp):
                raise InternalConsistencyError(f"singular point {p} on E")
            for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                d = _cross(gp, e)
                if any(d) and not _proportional(d, p.v):
                    break
            else:
                raise InternalConsistencyError(f"no tangent direction at {p}")
            # phi(s p + t d) = C s t^2 + D t^3
            C = _dot(self.grad(d), p.v)
            D = self.phi(d)
            r = tuple(D * x - C * y for x, y in zip(p.v, d))
            if not any(r):
                raise InternalConsistencyError(f"tangent line at {p} lies on E")
            return ProjPoint(*r)
        # phi(s p + t q) = B s^2 t + C s t^2
        B = _dot(self.grad(p.v), q.v)
        C = _dot(self.grad(q.v), p.v)
        r = tuple(C * x - B * y for x, y in zip(p.v, q.v))
        if not any(r):
            raise InternalConsistencyError(f"line through {p} and {q} lies on E")
        return ProjPoint(*r)

    def add(self, p: ProjPoint, q: ProjPoint) -> ProjPoint:
        return self.third_point(ORIGIN, self.third_point(p, q))

    def negate(self, p: ProjPoint) -> ProjPoint:
        # origin is a flex, so -p is the third point on the line through p and O
        return self.third_point(p, ORIGIN)

    def multiple(self, k: int, p: ProjPoint) -> ProjPoint:
        if k < 0:
            return self.multiple(-k, self.negate(p))
        result = ORIGIN
        base = p
        while k:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return result

    def sigma(self, p: ProjPoint) -> ProjPoint:
        return sigma_apply(self, p)


def curve_data(params) -> CurveData:
    return CurveData(as_params(params))


def sigma_apply(cd: CurveData, p: ProjPoint) -> ProjPoint:
    """sigma via its quadric formula, falling back to translation by [a:b:c] at base points."""
    cd.require(p)
    a, b, c = cd.params.triple
    v1, v2, v3 = p.v
    img = (a * c * v2 * v2 - b * b * v1 * v3,
           b * c * v1 * v1 - a * a * v2 * v3,
           a * b * v3 * v3 - c * c * v1 * v2)
    if not any(img):
        return cd.add(p, cd.translation_point)
    return ProjPoint(*img)


def group_add(cd: CurveData, p: ProjPoint, q: ProjPoint) -> ProjPoint:
    cd.require(p)
    cd.require(q)
    return cd.add(p, q)


def sigma_order(params, cap: int = 64) -> int | None:
    """Order of sigma, or None when it exceeds ``cap``.

    Computed as the order of [a:b:c] under the group law and independently by
    iterating sigma on the origin; disagreement raises.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    cd = curve_data(params)
    P = cd.translation_point
    by_law = None
    cur = ORIGIN
    for k in range(1, cap + 1):
        cur = cd.add(cur, P)
        if cur == ORIGIN:
            by_law = k
            break
    by_sigma = None
    cur = ORIGIN
    for k in range(1, cap + 1):
        cur = sigma_apply(cd, cur)
        if cur == ORIGIN:
            by_sigma = k
            break
    if by_law != by_sigma:
        raise InternalConsistencyError(f"sigma order mismatch: group law {by_law}, quadric map {by_sigma}")
    return by_law


# -- sample points ------------------------------------------------------

def flex_points(m: int = DEFAULT_CONDUCTOR) -> list[ProjPoint]:
    """The nine points with a zero coordinate: the 3-torsion of E for every valid triple."""
    zeta = CycNum.zeta(m, 1, order=3) if m % 3 == 0 else None
    if zeta is None:
        raise ValueError("conductor must be divisible by 3")
    out = []
    for k in range(3):
        w = zeta ** k
        out += [ProjPoint(1, -w, 0), ProjPoint(0, 1, -w), ProjPoint(-w, 0, 1)]
    return out


def rational_points(cd: CurveData, bound: int = 6) -> list[ProjPoint]:
    """Points of E with v3 = 1 and small integer v1 plus the solutions v2 in Q found by root search."""
    if not cd.params.is_rational():
        return []
    from sympy import Poly, Rational, Symbol

    t = Symbol("t")
    k, s = cd._coeffs
    out = set()
    for v1 in range(-bound, bound + 1):
        poly = Poly(k * (Rational(v1) ** 3 + t ** 3 + 1) - s * v1 * t, t, domain="QQ")
        for r in poly.ground_roots():
            out.add(ProjPoint(Fraction(v1), Fraction(int(r.p), int(r.q)), 1))
    return sorted(out, key=str)


def sample_points(cd: CurveData, count: int, rng: random.Random | None = None,
                  m: int = DEFAULT_CONDUCTOR) -> list[ProjPoint]:
    """Points of E built as random integer combinations of known points."""
    rng = rng or random.Random(0)
    gens = flex_points(m) + [cd.translation_point] + rational_points(cd, 4)
    out = []
    for _ in range(count):
        p = ORIGIN
        for gpt in rng.sample(gens, min(3, len(gens))):
            p = cd.add(p, cd.multiple(rng.randint(-3, 3), gpt))
        out.append(p)
    return out


def parse_points(items: Iterable[str], m: int = DEFAULT_CONDUCTOR) -> list[ProjPoint]:
    return [ProjPoint.parse(s, m) for s in items]
