"""Geometry of Y = V(F) in affine 4-space with coordinates (z1, z2, z3, g)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .center import CenterPresentation
from .cpoly import CENTER_VARS
from .errors import FalsificationError, NotOnY, StructureError
from .exactfield import CycNum, format_cycnum

Y_TAGS = ("Y1", "Y2", "Y3", "Y4")


def _simp(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    return Fraction(v) if isinstance(v, int) else v


def _fmt(v) -> str:
    return format_cycnum(v) if isinstance(v, CycNum) else str(v)


@dataclass(frozen=True)
class YPoint:
    z1: object
    z2: object
    z3: object
    g: object

    def __post_init__(self):
        for name in ("z1", "z2", "z3", "g"):
            object.__setattr__(self, name, _simp(getattr(self, name)))

    @classmethod
    def of(cls, coords: Sequence) -> "YPoint":
        if isinstance(coords, YPoint):
            return coords
        if len(coords) != 4:
            raise ValueError("a point of Y has four coordinates (z1, z2, z3, g)")
        return cls(*coords)

    @property
    def coords(self) -> tuple:
        return (self.z1, self.z2, self.z3, self.g)

    def is_origin(self) -> bool:
        return not any(self.coords)

    def rotate(self) -> "YPoint":
        """The Z3 action z1 -> z2 -> z3 -> z1 on coordinates."""
        return YPoint(self.z3, self.z1, self.z2, self.g)

    def dilate(self, beta, n: int) -> "YPoint":
        bn = beta ** n
        return YPoint(bn * self.z1, bn * self.z2, bn * self.z3, beta ** 3 * self.g)

    def __str__(self):
        return "(" + ", ".join(_fmt(v) for v in self.coords) + ")"


@dataclass(frozen=True)
class Stratum:
    tag: str
    core: str
    gamma: object = None

    def to_json(self) -> dict:
        return {"stratum": self.tag, "core": self.core,
                "gamma": _fmt(self.gamma) if self.gamma is not None else None}


def on_Y(cp: CenterPresentation, p) -> bool:
    return not cp.F.evaluate(YPoint.of(p).coords)


def _require(cp, p) -> YPoint:
    p = YPoint.of(p)
    if cp.F.evaluate(p.coords):
        raise NotOnY(f"F does not vanish at {p}")
    return p


def partials(cp: CenterPresentation, p) -> list:
    p = YPoint.of(p)
    return [cp.F.diff(v).evaluate(p.coords) for v in CENTER_VARS]


def singular_test(cp: CenterPresentation, p) -> bool:
    """All four partials of F vanish; cross-checked against the z-partials alone."""
    p = _require(cp, p)
    d = partials(cp, p)
    four = not any(d)
    three = not any(d[:3])
    if four != three:
        raise FalsificationError(f"z-partial and full singularity criteria disagree at {p}", p)
    return four


def _alpha(cp: CenterPresentation):
    if cp.n % 3:
        raise StructureError("the curves C_i exist only when 3 divides n")
    return cp.alpha


def curve_point(cp: CenterPresentation, i: int, g) -> YPoint:
    """The point of C_i over the given g: z_i = -g^(n/3)/alpha, other z zero."""
    alpha = _alpha(cp)
    zi = -(Fraction(g) if isinstance(g, int) else g) ** (cp.n // 3) / alpha
    z = [Fraction(0)] * 3
    z[i] = zi
    return YPoint(*z, g)


def curves_C(cp: CenterPresentation):
    """Three callables g -> point of C_i, i = 1, 2, 3."""
    _alpha(cp)
    return [lambda g, i=i: curve_point(cp, i, g) for i in range(3)]


def on_curve_C(cp: CenterPresentation, p) -> int | None:
    """Index (1-based) of the curve C_i containing p, or None."""
    if cp.n % 3:
        return None
    p = YPoint.of(p)
    s = cp.n // 3
    z = p.coords[:3]
    for i in range(3):
        if not z[(i + 1) % 3] and not z[(i + 2) % 3] and not (p.g ** s + cp.alpha * z[i]):
            return i + 1
    return None


def classify_stratum(cp: CenterPresentation, p) -> Stratum:
    p = _require(cp, p)
    if p.is_origin():
        return Stratum("Y4", "singleton")
    if not p.g:
        return Stratum("Y3", "Y_gamma minus singular points", Fraction(0))
    if cp.n % 3 == 0 and on_curve_C(cp, p):
        return Stratum("Y2", "singleton")
    return Stratum("Y1", "Y_gamma minus singular points", p.g)


def azumaya_test(cp: CenterPresentation, p) -> bool:
    return not singular_test(cp, p)


def slice_singulars(cp: CenterPresentation, gamma) -> set[YPoint]:
    """Singular points of the slice g = gamma."""
    gamma = _simp(gamma)
    if not gamma:
        return {YPoint(0, 0, 0, 0)}
    if cp.n % 3:
        return set()
    return {curve_point(cp, i, gamma) for i in range(3)}


def expected_irrep_profile(cp: CenterPresentation, p) -> list[int]:
    tag = classify_stratum(cp, p).tag
    n = cp.n
    if tag in ("Y1", "Y3"):
        return [n]
    if tag == "Y2":
        return [n // 3] * 3
    return [1]


@dataclass(frozen=True)
class ZeroSet:
    """Zero set of a discriminant ideal: empty, the origin, or the union of the curves C_i."""

    kind: str
    cp: CenterPresentation | None = None

    def contains(self, p) -> bool:
        p = YPoint.of(p)
        if self.kind == "empty":
            return False
        if self.kind == "origin":
            return p.is_origin()
        return p.is_origin() or on_curve_C(self.cp, p) is not None

    def __str__(self):
        return {"empty": "empty", "origin": "{0}", "curves": "C1 u C2 u C3"}[self.kind]


def discriminant_zero_set(cp: CenterPresentation, k: int) -> ZeroSet:
    n = cp.n
    if not 1 <= k <= n * n:
        raise ValueError(f"k must lie in [1, {n * n}], got {k}")
    if k == 1:
        return ZeroSet("empty")
    if n % 3 or k <= n * n // 3:
        return ZeroSet("origin")
    return ZeroSet("curves", cp)


# -- sampling ---------------------------------------------------------------

def _rand_q(rng: random.Random, lo: int = -5, hi: int = 5, nonzero: bool = True) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
        if v or not nonzero:
            return v


def sample_generic_points(cp: CenterPresentation, count: int, rng: random.Random | None = None) -> list[YPoint]:
    """Exact points of Y with g != 0, built by scaling so that the g-equation has a rational root."""
    rng = rng or random.Random(0)
    n = cp.n
    out = []
    if n % 3:
        Phi = cp.Phi
        a = next(a for a in range(n) if (3 * a + 1) % n == 0)
        e = (3 * a + 1) // n
        while len(out) < count:
            p = [_rand_q(rng, nonzero=False) for _ in range(3)]
            val = Phi.evaluate(p + [0])
            if not val:
                continue
            r = _rand_q(rng)
            t = -(val ** a) * r ** n
            g = val ** e * r ** 3
            out.append(YPoint(*(t * x for x in p), g))
        return out
    s = n // 3
    mu = cp.structure.mu
    alpha = cp.alpha
    if mu is None:
        raise StructureError("F does not have the expected cube-plus-product shape")
    while len(out) < count:
        z1, z2, r = _rand_q(rng), _rand_q(rng), _rand_q(rng)
        z3 = mu ** 2 * z1 ** 2 * z2 ** 2 * r ** 3
        c = mu * z1 * z2 * r
        ell = alpha * (z1 + z2 + z3)
        if c == ell:
            continue
        r2 = _rand_q(rng)
        t = (c - ell) ** (s - 1) * r2 ** s
        g = (c - ell) * r2
        out.append(YPoint(t * z1, t * z2, t * z3, g))
    return out


def sample_slice0_points(cp: CenterPresentation, count: int, rng: random.Random | None = None) -> list[YPoint]:
    """Nonzero points with g = 0 and their Z3 rotations."""
    rng = rng or random.Random(0)
    out = []
    base = []
    if cp.n % 3 == 0:
        base = [(Fraction(0), Fraction(1), Fraction(-1))]
    elif not cp.Phi.evaluate([1, -1, 0, 0]):
        base = [(Fraction(1), Fraction(-1), Fraction(0))]
    if not base:
        return out
    while len(out) < count:
        z = base[rng.randrange(len(base))]
        t = _rand_q(rng)
        p = YPoint(*(t * x for x in z), 0)
        for _ in range(rng.randrange(3)):
            p = p.rotate()
        out.append(p)
    return out


def sample_curve_points(cp: CenterPresentation, i: int, count: int, rng: random.Random | None = None) -> list[YPoint]:
    rng = rng or random.Random(0)
    return [curve_point(cp, i, _rand_q(rng, -9, 9)) for _ in range(count)]


def figure1_svg(cp: CenterPresentation, gammas: Iterable = (-2, -1, 0, 1, 2)) -> str:
    """Schematic of the slices Y_gamma and their singular points, as an SVG string."""
    gammas = [Fraction(x) for x in gammas]
    w, h = 120 * len(gammas) + 80, 320
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
             '<rect width="100%" height="100%" fill="white"/>',
             f'<text x="10" y="20" font-family="monospace" font-size="12">slices g = gamma of Y, n = {cp.n}</text>',
             f'<line x1="40" y1="{h - 40}" x2="{w - 20}" y2="{h - 40}" stroke="black"/>',
             f'<text x="{w - 30}" y="{h - 25}" font-family="monospace" font-size="12">g</text>']
    for k, gam in enumerate(gammas):
        x = 80 + 120 * k
        parts.append(f'<rect x="{x - 40}" y="40" width="80" height="{h - 100}" fill="none" stroke="#888"/>')
        parts.append(f'<text x="{x - 20}" y="{h - 20}" font-family="monospace" font-size="12">{gam}</text>')
        pts = sorted(slice_singulars(cp, gam), key=str)
        for j, p in enumerate(pts):
            y = 70 + 60 * j
            parts.append(f'<circle cx="{x}" cy="{y}" r="5" fill="crimson"/>')
            label = "0" if p.is_origin() else f"C{on_curve_C(cp, p)}"
            parts.append(f'<text x="{x + 8}" y="{y + 4}" font-family="monospace" font-size="11">{label}</text>')
        if not pts:
            parts.append(f'<text x="{x - 30}" y="{h / 2}" font-family="monospace" font-size="11">smooth</text>')
    parts.append("</svg>")
    return "\n".join(parts)
