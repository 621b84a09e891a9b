"""Parameter triples (a, b, c) and the excluded set."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ForbiddenParameters
from .exactfield import DEFAULT_CONDUCTOR, CycNum, parse_cycnum

Coef = Union[Fraction, CycNum]


def _simplify(x) -> Coef:
    if isinstance(x, CycNum):
        return x.to_fraction() if x.is_rational() else x
    return Fraction(x)


@dataclass(frozen=True)
class SklyaninParams:
    """The triple (a, b, c) exactly as given.

    Rational entries are kept as ``Fraction`` so that rewriting tables stay
    over Q.  Equality is projective: proportional triples compare equal.
    """

    a: Coef
    b: Coef
    c: Coef

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, _simplify(getattr(self, name)))
        why = forbidden_reason(self.a, self.b, self.c)
        if why:
            raise ForbiddenParameters(why, (str(self.a), str(self.b), str(self.c)))

    @classmethod
    def parse(cls, text: str, m: int = DEFAULT_CONDUCTOR) -> "SklyaninParams":
        """Parse ``"a,b,c"`` where each entry is a rational or a polynomial in z = zeta_m."""
        parts = [p for p in text.replace(";", ",").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated parameters, got {text!r}")
        return cls(*(parse_cycnum(p, m) for p in parts))

    @property
    def triple(self) -> tuple[Coef, Coef, Coef]:
        return (self.a, self.b, self.c)

    def is_rational(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.triple)

    def normalized(self) -> tuple[Coef, Coef, Coef]:
        """Projective representative with last nonzero coordinate 1."""
        t = self.triple
        last = next(x for x in reversed(t) if x)
        return tuple(_simplify(x / last) for x in t)

    def __eq__(self, other):
        if not isinstance(other, SklyaninParams):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.triple) + ")"


def forbidden_reason(a, b, c) -> str | None:
    """Name the clause of the excluded set that (a, b, c) satisfies, or None."""
    zeros = sum(1 for x in (a, b, c) if not x)
    if zeros == 3:
        return "zero triple is not a projective point"
    if zeros == 2:
        return "coordinate point"
    a3, b3, c3 = a ** 3, b ** 3, c ** 3
    if a3 == b3 and b3 == c3:
        return "a^3 = b^3 = c^3"
    if zeros:
        return "abc = 0"
    if (3 * a * b * c) ** 3 == (a3 + b3 + c3) ** 3:
        return "(3abc)^3 = (a^3 + b^3 + c^3)^3"
    return None


def as_params(p) -> SklyaninParams:
    if isinstance(p, SklyaninParams):
        return p
    if isinstance(p, str):
        return SklyaninParams.parse(p)
    return SklyaninParams(*p)
