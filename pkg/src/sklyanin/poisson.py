"""The Poisson bracket on k[z1, z2, z3, g]/(F) given by the partials of F."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cpoly import CENTER_VARS, CPoly

Z_VARS = CENTER_VARS[:3]
_CYCLIC = (("z1", "z2", "z3"), ("z2", "z3", "z1"), ("z3", "z1", "z2"))


@dataclass(frozen=True)
class PoissonStructure:
    F: CPoly
    brackets: dict  # (zi, zj) -> dF/dzk for cyclic (i, j, k)

    def bracket_vars(self, u: str, v: str) -> CPoly:
        if u == v or "g" in (u, v):
            return CPoly(vars=self.F.vars)
        if (u, v) in self.brackets:
            return self.brackets[(u, v)]
        return -self.brackets[(v, u)]

    def bracket(self, p: CPoly, q: CPoly) -> CPoly:
        """{p, q} = sum_{u,v} dp/du dq/dv {u, v}, unreduced."""
        out = CPoly(vars=self.F.vars)
        for u in Z_VARS:
            pu = p.diff(u)
            if not pu:
                continue
            for v in Z_VARS:
                if u == v:
                    continue
                qv = q.diff(v)
                if qv:
                    out = out + pu * qv * self.bracket_vars(u, v)
        return out

    def reduce(self, p: CPoly) -> CPoly:
        if not self.F:
            return p
        return p.reduce_by_monic(self.F, "g")

    def to_json(self) -> dict:
        return {f"{{{u},{v}}}": self.brackets[(u, v)].to_json() for u, v, _ in _CYCLIC} | {
            "F": self.F.to_json(), "g_casimir": True}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def bracket_from_F(F: CPoly) -> PoissonStructure:
    return PoissonStructure(F, {(u, v): F.diff(w) for u, v, w in _CYCLIC})


def jacobi_residues(ps: PoissonStructure) -> list[CPoly]:
    """Cyclic Jacobi sums over the generator triples, reduced modulo F."""
    gens = [CPoly.var(v, ps.F.vars) for v in CENTER_VARS]
    out = []
    for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        a, b, c = gens[i], gens[j], gens[k]
        r = ps.bracket(ps.bracket(a, b), c) + ps.bracket(ps.bracket(b, c), a) + ps.bracket(ps.bracket(c, a), b)
        out.append(ps.reduce(r))
    return out


def leibniz_check(ps: PoissonStructure, p: CPoly, q: CPoly, r: CPoly) -> bool:
    lhs = ps.bracket(p * q, r)
    rhs = p * ps.bracket(q, r) + q * ps.bracket(p, r)
    return not ps.reduce(lhs - rhs)


def casimir_check(ps: PoissonStructure) -> bool:
    g = CPoly.var("g", ps.F.vars)
    return all(not ps.bracket(g, CPoly.var(v, ps.F.vars)) for v in CENTER_VARS)


def euler_residue(F: CPoly, n: int) -> CPoly:
    """sum z_i dF/dz_i + (3/n) g dF/dg - 3F; zero for weighted-homogeneous F of degree 3n."""
    out = F * (-3)
    for v in Z_VARS:
        out = out + CPoly.var(v, F.vars) * F.diff(v)
    return out + CPoly.var("g", F.vars) * F.diff("g") * Fraction(3, n)


def dilation_residue(F: CPoly, n: int, beta) -> CPoly:
    """F(beta^n z, beta^3 g) - beta^(3n) F."""
    scaled = F.scale_vars({"z1": beta ** n, "z2": beta ** n, "z3": beta ** n, "g": beta ** 3})
    return scaled - F * (beta ** (3 * n))


def brackets_homogeneous(ps: PoissonStructure, n: int) -> bool:
    w = (n, n, n, 3)
    return all(b.weighted_degrees(w) <= {2 * n} for b in ps.brackets.values())
