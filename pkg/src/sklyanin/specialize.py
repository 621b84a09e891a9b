"""Specialization along a one-parameter deformation of (a, b, c).

The deformed algebra has parameters a + alpha*h, b + beta*h, c + gamma*h and
is computed over rational functions in h that are regular at h = 0.  A good
section lifts z_i and g; commutators of the lifts with the generators are
divisible by h^N, and dividing by h^N then setting h = 0 gives derivations of
S.  Their values on the center give the induced Poisson bracket, which is
compared with the bracket built from the partials of F.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .center import (CenterPresentation, _MonomialEvaluator, center_monomials, compute_center,
                     g_normalizer)
from .cpoly import CENTER_VARS, CPoly
from .curve import sigma_order
from .errors import (CapExceeded, FalsificationError, ForbiddenParameters, InternalConsistencyError,
                     StructureError)
from .exactfield import DEFAULT_CONDUCTOR, CycNum, HbarScalar, eval0
from .freealg import LETTERS, NCPoly, RewriteSystem, build_hbar_system, relations, scalar_str
from .linalg import solve
from .params import SklyaninParams, as_params, forbidden_reason
from .poisson import PoissonStructure, bracket_from_F

DEFAULT_DIRECTION = (0, 0, 1)
DEFAULT_MAX_ROUNDS = 8


def _simp(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    return Fraction(v) if isinstance(v, int) else v


def check_direction(params, direction: Sequence, sample_count: int = 5, order_cap: int | None = None) -> bool:
    """True iff some shift by d*direction (d = 1..sample_count) leaves the excluded set
    and has sigma order not dividing n."""
    params = as_params(params)
    direction = tuple(_simp(x) for x in direction)
    if not any(direction):
        return False
    n = sigma_order(params, 64)
    cap = order_cap or max(2 * (n or 1), 12)
    for d in range(1, sample_count + 1):
        shifted = [p + d * q for p, q in zip(params.triple, direction)]
        if forbidden_reason(*shifted):
            continue
        k = sigma_order(SklyaninParams(*shifted), cap)
        if k is None or (n is not None and n % k):
            return True
    return False


def _h(x, m=DEFAULT_CONDUCTOR) -> HbarScalar:
    return HbarScalar.coerce(x, m)


def _lift(p: NCPoly) -> NCPoly:
    return p.map_scalars(_h)


def _theta(p: NCPoly) -> NCPoly:
    return NCPoly({w: _simp(eval0(v)) for w, v in p.terms.items()})


@dataclass
class HbarAlgebra:
    params: SklyaninParams
    direction: tuple
    rs: RewriteSystem
    tilde: tuple  # (a~, b~, c~) as HbarScalar

    def g_tilde(self) -> NCPoly:
        a, b, c = self.tilde
        gf = NCPoly({"yyy": c * (c ** 3 - b ** 3), "yxz": b * (c ** 3 - a ** 3),
                     "xyz": a * (b ** 3 - c ** 3), "xxx": c * (a ** 3 - c ** 3)})
        base = self.params
        if base.a * (base.c ** 3 - base.a ** 3):
            k = a * (c ** 3 - a ** 3)
        else:
            k = a * (c ** 3 - b ** 3)
        return gf.scale(1 / k)


def hbar_algebra(params, direction: Sequence = DEFAULT_DIRECTION, degree_cap: int = 4,
                 check: bool = True) -> HbarAlgebra:
    params = as_params(params)
    direction = tuple(_simp(x) for x in direction)
    if check and not check_direction(params, direction):
        raise ForbiddenParameters("direction fails the genericity test", tuple(scalar_str(x) for x in direction))
    hb = HbarScalar.hbar()
    tilde = tuple(_h(p) + hb * q for p, q in zip(params.triple, direction))
    rels = relations(params, *tilde)
    rs = build_hbar_system(rels, degree_cap, params)
    return HbarAlgebra(params, direction, rs, tilde)


@dataclass
class GoodSection:
    """Lifts iota(z_i) = x~_i^n + sum_j c_j g~^j x~_i^(n-3j) - (corrections) and iota(g) = g~."""

    n: int
    basis_vectors: tuple
    c: list  # c_j, j = 1..
    corrections: list = field(default_factory=list)  # list of (N, [c'_j]) applied so far

    def lift_z(self, alg: HbarAlgebra, i: int, g_t: NCPoly) -> NCPoly:
        rs = alg.rs
        xi = _lift(NCPoly.linear(self.basis_vectors[i]))
        pw = {0: NCPoly.const(_h(1))}
        for k in range(1, self.n + 1):
            pw[k] = rs.mul(pw[k - 1], xi)
        gp = {0: NCPoly.const(_h(1))}
        for j in range(1, len(self.c) + 1):
            gp[j] = rs.mul(gp[j - 1], g_t)
        out = pw[self.n]
        for j, cj in enumerate(self.c, start=1):
            if cj:
                out = out + rs.mul(gp[j], pw[self.n - 3 * j]).scale(_h(cj))
        for N, cs in self.corrections:
            hN = HbarScalar.hbar() ** N
            for j, cj in enumerate(cs, start=1):
                if cj:
                    out = out - rs.mul(gp[j], pw[self.n - 3 * j]).scale(hN * _h(cj))
        return out

    def lifts(self, alg: HbarAlgebra) -> dict[str, NCPoly]:
        g_t = alg.rs.normal_form(alg.g_tilde())
        out = {f"z{i + 1}": self.lift_z(alg, i, g_t) for i in range(3)}
        out["g"] = g_t
        return out


def naive_section(cp: CenterPresentation) -> GoodSection:
    return GoodSection(cp.n, cp.basis.vectors, list(cp.c))


def _hbar_comm(alg: HbarAlgebra, p: NCPoly, w: NCPoly) -> NCPoly:
    return alg.rs.commutator(p, w)


def _poly_valuation(p: NCPoly) -> float:
    return min((v.valuation() for v in p.terms.values()), default=math.inf)


def commutator_level(alg: HbarAlgebra, lifts: dict[str, NCPoly]) -> tuple[int | float, dict]:
    """N = min h-valuation of the coefficients of [iota(z), w], z in {z1,z2,z3,g}, w in {x,y,z}.

    Returns ``math.inf`` when every lifted commutator vanishes, which happens
    when the deformation stays inside the family of PI degree n.
    """
    comms = {}
    N = math.inf
    for zname in CENTER_VARS:
        for ch in LETTERS:
            c = _hbar_comm(alg, lifts[zname], NCPoly.word(ch, _h(1)))
            comms[(zname, ch)] = c
            N = min(N, _poly_valuation(c))
    if N == math.inf:
        return N, comms
    if N < 1:
        raise InternalConsistencyError("lifted commutator does not vanish at h = 0")
    return int(N), comms


def divide_theta(p: NCPoly, N: int) -> NCPoly:
    """theta(p / h^N)."""
    out = {}
    for w, v in p.terms.items():
        if v.valuation() < N:
            raise InternalConsistencyError(f"coefficient of {w} has valuation {v.valuation()} < {N}")
        out[w] = _simp(v.shift(-N).eval0())
    return NCPoly(out)


def special_derivation(alg: HbarAlgebra, lift: NCPoly, N: int, w: NCPoly) -> NCPoly:
    """theta([lift, w~] / h^N) for the given lift w~ (an NCPoly over HbarScalar or constants)."""
    wl = w if all(isinstance(v, HbarScalar) for v in w.terms.values()) else _lift(w)
    return divide_theta(_hbar_comm(alg, lift, wl), N)


class Derivation:
    """A derivation of S given on x, y, z, extended by Leibniz in a base rewriting system."""

    def __init__(self, rs: RewriteSystem, table: dict[str, NCPoly]):
        self.rs = rs
        self.table = table
        self._cache: dict[str, NCPoly] = {}

    def word(self, w: str) -> NCPoly:
        if w in self._cache:
            return self._cache[w]
        rs = self.rs
        out = NCPoly()
        for k, ch in enumerate(w):
            d = self.table[ch]
            if not d:
                continue
            left = NCPoly.word(w[:k]) if k else NCPoly.const(1)
            right = NCPoly.word(w[k + 1:]) if k + 1 < len(w) else NCPoly.const(1)
            out = out + rs.mul(rs.mul(left, d), right)
        self._cache[w] = out
        return out

    def __call__(self, p: NCPoly) -> NCPoly:
        out = NCPoly()
        for w, v in p.terms.items():
            out = out + self.word(w).scale(v)
        return out

    def is_zero(self) -> bool:
        return not any(self.table.values())


@dataclass
class PoissonOrderResult:
    N: int
    eta: object
    brackets: dict  # (zi, zj) -> CPoly
    derivations: dict  # zname -> {letter: NCPoly}
    rounds: int
    section: GoodSection

    def to_json(self) -> dict:
        return {
            "level": self.N,
            "eta": scalar_str(self.eta) if self.eta is not None else None,
            "rounds": self.rounds,
            "corrections": [[N, [scalar_str(c) for c in cs]] for N, cs in self.section.corrections],
            "brackets": {f"{{{u},{v}}}": b.to_json() for (u, v), b in sorted(self.brackets.items())},
            "derivations": {z: {ch: d.to_terms() for ch, d in sorted(t.items())}
                            for z, t in sorted(self.derivations.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def express_in_center(p: NCPoly, cp: CenterPresentation, weight: int) -> CPoly:
    """Write a central element of weighted degree ``weight`` < 3n as a polynomial in z1, z2, z3, g."""
    if weight >= 3 * cp.n:
        raise StructureError("monomials are only independent below weighted degree 3n")
    mons = center_monomials(cp.n, weight)
    ev = cp.evaluator or _MonomialEvaluator(cp.rs, cp.z, cp.g)
    cp.evaluator = ev
    images = [ev(e) for e in mons]
    words = sorted(set(p.terms).union(*[set(q.terms) for q in images]))
    A = [[q.terms.get(w, Fraction(0)) for q in images] for w in words]
    b = [p.terms.get(w, Fraction(0)) for w in words]
    if not mons:
        if p:
            raise FalsificationError("element is not in the center", p)
        return CPoly()
    sol, ker = solve(A, b)
    if sol is None:
        raise FalsificationError("element is not a polynomial in z1, z2, z3, g", p)
    assert not ker
    return CPoly(dict(zip(mons, sol)))


def induced_brackets(cp: CenterPresentation, derivs: dict[str, Derivation]) -> dict:
    out = {}
    for u, v in (("z1", "z2"), ("z2", "z3"), ("z3", "z1")):
        zv = cp.z[int(v[1]) - 1]
        val = derivs[u](zv)
        out[(u, v)] = express_in_center(val, cp, 2 * cp.n)
    return out


def compare_to_dF(brackets: dict, ps: PoissonStructure):
    """The single eta with brackets = eta * ps brackets; raises if none exists."""
    eta = None
    for key, b in brackets.items():
        ref = ps.brackets[key]
        if not ref:
            if b:
                raise FalsificationError(f"induced {key} nonzero where dF bracket vanishes", b)
            continue
        e, v = next(iter(ref.terms.items()))
        cand = _simp(b.coeff(e) / v)
        if eta is None:
            eta = cand
        if b != ref * eta or cand != eta:
            raise FalsificationError(f"bracket {key} is not eta times the dF bracket", b)
    return eta


def _solve_correction(cp: CenterPresentation, deriv_z1: Derivation, rs: RewriteSystem):
    """c'_j with d_{z1}(w) = sum_j c'_j g^j [x_1^(n-3j), w] for w in x, y, z."""
    n = cp.n
    J = [j for j in range(1, n) if 3 * j < n]
    if not J:
        return None
    x1 = cp.basis.elements[0]
    cols = []
    for j in J:
        t = rs.mul(rs.power(cp.g, j), rs.power(x1, n - 3 * j))
        cols.append({(ch, w): v for ch in LETTERS for w, v in rs.commutator(t, NCPoly.word(ch)).terms.items()})
    target = {(ch, w): v for ch in LETTERS for w, v in deriv_z1.table[ch].terms.items()}
    keys = sorted(set(target).union(*[set(c) for c in cols]))
    A = [[c.get(k, Fraction(0)) for c in cols] for k in keys]
    b = [target.get(k, Fraction(0)) for k in keys]
    sol, _ = solve(A, b)
    return sol


def maximize_level(cp: CenterPresentation, alg: HbarAlgebra, section: GoodSection | None = None,
                   max_rounds: int = DEFAULT_MAX_ROUNDS) -> PoissonOrderResult:
    """Raise the level by section corrections until the induced bracket on Z is nonzero."""
    section = section or naive_section(cp)
    rs0 = cp.rs
    ps = bracket_from_F(cp.F)
    for rounds in range(1, max_rounds + 1):
        lifts = section.lifts(alg)
        N, comms = commutator_level(alg, lifts)
        if N == math.inf:
            raise StructureError("lifted commutators vanish identically; the direction does not leave "
                                 "the locus of PI degree dividing n")
        tables = {z: {ch: divide_theta(comms[(z, ch)], N) for ch in LETTERS} for z in CENTER_VARS}
        if any(tables["g"].values()):
            raise FalsificationError("the derivation of g is nonzero", tables["g"])
        derivs = {z: Derivation(rs0, tables[z]) for z in CENTER_VARS}
        brackets = induced_brackets(cp, derivs)
        if any(brackets.values()):
            eta = compare_to_dF(brackets, ps)
            return PoissonOrderResult(N, eta, brackets, tables, rounds, section)
        sol = _solve_correction(cp, derivs["z1"], rs0)
        if sol is None:
            raise StructureError(f"induced bracket vanishes at level {N} and no correction is available")
        section = GoodSection(section.n, section.basis_vectors, section.c,
                              section.corrections + [(N, [_simp(v) for v in sol])])
    raise CapExceeded("section-improvement rounds", max_rounds)


def specialize(params, direction: Sequence = DEFAULT_DIRECTION, max_rounds: int = DEFAULT_MAX_ROUNDS,
               cp: CenterPresentation | None = None) -> tuple[PoissonOrderResult, HbarAlgebra, CenterPresentation]:
    params = as_params(params)
    cp = cp or compute_center(params)
    alg = hbar_algebra(params, direction, degree_cap=max(cp.n + 1, 4))
    res = maximize_level(cp, alg, max_rounds=max_rounds)
    return res, alg, cp


# -- property checks -------------------------------------------------------

def lift_independence(alg: HbarAlgebra, lift: NCPoly, N: int, w: NCPoly, perturbation: NCPoly) -> bool:
    """Adding h * perturbation to the lift of w does not change the derivation."""
    w1 = _lift(w)
    w2 = w1 + _lift(perturbation).scale(HbarScalar.hbar())
    return special_derivation(alg, lift, N, w1) == special_derivation(alg, lift, N, w2)


def center_derivation(cp: CenterPresentation, derivs: dict[str, Derivation], poly: CPoly) -> Derivation:
    """The derivation attached to a polynomial in z1, z2, z3 (g contributes nothing)."""
    rs = cp.rs
    table = {}
    ev = cp.evaluator or _MonomialEvaluator(rs, cp.z, cp.g)
    for ch in LETTERS:
        total = NCPoly()
        for v in ("z1", "z2", "z3"):
            dv = poly.diff(v)
            if dv:
                total = total + rs.mul(ev.poly(dv), derivs[v].table[ch])
        table[ch] = total
    return Derivation(rs, table)


def lie_homomorphism_residue(cp: CenterPresentation, result: PoissonOrderResult, u: str, v: str,
                             w: NCPoly) -> NCPoly:
    """[d_u, d_v](w) - d_{u,v}(w), which should vanish."""
    rs = cp.rs
    derivs = {z: Derivation(rs, result.derivations[z]) for z in CENTER_VARS}
    lhs = derivs[u](derivs[v](w)) - derivs[v](derivs[u](w))
    key = (u, v) if (u, v) in result.brackets else (v, u)
    br = result.brackets[key] if key == (u, v) else -result.brackets[key]
    rhs = center_derivation(cp, derivs, br)(w)
    return lhs - rhs


def equivariance_residue(cp: CenterPresentation, result: PoissonOrderResult, w: NCPoly) -> NCPoly:
    """tau(d_{z1}(w)) - d_{z2}(tau(w))."""
    rs = cp.rs
    tau = cp.basis.tau
    images = {ch: NCPoly.linear(tau.apply([Fraction(int(i == k)) for i in range(3)]))
              for k, ch in enumerate(LETTERS)}
    d1 = Derivation(rs, result.derivations["z1"])
    d2 = Derivation(rs, result.derivations["z2"])
    lhs = rs.normal_form(d1(w).substitute(images))
    rhs = d2(rs.normal_form(w.substitute(images)))
    return lhs - rhs


def lie_defect_element(cp: CenterPresentation, alg: HbarAlgebra, result: PoissonOrderResult,
                       u: str, v: str) -> NCPoly:
    """r = theta(([iota(u), iota(v)]/h^N - iota({u,v})) / h).

    The Jacobi identity gives [d_u, d_v] - d_{u,v} = ad(r) exactly, so the
    Lie-homomorphism residue vanishes iff r is central.
    """
    rs = alg.rs
    lifts = result.section.lifts(alg)
    N = result.N
    comm = rs.commutator(lifts[u], lifts[v])
    comm = NCPoly({w: x.shift(-N) for w, x in comm.terms.items()})
    key = (u, v) if (u, v) in result.brackets else (v, u)
    br = result.brackets[key] if key == (u, v) else -result.brackets[key]
    lifted = NCPoly()
    for e, c in br.terms.items():
        t = NCPoly.const(_h(1))
        for k, name in enumerate(CENTER_VARS):
            for _ in range(e[k]):
                t = rs.mul(t, lifts[name])
        lifted = lifted + t.scale(_h(c))
    diff = comm - lifted
    if divide_theta(diff, 0):
        raise InternalConsistencyError("[iota(u), iota(v)]/h^N does not lift the induced bracket")
    return divide_theta(diff, 1)
