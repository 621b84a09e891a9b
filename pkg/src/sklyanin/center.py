"""Central elements g, z1, z2, z3, the relation F and the derived data ell, Phi, f3."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cpoly import CENTER_VARS, CPoly
from .curve import ORIGIN, ProjPoint, curve_data, sigma_order
from .errors import CapExceeded, FalsificationError, InternalConsistencyError, StructureError
from .exactfield import DEFAULT_CONDUCTOR, CycNum, format_cycnum
from .freealg import LETTERS, NCPoly, RewriteSystem, cached_system, scalar_str
from .linalg import nullspace, solve
from .params import SklyaninParams, as_params

MAX_N = 6


def zeta3(m: int = DEFAULT_CONDUCTOR) -> CycNum:
    return CycNum.zeta(m, 1, order=3)


def _simp(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    return Fraction(v) if isinstance(v, int) else v


# -- Heisenberg group -----------------------------------------------------

@dataclass(frozen=True)
class H3Element:
    """rho1^e1 rho2^e2 rho3^e3 acting on span{x, y, z}."""

    e1: int
    e2: int
    e3: int

    def __post_init__(self):
        object.__setattr__(self, "e1", self.e1 % 3)
        object.__setattr__(self, "e2", self.e2 % 3)
        object.__setattr__(self, "e3", self.e3 % 3)

    @property
    def matrix(self) -> list[list]:
        return _h3_matrix(self.e1, self.e2, self.e3)

    def apply(self, coeffs: Sequence) -> tuple:
        """Image of the linear form coeffs[0]*x + coeffs[1]*y + coeffs[2]*z."""
        M = self.matrix
        return tuple(_simp(sum((M[i][j] * coeffs[j] for j in range(3)), Fraction(0))) for i in range(3))

    def point_map(self, p: ProjPoint) -> ProjPoint:
        """Induced map on E: v_i(h p) = (h v_i)(p), i.e. the transpose matrix."""
        M = self.matrix
        return ProjPoint(*(sum((M[j][i] * p[j] for j in range(3)), Fraction(0)) for i in range(3)))

    def __mul__(self, other: "H3Element") -> "H3Element":
        return element_from_matrix(_matmul3(self.matrix, other.matrix))

    def modulo_center(self) -> tuple[int, int]:
        return (self.e2, self.e3)

    def __str__(self):
        parts = [f"rho{k}^{e}" if e > 1 else f"rho{k}" for k, e in ((1, self.e1), (2, self.e2), (3, self.e3)) if e]
        return "*".join(parts) or "id"


def _matmul3(A, B):
    return [[_simp(sum((A[i][k] * B[k][j] for k in range(3)), Fraction(0))) for j in range(3)] for i in range(3)]


@lru_cache(maxsize=None)
def _h3_matrix_cached(e1: int, e2: int, e3: int) -> tuple:
    z = zeta3()
    one, zero = Fraction(1), Fraction(0)
    r1 = [[z if i == j else zero for j in range(3)] for i in range(3)]
    r2 = [[(z ** i) if i == j else zero for j in range(3)] for i in range(3)]
    # rho3: x -> y -> z -> x, columns are images
    r3 = [[one if i == (j + 1) % 3 else zero for j in range(3)] for i in range(3)]
    M = [[one if i == j else zero for j in range(3)] for i in range(3)]
    for _ in range(e1):
        M = _matmul3(M, r1)
    for _ in range(e2):
        M = _matmul3(M, r2)
    for _ in range(e3):
        M = _matmul3(M, r3)
    return tuple(tuple(r) for r in M)


def _h3_matrix(e1, e2, e3):
    return [list(r) for r in _h3_matrix_cached(e1, e2, e3)]


def h3_elements() -> list[H3Element]:
    return [H3Element(*e) for e in itertools.product(range(3), repeat=3)]


def element_from_matrix(M) -> H3Element:
    for h in h3_elements():
        if all(h.matrix[i][j] == M[i][j] for i in range(3) for j in range(3)):
            return h
    raise StructureError("matrix is not in H3")


# rows of the good-basis table, keyed by the order-3 subgroup of H3/<rho1>
# given by a generator (e2, e3)
def _good_basis_table() -> dict[tuple[int, int], list[tuple]]:
    z = zeta3()
    z2 = z * z
    one = Fraction(1)
    return {
        (1, 0): [(one, 0, 0), (0, one, 0), (0, 0, one)],
        (0, 1): [(one, one, one), (one, z2, z), (one, z, z2)],
        (2, 1): [(one, one, z2), (one, z2, one), (one, z, z)],
        (1, 1): [(one, one, z), (one, z, one), (one, z2, z2)],
    }


SUBGROUP_NAMES = {(1, 0): "rho2", (0, 1): "rho3", (2, 1): "rho2^2*rho3", (1, 1): "rho2*rho3"}


def subgroup_key(e2: int, e3: int) -> tuple[int, int]:
    """Canonical generator of the cyclic subgroup of Z3^2 containing (e2, e3)."""
    if (e2 % 3, e3 % 3) == (0, 0):
        raise StructureError("identity has no subgroup class")
    a, b = e2 % 3, e3 % 3
    for k in (1, 2):
        ka, kb = (k * a) % 3, (k * b) % 3
        if (ka, kb) in SUBGROUP_NAMES:
            return (ka, kb)
    raise AssertionError


@dataclass(frozen=True)
class RhoClass:
    key: tuple[int, int]
    element: H3Element
    translation: ProjPoint

    @property
    def name(self) -> str:
        return SUBGROUP_NAMES[self.key]


def identify_rho(params) -> RhoClass:
    """H3 class of rho = sigma^(n/3), matched by the image of the origin."""
    params = as_params(params)
    n = sigma_order(params, 64)
    if n is None or n % 3:
        raise StructureError(f"identify_rho needs 3 | n, got n = {n}")
    cd = curve_data(params)
    q = cd.multiple(n // 3, cd.translation_point)
    for e2, e3 in itertools.product(range(3), repeat=2):
        if (e2, e3) == (0, 0):
            continue
        h = H3Element(0, e2, e3)
        if h.point_map(ORIGIN) == q:
            # the whole point map must be the translation by q
            for p in _probe_points(cd):
                if h.point_map(p) != cd.add(p, q):
                    raise InternalConsistencyError(f"{h} fixes the origin image but is not translation by {q}")
            return RhoClass(subgroup_key(e2, e3), h, q)
    raise InternalConsistencyError(f"sigma^{n // 3} translation {q} matches no element of H3")


def _probe_points(cd):
    from .curve import flex_points

    return flex_points() + [cd.translation_point]


# -- good basis -----------------------------------------------------------

@dataclass(frozen=True)
class GoodBasis:
    vectors: tuple[tuple, tuple, tuple]
    tau: H3Element
    family: tuple[int, int]

    def element(self, i: int) -> NCPoly:
        return NCPoly.linear(self.vectors[i])

    @property
    def elements(self) -> list[NCPoly]:
        return [self.element(i) for i in range(3)]

    def matrix(self) -> list[list]:
        """Rows are the x_i in coordinates (x, y, z)."""
        return [list(v) for v in self.vectors]


def find_tau(vectors: Sequence[Sequence]) -> H3Element:
    for h in h3_elements():
        if all(h.apply(vectors[i]) == tuple(_simp(x) for x in vectors[(i + 1) % 3]) for i in range(3)):
            return h
    raise StructureError("no H3 element cycles the basis")


def table_basis(key: tuple[int, int]) -> GoodBasis:
    vecs = tuple(tuple(_simp(x) for x in v) for v in _good_basis_table()[key])
    return GoodBasis(vecs, find_tau(vecs), key)


FAMILY_ORDER = [(1, 0), (0, 1), (2, 1), (1, 1)]


# -- central elements -----------------------------------------------------

def g_formula(params) -> NCPoly:
    a, b, c = as_params(params).triple
    return NCPoly({"yyy": c * (c ** 3 - b ** 3), "yxz": b * (c ** 3 - a ** 3),
                   "xyz": a * (b ** 3 - c ** 3), "xxx": c * (a ** 3 - c ** 3)})


def g_normalizer(params):
    a, b, c = as_params(params).triple
    k = a * (c ** 3 - a ** 3)
    if k:
        return k
    return a * (c ** 3 - b ** 3)


def central_g(params, rs: RewriteSystem | None = None) -> NCPoly:
    """The degree-3 central element, scaled so its xxx or yxz coefficient matches the usual form."""
    params = as_params(params)
    g = g_formula(params).scale(1 / g_normalizer(params))
    g = g.map_scalars(_simp)
    rs = rs or cached_system(params, 4)
    res = rs.is_central(g)
    if not res:
        raise InternalConsistencyError(f"g is not central: {res}")
    return g


def central_z(params, basis: GoodBasis, n: int, g: NCPoly, rs: RewriteSystem):
    """z_i = x_i^n + sum_j c_j g^j x_i^(n-3j) with shared c_j solving centrality.

    Returns (z1, z2, z3, [c_1, ...]).  Raises StructureError when no choice of c_j
    works and InternalConsistencyError when the solution is not unique.
    """
    xs = basis.elements
    J = [j for j in range(1, n) if 3 * j < n]
    gens = [NCPoly.word(ch) for ch in LETTERS]
    x1 = xs[0]
    pw = {0: NCPoly.const(1)}
    for k in range(1, n + 1):
        pw[k] = rs.mul(pw[k - 1], x1)
    gp = {0: NCPoly.const(1)}
    for j in range(1, max(J, default=0) + 1):
        gp[j] = rs.mul(gp[j - 1], g)
    terms = [pw[n]] + [rs.mul(gp[j], pw[n - 3 * j]) for j in J]
    # one block of equations per generator
    cols: list[dict[str, object]] = [dict() for _ in terms]
    for w in gens:
        for t_idx, t in enumerate(terms):
            comm = rs.commutator(t, w)
            for word, v in comm.terms.items():
                cols[t_idx][(w.leading_word(), word)] = v
    keys = sorted(set().union(*[set(c) for c in cols]))
    A = [[cols[k + 1].get(key, Fraction(0)) for k in range(len(J))] for key in keys]
    b = [-cols[0].get(key, Fraction(0)) for key in keys]
    if not J:
        if any(b):
            raise StructureError("x_1^n is not central for this basis")
        cvals: list = []
    else:
        sol, ker = solve(A, b)
        if sol is None:
            raise StructureError("no correction coefficients make z_1 central")
        if ker:
            raise InternalConsistencyError("correction coefficients are not unique")
        cvals = [_simp(v) for v in sol]
    zs = []
    for i in range(3):
        xi = xs[i]
        p = {0: NCPoly.const(1)}
        for k in range(1, n + 1):
            p[k] = rs.mul(p[k - 1], xi)
        zi = p[n]
        for j, cj in zip(J, cvals):
            if cj:
                zi = zi + rs.mul(gp[j], p[n - 3 * j]).scale(cj)
        res = rs.is_central(zi)
        if not res:
            raise StructureError(f"z_{i + 1} is not central: {res}")
        zs.append(zi)
    return zs[0], zs[1], zs[2], cvals


def center_monomials(n: int, weight: int) -> list[tuple[int, int, int, int]]:
    """Exponents (l1, l2, l3, l0) of z1^l1 z2^l2 z3^l3 g^l0 with n*(l1+l2+l3) + 3*l0 = weight."""
    out = []
    for k in range(weight // n + 1):
        rest = weight - n * k
        if rest % 3:
            continue
        l0 = rest // 3
        for l1 in range(k + 1):
            for l2 in range(k - l1 + 1):
                out.append((l1, l2, k - l1 - l2, l0))
    return sorted(out, key=lambda e: (-e[3], e))


class _MonomialEvaluator:
    """Normal forms of commutative monomials in z1, z2, z3, g (which commute in S)."""

    def __init__(self, rs: RewriteSystem, zs: Sequence[NCPoly], g: NCPoly):
        self.rs = rs
        self.gens = list(zs) + [g]
        self.cache: dict[tuple, NCPoly] = {(0, 0, 0, 0): NCPoly.const(1)}

    def __call__(self, e: tuple) -> NCPoly:
        e = tuple(e)
        if e in self.cache:
            return self.cache[e]
        k = next(i for i in (3, 0, 1, 2) if e[i])
        prev = tuple(x - (1 if i == k else 0) for i, x in enumerate(e))
        out = self.rs.mul(self(prev), self.gens[k])
        self.cache[e] = out
        return out

    def poly(self, F: CPoly) -> NCPoly:
        out = NCPoly()
        for e, v in F.terms.items():
            out = out + self(e).scale(v)
        return out


def central_relation_F(rs: RewriteSystem, zs: Sequence[NCPoly], g: NCPoly, n: int,
                       evaluator: _MonomialEvaluator | None = None) -> CPoly:
    """The unique relation of weighted degree 3n, normalized so g^n has coefficient 1."""
    ev = evaluator or _MonomialEvaluator(rs, zs, g)
    mons = center_monomials(n, 3 * n)
    images = [ev(e) for e in mons]
    words = sorted(set().union(*[set(p.terms) for p in images]))
    rows = [[img.terms.get(w, Fraction(0)) for img in images] for w in words]
    ker = nullspace(rows, len(mons))
    if len(ker) != 1:
        raise StructureError(f"relation space in weighted degree {3 * n} has dimension {len(ker)}, expected 1")
    v = ker[0]
    lead = mons.index((0, 0, 0, n))
    if not v[lead]:
        raise StructureError("the relation has no g^n term")
    inv = 1 / v[lead]
    return CPoly({e: _simp(x * inv) for e, x in zip(mons, v) if x}, CENTER_VARS)


def independence_witness(rs: RewriteSystem, zs, g, n: int, evaluator=None) -> bool:
    """True iff no relation among z1, z2, z3, g exists in weighted degree below 3n."""
    ev = evaluator or _MonomialEvaluator(rs, zs, g)
    for wdeg in range(1, 3 * n):
        mons = center_monomials(n, wdeg)
        if len(mons) < 2:
            continue
        images = [ev(e) for e in mons]
        words = sorted(set().union(*[set(p.terms) for p in images]))
        rows = [[img.terms.get(w, Fraction(0)) for img in images] for w in words]
        if nullspace(rows, len(mons)):
            return False
    return True


@dataclass
class StructuralData:
    Phi: CPoly
    ell: CPoly | None = None
    alpha: object = None
    mu: object = None


def extract_structural_data(F: CPoly, n: int) -> StructuralData:
    """Read ell, alpha, Phi (and mu with Phi = ell^3 - mu z1 z2 z3) off a normalized F."""
    gi = CENTER_VARS.index("g")
    lead = tuple(n if i == gi else 0 for i in range(4))
    if F.coeff(lead) != 1:
        raise StructureError("F is not normalized: coefficient of g^n is not 1")
    Phi = F.coeff_in("g", 0)
    if n % 3:
        rest = F - CPoly({lead: 1}) - Phi
        if rest:
            raise StructureError(f"F - g^n - Phi has terms involving g: {rest}")
        if not Phi.is_weighted_homogeneous((1, 1, 1, 0)) or Phi.weighted_degrees((1, 1, 1, 0)) != {3}:
            raise StructureError("Phi is not a homogeneous cubic")
        return StructuralData(Phi)
    s = n // 3
    ell = F.coeff_in("g", 2 * s) / 3
    c_low = F.coeff_in("g", s)
    if c_low != ell * ell * 3:
        raise StructureError(f"coefficient of g^{s} is {c_low}, expected 3*ell^2 = {ell * ell * 3}")
    others = F - CPoly({lead: 1}) - (F.coeff_in("g", 2 * s) * CPoly({_gpow(2 * s): 1})) \
        - (c_low * CPoly({_gpow(s): 1})) - Phi
    if others:
        raise StructureError(f"F has unexpected g-degrees: {others}")
    alpha = ell.coeff((1, 0, 0, 0))
    z1, z2, z3 = (CPoly.var(v) for v in CENTER_VARS[:3])
    if ell != (z1 + z2 + z3) * alpha:
        raise StructureError(f"ell = {ell} is not a multiple of z1 + z2 + z3")
    rem = ell ** 3 - Phi
    mu = rem.coeff((1, 1, 1, 0))
    if rem != z1 * z2 * z3 * mu:
        mu = None
    return StructuralData(Phi, ell, _simp(alpha), _simp(mu) if mu is not None else None)


def _gpow(k: int) -> tuple:
    return (0, 0, 0, k)


# -- presentation ---------------------------------------------------------

@dataclass
class CenterPresentation:
    params: SklyaninParams
    n: int
    g: NCPoly
    basis: GoodBasis
    z: tuple[NCPoly, NCPoly, NCPoly]
    c: list
    F: CPoly
    structure: StructuralData
    rho: RhoClass | None = None
    u: tuple | None = None
    f3: CPoly | None = None
    rs: RewriteSystem | None = field(default=None, repr=False)
    evaluator: _MonomialEvaluator | None = field(default=None, repr=False)

    @property
    def ell(self):
        return self.structure.ell

    @property
    def alpha(self):
        return self.structure.alpha

    @property
    def Phi(self):
        return self.structure.Phi

    def eval_center(self, F: CPoly) -> NCPoly:
        """Normal form in S of a polynomial in z1, z2, z3, g."""
        if self.evaluator is None:
            self.evaluator = _MonomialEvaluator(self.rs, self.z, self.g)
        return self.evaluator.poly(F)

    def to_json(self) -> dict:
        return {
            "conductor": DEFAULT_CONDUCTOR,
            "params": [scalar_str(x) for x in self.params.triple],
            "n": self.n,
            "basis": [[scalar_str(x) for x in v] for v in self.basis.vectors],
            "tau": str(self.basis.tau),
            "rho_class": self.rho.name if self.rho else None,
            "c": [scalar_str(x) for x in self.c],
            "g": self.g.to_terms(),
            "F": self.F.to_json(),
            "F_text": str(self.F),
            "ell": self.ell.to_json() if self.ell is not None else None,
            "alpha": scalar_str(self.alpha) if self.alpha is not None else None,
            "mu": scalar_str(self.structure.mu) if self.structure.mu is not None else None,
            "Phi": self.Phi.to_json(),
            "f3": self.f3.to_json() if self.f3 is not None else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


U_VARS = ("u1", "u2", "u3")


def cubic_monomials() -> list[tuple[int, int, int]]:
    return sorted((e for e in itertools.product(range(4), repeat=3) if sum(e) == 3), reverse=True)


def solve_f3(rs: RewriteSystem, us: Sequence[NCPoly], g: NCPoly, s: int) -> CPoly:
    """The cubic f3 with g^s + f3(u1, u2, u3) = 0, monomials ordered as u1^a u2^b u3^c."""
    mons = cubic_monomials()
    images = [rs.product(*([us[0]] * e[0] + [us[1]] * e[1] + [us[2]] * e[2])) for e in mons]
    gs = rs.power(g, s)
    words = sorted(set().union(set(gs.terms), *[set(p.terms) for p in images]))
    A = [[img.terms.get(w, Fraction(0)) for img in images] for w in words]
    b = [-gs.terms.get(w, Fraction(0)) for w in words]
    sol, ker = solve(A, b)
    if sol is None:
        raise FalsificationError("g^s is not a cubic in u1, u2, u3")
    if ker:
        raise StructureError("f3 is not unique")
    return CPoly({e: v for e, v in zip(mons, sol)}, U_VARS)


def veronese_identity_check(cp: CenterPresentation) -> bool:
    """Certify z_i = u_i^3 and g^s + f3(u) = 0 by normal forms; vacuous when 3 does not divide n."""
    if cp.n % 3:
        return True
    rs = cp.rs
    s = cp.n // 3
    us = cp.u or tuple(rs.power(x, s) for x in cp.basis.elements)
    for i in range(3):
        resid = cp.z[i] - rs.power(us[i], 3)
        if resid:
            raise FalsificationError(f"z_{i + 1} - u_{i + 1}^3 != 0", resid)
    f3 = cp.f3 if cp.f3 is not None else solve_f3(rs, us, cp.g, s)
    total = rs.power(cp.g, s)
    for e, v in f3.terms.items():
        total = total + rs.product(*([us[0]] * e[0] + [us[1]] * e[1] + [us[2]] * e[2])).scale(v)
    if total:
        raise FalsificationError("g^s + f3(u) does not reduce to zero", total)
    return True


def compute_center(params, max_n: int = MAX_N, family: tuple[int, int] | None = None) -> CenterPresentation:
    """Full presentation of the center for PI degree n <= max_n."""
    params = as_params(params)
    n = sigma_order(params, max(max_n, 1))
    if n is None:
        raise CapExceeded("PI degree", max_n)
    if n < 2:
        raise StructureError("sigma is trivial")
    rs = cached_system(params, 3 * n + 2)
    g = central_g(params, rs)
    rho = None
    if n % 3 == 0:
        rho = identify_rho(params)
        candidates = [rho.key]
    else:
        candidates = FAMILY_ORDER if family is None else [family]
    failures = []
    for key in candidates:
        basis = table_basis(key)
        if rho is not None:
            _check_eigenbasis(basis, rho.element)
        try:
            z1, z2, z3, cvals = central_z(params, basis, n, g, rs)
            ev = _MonomialEvaluator(rs, (z1, z2, z3), g)
            F = central_relation_F(rs, (z1, z2, z3), g, n, ev)
            sd = extract_structural_data(F, n)
        except StructureError as exc:
            failures.append((SUBGROUP_NAMES[key], str(exc)))
            continue
        cp = CenterPresentation(params, n, g, basis, (z1, z2, z3), cvals, F, sd, rho, rs=rs, evaluator=ev)
        if n % 3 == 0:
            s = n // 3
            cp.u = tuple(rs.power(x, s) for x in basis.elements)
            cp.f3 = solve_f3(rs, cp.u, g, s)
        return cp
    raise StructureError(f"no good-basis candidate passed: {failures}")


def _check_eigenbasis(basis: GoodBasis, h: H3Element) -> None:
    for v in basis.vectors:
        img = h.apply(v)
        k = next(i for i in range(3) if v[i])
        lam = img[k] / v[k]
        if any(img[i] != lam * v[i] for i in range(3)):
            raise InternalConsistencyError(f"table basis vector {v} is not an eigenvector of {h}")


def tau_equivariance(cp: CenterPresentation) -> bool:
    """tau(z_i) = z_(i+1) after normal form, tau acting on the letters."""
    tau = cp.basis.tau
    images = {ch: NCPoly.linear(tau.apply([Fraction(int(i == k)) for i in range(3)]))
              for k, ch in enumerate(LETTERS)}
    rs = cp.rs
    for i in range(3):
        img = rs.normal_form(cp.z[i].substitute(images))
        if img != cp.z[(i + 1) % 3]:
            return False
    return True


def F_tau_invariant(F: CPoly) -> bool:
    z1, z2, z3, g = (CPoly.var(v) for v in CENTER_VARS)
    return F.substitute({"z1": z2, "z2": z3, "z3": z1, "g": g}) == F


def format_scalar(v) -> str:
    return format_cycnum(v) if isinstance(v, CycNum) else str(v)
