"""Finite-dimensional representations given by matrices over Q(zeta_m)."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .center import CenterPresentation
from .errors import FalsificationError, StructureError
from .exactfield import DEFAULT_CONDUCTOR, CycNum, format_cycnum, parse_cycnum
from .freealg import LETTERS, NCPoly, relations
from .linalg import (Matrix, identity, inverse, is_scalar_matrix, mat_add, mat_eq, mat_mul, mat_scale,
                     nullspace, rank, trace, zeros)
from .params import SklyaninParams, as_params
from .strata import YPoint, classify_stratum, expected_irrep_profile


def _simp(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    return Fraction(v) if isinstance(v, int) else v


def _fmt(v) -> str:
    return format_cycnum(v) if isinstance(v, CycNum) else str(v)


@dataclass
class MatrixRep:
    """Images of x, y, z (always stored in the standard generators)."""

    images: tuple[Matrix, Matrix, Matrix]
    basis: list[list] | None = None  # rows x_i in terms of x, y, z, when built from a good basis
    good_images: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.images[0])

    @classmethod
    def from_good_basis(cls, basis: Sequence[Sequence], good_images: Sequence[Matrix]) -> "MatrixRep":
        """x_i = sum_j basis[i][j] e_j, so phi(e_j) = sum_i inv(basis)[j][i] phi(x_i)."""
        B = [[_simp(x) for x in row] for row in basis]
        Binv = inverse(B)
        d = len(good_images[0])
        std = []
        for j in range(3):
            M = zeros(d)
            for i in range(3):
                if Binv[j][i]:
                    M = mat_add(M, mat_scale(good_images[i], Binv[j][i]))
            std.append(M)
        return cls(tuple(std), B, tuple(good_images))

    def evaluate(self, p: NCPoly) -> Matrix:
        d = self.dim
        cache: dict[str, Matrix] = {"": identity(d)}
        idx = {ch: i for i, ch in enumerate(LETTERS)}

        def word(w: str) -> Matrix:
            if w not in cache:
                cache[w] = mat_mul(word(w[:-1]), self.images[idx[w[-1]]])
            return cache[w]

        out = zeros(d)
        for w, v in p.terms.items():
            out = mat_add(out, mat_scale(word(w), v))
        return out

    def conjugate(self, T: Matrix) -> "MatrixRep":
        Ti = inverse(T)
        return MatrixRep(tuple(mat_mul(mat_mul(T, M), Ti) for M in self.images))

    def to_json(self, params: SklyaninParams | None = None, m: int = DEFAULT_CONDUCTOR) -> dict:
        if self.basis is not None:
            mats = self.good_images
            basis = [[_fmt(x) for x in row] for row in self.basis]
        else:
            mats = self.images
            basis = "standard"
        return {
            "conductor": m,
            "params": [_fmt(x) for x in params.triple] if params else None,
            "basis": basis,
            "matrices": [[[_fmt(x) for x in row] for row in M] for M in mats],
        }


def load_rep(source, m: int | None = None) -> tuple[MatrixRep, SklyaninParams | None]:
    """Read a representation document from a path, a JSON string or a dict."""
    if isinstance(source, dict):
        doc = source
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        doc = json.loads(Path(source).read_text())
    else:
        doc = json.loads(source)
    m = m or int(doc.get("conductor", DEFAULT_CONDUCTOR))
    mats = [[[_simp(parse_cycnum(s, m)) for s in row] for row in M] for M in doc["matrices"]]
    if len(mats) != 3:
        raise StructureError("a representation needs three matrices")
    d = len(mats[0])
    if any(len(M) != d or any(len(r) != d for r in M) for M in mats):
        raise StructureError("matrices must be square of equal size")
    params = None
    if doc.get("params"):
        params = SklyaninParams(*(parse_cycnum(s, m) for s in doc["params"]))
    basis = doc.get("basis", "standard")
    if basis == "standard":
        return MatrixRep(tuple(mats)), params
    B = [[_simp(parse_cycnum(s, m)) for s in row] for row in basis]
    return MatrixRep.from_good_basis(B, mats), params


def bundled_rep() -> tuple[MatrixRep, SklyaninParams]:
    """The 2-dimensional representation of S(1,-1,-1) over the point (-1728, 0, 0, 4)."""
    text = resources.files("sklyanin").joinpath("fixtures/pi6_rep.json").read_text()
    rep, params = load_rep(text)
    return rep, params


def verify_relations(rep: MatrixRep, params) -> tuple[bool, list[Matrix]]:
    params = as_params(params)
    residues = [rep.evaluate(r) for r in relations(params)]
    ok = all(not any(x for row in R for x in row) for R in residues)
    return ok, residues


def central_character(rep: MatrixRep, cp: CenterPresentation) -> YPoint:
    vals = []
    for name, p in zip(("z1", "z2", "z3", "g"), list(cp.z) + [cp.g]):
        s = is_scalar_matrix(rep.evaluate(p))
        if s is None:
            raise StructureError(f"{name} does not act by a scalar")
        vals.append(s)
    return YPoint(*vals)


def _flatten(M: Matrix) -> list:
    return [x for row in M for x in row]


def algebra_span(mats: Sequence[Matrix], cap: int | None = None) -> tuple[int, list[Matrix]]:
    """Dimension of the unital algebra generated by ``mats`` and a spanning list of products."""
    d = len(mats[0])
    cap = cap or d * d
    span = [identity(d)]
    frontier = [identity(d)]
    r = 1
    for _ in range(cap + 1):
        new = []
        for A in frontier:
            for G in mats:
                P = mat_mul(A, G)
                if rank([_flatten(M) for M in span + new + [P]]) > len(span) + len(new):
                    new.append(P)
        if not new:
            break
        span += new
        frontier = new
        r = len(span)
    return r, span


def burnside_irreducible(rep: MatrixRep) -> tuple[bool, int]:
    dim, _ = algebra_span(list(rep.images))
    return dim == rep.dim ** 2, dim


def twist(rep: MatrixRep, lam) -> MatrixRep:
    if not lam:
        raise ValueError("twist needs a nonzero scalar")
    imgs = tuple(mat_scale(M, lam) for M in rep.images)
    good = tuple(mat_scale(M, lam) for M in rep.good_images) if rep.good_images else None
    return MatrixRep(imgs, rep.basis, good)


def _words(length: int) -> list[str]:
    out = [""]
    layer = [""]
    for _ in range(length):
        layer = [w + ch for w in layer for ch in LETTERS]
        out += layer
    return out


def _direct_sum(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B)
    out = zeros(n + m)
    for i in range(n):
        for j in range(n):
            out[i][j] = A[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = B[i][j]
    return out


def iso_test(rep1: MatrixRep, rep2: MatrixRep) -> bool:
    """Equal traces on a spanning set of the algebra generated by rep1 + rep2."""
    if rep1.dim != rep2.dim:
        return False
    joint = [_direct_sum(a, b) for a, b in zip(rep1.images, rep2.images)]
    _, span = algebra_span(joint)
    d = rep1.dim
    for M in span:
        t1 = trace([row[:d] for row in M[:d]])
        t2 = trace([row[d:] for row in M[d:]])
        if t1 != t2:
            return False
    return True


def conjugator_exists(rep1: MatrixRep, rep2: MatrixRep, rng: random.Random | None = None) -> bool:
    """Brute-force oracle: an invertible T with T rep1(w) = rep2(w) T for the generators."""
    if rep1.dim != rep2.dim:
        return False
    d = rep1.dim
    rows = []
    for A, B in zip(rep1.images, rep2.images):
        # (T A - B T)[i][j] = sum_k T[i][k] A[k][j] - B[i][k] T[k][j]
        for i in range(d):
            for j in range(d):
                row = [Fraction(0)] * (d * d)
                for k in range(d):
                    row[i * d + k] = _simp(row[i * d + k] + A[k][j])
                    row[k * d + j] = _simp(row[k * d + j] - B[i][k])
                rows.append(row)
    ker = nullspace(rows, d * d)
    if not ker:
        return False
    rng = rng or random.Random(0)
    for _ in range(10):
        v = [Fraction(0)] * (d * d)
        for b in ker:
            c = rng.randint(-5, 5)
            v = [_simp(x + c * y) for x, y in zip(v, b)]
        T = [v[i * d:(i + 1) * d] for i in range(d)]
        if rank(T) == d:
            return True
    return False


@dataclass
class RepReport:
    relations_ok: bool
    central_character: YPoint | None
    irreducible: bool
    span_dim: int
    stratum: str | None
    consistent: bool

    def to_json(self) -> dict:
        return {
            "relations_ok": self.relations_ok,
            "central_character": [_fmt(x) for x in self.central_character.coords] if self.central_character else None,
            "irreducible": self.irreducible,
            "span_dim": self.span_dim,
            "stratum": self.stratum,
            "consistent": self.consistent,
        }


def report(rep: MatrixRep, cp: CenterPresentation) -> RepReport:
    ok, _ = verify_relations(rep, cp.params)
    char = central_character(rep, cp) if ok else None
    irr, dim = burnside_irreducible(rep)
    stratum = classify_stratum(cp, char).tag if char is not None else None
    consistent = bool(ok and irr and rep.dim in expected_irrep_profile(cp, char))
    return RepReport(ok, char, irr, dim, stratum, consistent)


def nonisomorphic_classes(reps: Sequence[MatrixRep]) -> list[MatrixRep]:
    out: list[MatrixRep] = []
    for r in reps:
        if not any(iso_test(r, s) for s in out):
            out.append(r)
    return out


def profile_consistency(reps: Sequence[MatrixRep], cp: CenterPresentation) -> bool:
    """Dimensions of the distinct irreducibles at one character match the expected profile."""
    if not reps:
        raise ValueError("no representations given")
    chars = {central_character(r, cp) for r in reps}
    if len(chars) != 1:
        raise FalsificationError("representations do not share a central character", chars)
    (char,) = chars
    for r in reps:
        if not burnside_irreducible(r)[0]:
            raise FalsificationError("a representation is reducible", r)
    classes = nonisomorphic_classes(reps)
    dims = sorted(r.dim for r in classes)
    expected = sorted(expected_irrep_profile(cp, char))
    if dims != expected:
        raise FalsificationError(f"dimensions {dims} differ from expected {expected}")
    n = cp.n
    total = sum(d * d for d in dims)
    tag = classify_stratum(cp, char).tag
    target = {"Y1": n * n, "Y3": n * n, "Y2": n * n // 3, "Y4": 1}[tag]
    if total != target:
        raise FalsificationError(f"sum of squared dimensions {total} differs from {target}")
    return True
