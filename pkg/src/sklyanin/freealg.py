"""Free algebra k<x,y,z>, the Sklyanin quotient truncated in degree, and normal forms.

The quotient is built one degree at a time.  With V = span{x, y, z} and R the
space of quadratic relations, the degree d+1 piece is

    S_{d+1} = (S_d (x) V) / image(S_{d-1} (x) R),

so each step is a sparse row reduction whose pivots are the deglex-largest
words.  Non-pivot words form the normal basis and the reduced pivot rows give
right multiplication tables S_d x V -> S_{d+1}.  The pivot words whose
proper suffix is also normal are exactly the leading words of the reduced
Groebner basis, which is what :attr:`RewriteSystem.rules` exposes.

For coefficients in Q[hbar] localized at hbar = 0 a pivot is only accepted
when its coefficient is a unit, so the normal basis is that of the fiber at
hbar = 0 and setting hbar = 0 commutes with normal forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .errors import CapExceeded, FalsificationError, InternalConsistencyError, ScalarError
from .exactfield import CycNum, HbarScalar, format_cycnum, parse_cycnum
from .params import SklyaninParams, as_params

LETTERS = "xyz"
_LIDX = {ch: i for i, ch in enumerate(LETTERS)}


def word_key(w: str) -> tuple[int, tuple[int, ...]]:
    """Sort key for deglex with x < y < z."""
    return (len(w), tuple(_LIDX[ch] for ch in w))


def _is_zero(v) -> bool:
    return not v


def scalar_str(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, CycNum):
        return format_cycnum(v)
    return str(v)


class NCPoly:
    """Element of the free algebra: a finite map word -> scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        self.terms: dict[str, object] = {}
        if terms:
            for w, v in terms.items():
                if v:
                    if any(ch not in _LIDX for ch in w):
                        raise ValueError(f"bad word {w!r}")
                    self.terms[w] = v

    @classmethod
    def word(cls, w: str, coef=1) -> "NCPoly":
        return cls({w: Fraction(coef) if isinstance(coef, int) else coef})

    @classmethod
    def const(cls, c) -> "NCPoly":
        return cls.word("", c)

    @classmethod
    def linear(cls, coeffs: Iterable) -> "NCPoly":
        """c0*x + c1*y + c2*z."""
        return cls({ch: (Fraction(v) if isinstance(v, int) else v) for ch, v in zip(LETTERS, coeffs)})

    @classmethod
    def parse_terms(cls, pairs, m: int = 12) -> "NCPoly":
        out = {}
        for w, s in pairs:
            v = parse_cycnum(s, m) if isinstance(s, str) else s
            out[w] = _simplify(v)
        return cls(out)

    def to_terms(self) -> list[list[str]]:
        return [[w, scalar_str(self.terms[w])] for w in sorted(self.terms, key=word_key)]

    # -- queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[str, object]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly({w: v for w, v in self.terms.items() if len(w) == d})

    def coeff(self, w: str):
        return self.terms.get(w, 0)

    def leading_word(self) -> str:
        return max(self.terms, key=word_key)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.const(other)
        out = dict(self.terms)
        for w, v in other.terms.items():
            nv = out[w] + v if w in out else v
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        r = NCPoly()
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = NCPoly()
        r.terms = {w: -v for w, v in self.terms.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "NCPoly":
        if not s:
            return NCPoly()
        r = NCPoly()
        r.terms = {w: v * s for w, v in self.terms.items() if v * s}
        return r

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        out: dict[str, object] = {}
        for w1, v1 in self.terms.items():
            for w2, v2 in other.terms.items():
                w = w1 + w2
                nv = out.get(w, 0) + v1 * v2
                if nv:
                    out[w] = nv
                else:
                    out.pop(w, None)
        r = NCPoly()
        r.terms = out
        return r

    def __rmul__(self, s):
        return self.scale(s)

    def __pow__(self, k: int):
        r = NCPoly.const(1)
        for _ in range(k):
            r = r * self
        return r

    def map_scalars(self, f: Callable) -> "NCPoly":
        return NCPoly({w: f(v) for w, v in self.terms.items()})

    def substitute(self, images: Mapping[str, "NCPoly"]) -> "NCPoly":
        """Algebra map on the free algebra sending each letter to ``images[letter]``."""
        out = NCPoly()
        for w, v in self.terms.items():
            t = NCPoly.const(v)
            for ch in w:
                t = t * images[ch]
            out = out + t
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        if not other:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "NCPoly(0)"
        parts = []
        for w in sorted(self.terms, key=word_key, reverse=True):
            parts.append(f"({scalar_str(self.terms[w])})*{w or '1'}")
        return "NCPoly(" + " + ".join(parts) + ")"


def commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q - q * p


def _simplify(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    if isinstance(v, int):
        return Fraction(v)
    return v


def relations(params: SklyaninParams, a=None, b=None, c=None) -> list[NCPoly]:
    """The three quadratic relations a*yz + b*zy + c*x^2 and their cyclic shifts."""
    a = params.a if a is None else a
    b = params.b if b is None else b
    c = params.c if c is None else c
    return [
        NCPoly({"yz": a, "zy": b, "xx": c}),
        NCPoly({"zx": a, "xz": b, "yy": c}),
        NCPoly({"xy": a, "yx": b, "zz": c}),
    ]


# -- scalar ring helpers ------------------------------------------------

def _is_unit(v) -> bool:
    if isinstance(v, HbarScalar):
        return bool(v.num) and v.valuation() == 0
    return bool(v)


def _row_valuation(row: dict) -> float:
    return min(v.valuation() for v in row.values())


class RewriteSystem:
    """Degree-truncated normal form machinery for one parameter triple.

    ``basis[d]`` lists the normal words of degree d in increasing deglex
    order and ``tables[d][l][i]`` is the normal form of ``basis[d][i] + l``
    as a sparse dict over indices of ``basis[d+1]``.
    """

    def __init__(self, params: SklyaninParams | None, degree_cap: int, rels: list[NCPoly],
                 scalar_tag: str):
        if degree_cap < 2:
            raise ValueError("degree_cap must be at least 2")
        self.params = params
        self.degree_cap = degree_cap
        self.scalar_tag = scalar_tag
        self.relations = rels
        self.basis: list[list[str]] = [[""], list(LETTERS)]
        self.index: list[dict[str, int]] = [{"": 0}, {ch: i for i, ch in enumerate(LETTERS)}]
        one = _one_like(rels)
        self.tables: list[list[list[dict[int, object]]]] = [[[{l: one}] for l in range(3)]]
        self._pivots: list[dict[str, dict[int, object]]] = [{}, {}]
        self._rel_rows = [self._rel_dict(r) for r in rels]
        for d in range(1, degree_cap):
            self._extend(d)
        self._word_cache: dict[str, dict[int, object]] = {}
        self._rules: list[tuple[str, NCPoly]] | None = None

    @staticmethod
    def _rel_dict(r: NCPoly) -> dict[tuple[int, int], object]:
        out = {}
        for w, v in r.terms.items():
            if len(w) != 2:
                raise ValueError("relations must be homogeneous quadratic")
            out[(_LIDX[w[0]], _LIDX[w[1]])] = v
        return out

    def _extend(self, d: int) -> None:
        B = self.basis[d]
        prev = self.tables[d - 1]
        # columns: (i, l) for word B[i] + letter l, in lex order of the word
        cols = sorted(((i, l) for i in range(len(B)) for l in range(3)),
                      key=lambda t: (word_key(B[t[0]])[1], t[1]))
        colidx = {cl: k for k, cl in enumerate(cols)}
        hbar = self.scalar_tag == "hbar"
        piv: dict[int, dict[int, object]] = {}
        for u in range(len(self.basis[d - 1])):
            for rel in self._rel_rows:
                row: dict[int, object] = {}
                for (i, j), cf in rel.items():
                    for k, v in prev[i][u].items():
                        key = colidx[(k, j)]
                        nv = row[key] + cf * v if key in row else cf * v
                        if nv:
                            row[key] = nv
                        else:
                            del row[key]
                self._insert_row(row, piv, hbar)
        # back substitution so pivot rows only touch non-pivot columns
        red = self._gauss_jordan(piv) if hbar else self._back_substitute(piv)
        nonpiv = [k for k in range(len(cols)) if k not in piv]
        newB = [B[cols[k][0]] + LETTERS[cols[k][1]] for k in nonpiv]
        npos = {k: j for j, k in enumerate(nonpiv)}
        one = _one_like(self.relations)
        tab: list[list[dict[int, object]]] = [[None] * len(B) for _ in range(3)]
        pivots_here: dict[str, dict[int, object]] = {}
        for k, (i, l) in enumerate(cols):
            if k in npos:
                tab[l][i] = {npos[k]: one}
            else:
                entry = {npos[kk]: -v for kk, v in red[k].items() if kk != k}
                tab[l][i] = entry
                pivots_here[B[i] + LETTERS[l]] = entry
        self.tables.append(tab)
        self.basis.append(newB)
        self.index.append({w: j for j, w in enumerate(newB)})
        self._pivots.append(pivots_here)

    @staticmethod
    def _gauss_jordan(piv: dict) -> dict:
        # over the local ring a pivot row may carry non-unit entries in larger
        # pivot columns, so every pivot column is cleared from every row;
        # ascending order keeps the diagonal entries units
        rows = {m: dict(r) for m, r in piv.items()}
        for m in sorted(rows):
            rm = rows[m]
            inv = 1 / rm[m]
            rm = {k: v * inv for k, v in rm.items()}
            rows[m] = rm
            for k, r in rows.items():
                if k != m and m in r:
                    f = r.pop(m)
                    for kk, v in rm.items():
                        if kk == m:
                            continue
                        nv = r[kk] - f * v if kk in r else -f * v
                        if nv:
                            r[kk] = nv
                        else:
                            r.pop(kk, None)
        return rows

    @staticmethod
    def _back_substitute(piv: dict) -> dict:
        red: dict[int, dict[int, object]] = {}
        for m in sorted(piv):
            row = dict(piv[m])
            while True:
                ks = [k for k in row if k != m and k in piv]
                if not ks:
                    break
                k = max(ks)
                f = row.pop(k)
                for kk, v in red[k].items():
                    if kk == k:
                        continue
                    nv = row[kk] - f * v if kk in row else -f * v
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            red[m] = row
        return red

    @staticmethod
    def _insert_row(row: dict, piv: dict, hbar: bool) -> None:
        while row:
            if hbar:
                v = _row_valuation(row)
                if v:
                    row = {k: x.shift(-v) for k, x in row.items()}
                m = max(k for k, x in row.items() if _is_unit(x))
            else:
                m = max(row)
            if m in piv:
                f = row[m]
                for k, v in piv[m].items():
                    nv = row[k] - f * v if k in row else -f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                inv = 1 / row[m]
                piv[m] = {k: v * inv for k, v in row.items()}
                return

    # -- basic data ---------------------------------------------------
    def dim(self, d: int) -> int:
        self._check_cap(d)
        return len(self.basis[d])

    def hilbert_dims(self, d_max: int | None = None) -> list[int]:
        d_max = self.degree_cap if d_max is None else d_max
        self._check_cap(d_max)
        return [len(self.basis[d]) for d in range(d_max + 1)]

    def _check_cap(self, d: int) -> None:
        if d > self.degree_cap:
            raise CapExceeded(f"degree {d}", self.degree_cap)

    @property
    def rules(self) -> list[tuple[str, NCPoly]]:
        """Reduced Groebner basis up to the cap: (leading word, normal form of it)."""
        if self._rules is None:
            out = []
            for d in range(2, self.degree_cap + 1):
                normal = self.index[d - 1]
                for w, entry in sorted(self._pivots[d].items(), key=lambda t: word_key(t[0])):
                    if w[1:] in normal:
                        out.append((w, self.vec_to_poly(d, entry)))
            self._rules = out
        return self._rules

    # -- vectors ------------------------------------------------------
    def vec_to_poly(self, d: int, vec: Mapping[int, object]) -> NCPoly:
        B = self.basis[d]
        r = NCPoly()
        r.terms = {B[j]: v for j, v in vec.items() if v}
        return r

    def rmul_letter(self, d: int, vec: Mapping[int, object], l: int) -> dict[int, object]:
        """Right multiplication of a degree-d vector by the letter ``l``."""
        self._check_cap(d + 1)
        tab = self.tables[d][l]
        out: dict[int, object] = {}
        for i, c in vec.items():
            for j, v in tab[i].items():
                nv = out[j] + c * v if j in out else c * v
                if nv:
                    out[j] = nv
                else:
                    del out[j]
        return out

    def word_vec(self, w: str) -> dict[int, object]:
        """Normal form of a single word as a vector in degree len(w)."""
        d = len(w)
        self._check_cap(d)
        j = self.index[d].get(w)
        if j is not None:
            return {j: 1}
        cached = self._word_cache.get(w)
        if cached is not None:
            return cached
        out = self.rmul_letter(d - 1, self.word_vec(w[:-1]), _LIDX[w[-1]])
        self._word_cache[w] = out
        return out

    def to_vecs(self, p: NCPoly) -> dict[int, dict[int, object]]:
        """Normal form split by degree."""
        out: dict[int, dict[int, object]] = {}
        for w, c in p.terms.items():
            vec = out.setdefault(len(w), {})
            for j, v in self.word_vec(w).items():
                nv = vec[j] + c * v if j in vec else c * v
                if nv:
                    vec[j] = nv
                else:
                    del vec[j]
        return {d: v for d, v in out.items() if v}

    def from_vecs(self, vecs: Mapping[int, Mapping[int, object]]) -> NCPoly:
        r = NCPoly()
        for d, vec in vecs.items():
            B = self.basis[d]
            for j, v in vec.items():
                if v:
                    r.terms[B[j]] = v
        return r

    # -- normal forms -------------------------------------------------
    def normal_form(self, p: NCPoly) -> NCPoly:
        deg = p.degree()
        if deg > self.degree_cap:
            raise CapExceeded(f"normal form of degree {deg}", self.degree_cap)
        return self.from_vecs(self.to_vecs(p))

    nf = normal_form

    def mul(self, p: NCPoly, q: NCPoly) -> NCPoly:
        """Normal form of p*q, multiplying p's normal form on the right by q's words."""
        if p.degree() + q.degree() > self.degree_cap:
            raise CapExceeded(f"product of degree {p.degree() + q.degree()}", self.degree_cap)
        pv = self.to_vecs(p)
        qn = self.normal_form(q)
        # trie over q's words so shared prefixes are multiplied once
        trie: dict = {}
        for w, c in qn.terms.items():
            node = trie
            for ch in w:
                node = node.setdefault(ch, {})
            node[None] = c
        out: dict[int, dict[int, object]] = {}

        def walk(node, d, vec, depth):
            if None in node:
                c = node[None]
                tgt = out.setdefault(d, {})
                for j, v in vec.items():
                    nv = tgt[j] + c * v if j in tgt else c * v
                    if nv:
                        tgt[j] = nv
                    else:
                        del tgt[j]
            for ch, child in node.items():
                if ch is None:
                    continue
                nvec = self.rmul_letter(d, vec, _LIDX[ch])
                if nvec:
                    walk(child, d + 1, nvec, depth + 1)

        for d, vec in pv.items():
            walk(trie, d, vec, 0)
        return self.from_vecs({d: v for d, v in out.items() if v})

    def power(self, p: NCPoly, k: int) -> NCPoly:
        r = NCPoly.const(_one_like(self.relations))
        for _ in range(k):
            r = self.mul(r, p)
        return r

    def product(self, *factors: NCPoly) -> NCPoly:
        r = NCPoly.const(_one_like(self.relations))
        for f in factors:
            r = self.mul(r, f)
        return r

    def commutator(self, p: NCPoly, q: NCPoly) -> NCPoly:
        return self.mul(p, q) - self.mul(q, p)

    def is_central(self, p: NCPoly) -> "CentralityResult":
        if p.degree() + 1 > self.degree_cap:
            raise CapExceeded(f"centrality test in degree {p.degree() + 1}", self.degree_cap)
        for ch in LETTERS:
            c = self.commutator(p, NCPoly.word(ch, _one_like(self.relations)))
            if c:
                return CentralityResult(False, ch, c)
        return CentralityResult(True, None, None)

    def assert_central(self, p: NCPoly, what: str = "element") -> None:
        res = self.is_central(p)
        if not res:
            raise FalsificationError(f"{what} is not central: [{what}, {res.generator}] != 0", res)


class CentralityResult:
    """Truthy iff central; otherwise carries the failing generator and commutator."""

    __slots__ = ("central", "generator", "commutator")

    def __init__(self, central: bool, generator: str | None, comm: NCPoly | None):
        self.central = central
        self.generator = generator
        self.commutator = comm

    def __bool__(self):
        return self.central

    def __iter__(self):
        return iter((self.central, self.generator, self.commutator))

    def __repr__(self):
        if self.central:
            return "CentralityResult(central)"
        return f"CentralityResult(not central, [p, {self.generator}] = {self.commutator!r})"


def _one_like(rels: list[NCPoly]):
    for r in rels:
        for v in r.terms.values():
            if isinstance(v, HbarScalar):
                return HbarScalar.coerce(1, v.m)
    return Fraction(1)


def _tag(rels: list[NCPoly]) -> str:
    vals = [v for r in rels for v in r.terms.values()]
    if any(isinstance(v, HbarScalar) for v in vals):
        return "hbar"
    if any(isinstance(v, CycNum) for v in vals):
        return "cyc"
    return "Q"


def build_rewrite_system(params, degree_cap: int) -> RewriteSystem:
    """Normal-form system for S(a,b,c) up to ``degree_cap``; checks the Hilbert dimensions."""
    params = as_params(params)
    rels = relations(params)
    rs = RewriteSystem(params, degree_cap, rels, _tag(rels))
    _certify_dims(rs)
    return rs


def build_hbar_system(rels: list[NCPoly], degree_cap: int, params: SklyaninParams | None = None) -> RewriteSystem:
    """Same construction with HbarScalar coefficients; pivots are units at hbar = 0."""
    if _tag(rels) != "hbar":
        raise ScalarError("build_hbar_system expects HbarScalar relation coefficients")
    rs = RewriteSystem(params, degree_cap, rels, "hbar")
    _certify_dims(rs)
    for d in range(2, degree_cap + 1):
        for entry in rs._pivots[d].values():
            for v in entry.values():
                if not v.den[0]:
                    raise InternalConsistencyError("rule coefficient has a pole at hbar = 0")
    return rs


def _certify_dims(rs: RewriteSystem) -> None:
    for d, n in enumerate(rs.hilbert_dims()):
        if n != (d + 1) * (d + 2) // 2:
            raise InternalConsistencyError(
                f"degree {d} has {n} normal words, expected {(d + 1) * (d + 2) // 2}")


_SYSTEM_CACHE: dict[tuple, RewriteSystem] = {}


def cached_system(params, degree_cap: int) -> RewriteSystem:
    """Shared system with at least ``degree_cap``; larger cached systems are reused."""
    params = as_params(params)
    key = tuple(str(x) for x in params.triple)
    rs = _SYSTEM_CACHE.get(key)
    if rs is None or rs.degree_cap < degree_cap:
        rs = build_rewrite_system(params, degree_cap)
        _SYSTEM_CACHE[key] = rs
    return rs


def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normal_form(p)


def is_central(p: NCPoly, rs: RewriteSystem) -> CentralityResult:
    return rs.is_central(p)


def hilbert_dims(params, d_max: int) -> list[int]:
    rs = build_rewrite_system(params, max(d_max, 2))
    return rs.hilbert_dims(d_max)


# -- independent oracle -------------------------------------------------

def reduce_with_rules(p: NCPoly, rules: list[tuple[str, NCPoly]], strategy: str = "leftmost",
                      max_steps: int = 10 ** 6) -> NCPoly:
    """Naive rewriting by substring replacement, used to cross-check normal forms.

    ``strategy`` picks the leftmost or rightmost redex in the largest reducible word.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(strategy)
    lead = {w: tail for w, tail in rules}
    lens = sorted({len(w) for w in lead})
    cur = dict(p.terms)
    done: dict[str, object] = {}
    steps = 0
    while cur:
        w = max(cur, key=word_key)
        c = cur.pop(w)
        hit = None
        positions = range(len(w)) if strategy == "leftmost" else range(len(w) - 1, -1, -1)
        for s in positions:
            for L in lens:
                if s + L <= len(w) and w[s:s + L] in lead:
                    hit = (s, L)
                    break
            if hit:
                break
        if hit is None:
            done[w] = c
            continue
        steps += 1
        if steps > max_steps:
            raise CapExceeded("rewriting steps", max_steps)
        s, L = hit
        pre, post = w[:s], w[s + L:]
        for tw, tv in lead[w[s:s + L]].terms.items():
            nw = pre + tw + post
            nv = cur[nw] + c * tv if nw in cur else c * tv
            if nv:
                cur[nw] = nv
            else:
                cur.pop(nw, None)
    r = NCPoly()
    r.terms = done
    return r
