"""Sparse commutative polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactfield import CycNum, format_cycnum, parse_cycnum

CENTER_VARS = ("z1", "z2", "z3", "g")


def _simp(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    if isinstance(v, int):
        return Fraction(v)
    return v


class CPoly:
    """Polynomial in a fixed tuple of variables; terms map exponent tuples to scalars."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: Sequence[str] = CENTER_VARS):
        self.vars = tuple(vars)
        self.terms: dict[tuple, object] = {}
        if terms:
            for e, v in terms.items():
                if len(e) != len(self.vars):
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                v = _simp(v)
                if v:
                    self.terms[tuple(e)] = v

    @classmethod
    def var(cls, name: str, vars: Sequence[str] = CENTER_VARS) -> "CPoly":
        e = tuple(1 if v == name else 0 for v in vars)
        if not any(e):
            raise ValueError(f"unknown variable {name}")
        return cls({e: 1}, vars)

    @classmethod
    def const(cls, c, vars: Sequence[str] = CENTER_VARS) -> "CPoly":
        return cls({(0,) * len(vars): c}, vars)

    def _new(self, terms: dict) -> "CPoly":
        r = CPoly.__new__(CPoly)
        r.vars = self.vars
        r.terms = terms
        return r

    def _lift(self, other) -> "CPoly":
        if isinstance(other, CPoly):
            if other.vars != self.vars:
                raise ValueError("variable mismatch")
            return other
        return CPoly.const(other, self.vars)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.vars == other.vars and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, v in o.terms.items():
            nv = out[e] + v if e in out else v
            if nv:
                out[e] = _simp(nv)
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            if not other:
                return self._new({})
            return self._new({e: _simp(v * other) for e, v in self.terms.items()})
        o = self._lift(other)
        out: dict[tuple, object] = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                nv = out[e] + v1 * v2 if e in out else v1 * v2
                if nv:
                    out[e] = nv
                else:
                    out.pop(e, None)
        return self._new({e: _simp(v) for e, v in out.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s) if isinstance(s, int) else 1 / s)

    def __pow__(self, k: int):
        r = CPoly.const(1, self.vars)
        for _ in range(k):
            r = r * self
        return r

    # -- queries ------------------------------------------------------
    def coeff(self, e: Sequence[int]):
        return self.terms.get(tuple(e), 0)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * x for w, x in zip(weights, e)) for e in self.terms}

    def is_weighted_homogeneous(self, weights: Sequence[int]) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coeff_in(self, var: str, k: int) -> "CPoly":
        """Coefficient of var^k as a polynomial in the remaining variables (var kept with exponent 0)."""
        i = self.vars.index(var)
        return self._new({e[:i] + (0,) + e[i + 1:]: v for e, v in self.terms.items() if e[i] == k})

    def diff(self, var: str) -> "CPoly":
        i = self.vars.index(var)
        out = {}
        for e, v in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = _simp(v * e[i])
        return self._new(out)

    def evaluate(self, values: Mapping[str, object] | Sequence):
        if isinstance(values, Mapping):
            values = [values[v] for v in self.vars]
        total = Fraction(0)
        for e, v in self.terms.items():
            t = v
            for x, k in zip(values, e):
                if k:
                    t = t * x ** k
            total = total + t
        return _simp(total)

    def substitute(self, images: Mapping[str, "CPoly"]) -> "CPoly":
        """Replace each variable by a polynomial (possibly in other variables)."""
        target = next(iter(images.values())).vars
        out = CPoly(vars=target)
        for e, v in self.terms.items():
            t = CPoly.const(v, target)
            for name, k in zip(self.vars, e):
                if k:
                    img = images.get(name, None)
                    if img is None:
                        img = CPoly.var(name, target)
                    t = t * img ** k
            out = out + t
        return out

    def scale_vars(self, factors: Mapping[str, object]) -> "CPoly":
        out = {}
        for e, v in self.terms.items():
            t = v
            for name, k in zip(self.vars, e):
                if k and name in factors:
                    t = t * factors[name] ** k
            out[e] = t
        return CPoly(out, self.vars)

    def reduce_by_monic(self, F: "CPoly", var: str) -> "CPoly":
        """Remainder modulo F, where F = var^N + (terms of lower var-degree)."""
        i = self.vars.index(var)
        N = F.degree_in(var)
        lead = tuple(N if j == i else 0 for j in range(len(self.vars)))
        if F.coeff(lead) != 1 or any(e[i] == N and e != lead for e in F.terms):
            raise ValueError(f"F is not monic in {var}^{N}")
        tail = {e: -v for e, v in F.terms.items() if e != lead}
        cur = dict(self.terms)
        out: dict[tuple, object] = {}
        while cur:
            e = max(cur, key=lambda t: t[i])
            v = cur.pop(e)
            if e[i] < N:
                out[e] = v
                continue
            base = tuple(x - (N if j == i else 0) for j, x in enumerate(e))
            for te, tv in tail.items():
                ne = tuple(x + y for x, y in zip(base, te))
                nv = cur[ne] + v * tv if ne in cur else v * tv
                if nv:
                    cur[ne] = nv
                else:
                    cur.pop(ne, None)
        return CPoly({e: v for e, v in out.items() if v}, self.vars)

    # -- serialization --------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_json(self) -> list:
        return [[list(e), _scalar_str(v)] for e, v in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable, vars: Sequence[str] = CENTER_VARS, m: int = 12) -> "CPoly":
        return cls({tuple(e): parse_cycnum(s, m) for e, s in data}, vars)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, v in self.sorted_terms():
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(self.vars, e) if k)
            s = _scalar_str(v)
            if not mono:
                parts.append(f"({s})" if " " in s else s)
            elif v == 1:
                parts.append(mono)
            else:
                parts.append(f"({s})*{mono}" if (" " in s or "/" in s or s.startswith("-")) else f"{s}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"CPoly({self})"

    def to_sympy(self):
        import sympy

        syms = sympy.symbols(self.vars)
        z = sympy.Symbol("zeta12")
        out = sympy.Integer(0)
        for e, v in self.terms.items():
            out += _to_sympy_scalar(v, z) * sympy.Mul(*(s ** k for s, k in zip(syms, e)))
        return out


def _scalar_str(v) -> str:
    return format_cycnum(v) if isinstance(v, CycNum) else str(v)


def _to_sympy_scalar(v, z):
    import sympy

    if isinstance(v, CycNum):
        return sum(sympy.Rational(c.numerator, c.denominator) * z ** k for k, c in enumerate(v.c))
    return sympy.Rational(v.numerator, v.denominator)


def center_var(name: str) -> CPoly:
    return CPoly.var(name, CENTER_VARS)
