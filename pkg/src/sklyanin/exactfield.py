"""Exact scalars: rationals, cyclotomic numbers and rational functions in hbar.

Rationals are :class:`fractions.Fraction`.  A :class:`CycNum` is an element of
the cyclotomic field Q(zeta_m), stored in the power basis of Q[z]/Phi_m(z).
A :class:`HbarScalar` is a quotient of polynomials in hbar with CycNum
coefficients whose denominator does not vanish at hbar = 0.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import ScalarError

DEFAULT_CONDUCTOR = 12

Scalar = Union[int, Fraction, "CycNum"]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ScalarError(f"conductor must be positive, got {m}")
    from sympy import Poly, Symbol, cyclotomic_poly

    t = Symbol("t")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(m, t), t).all_coeffs()))


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    # row k holds z^k mod Phi_m for 0 <= k < 2*phi - 1
    phi = cyclotomic_coeffs(m)
    deg = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg - 1, 1)):
        rows.append(tuple(cur))
        # multiply by z, then eliminate z^deg using the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [cur[i] - top * phi[i] for i in range(deg)]
    return tuple(rows)


def totient(m: int) -> int:
    return len(cyclotomic_coeffs(m)) - 1


class CycNum:
    """An element of Q(zeta_m) in the power basis modulo Phi_m."""

    __slots__ = ("m", "c", "_rational")

    def __init__(self, coeffs: Iterable, m: int = DEFAULT_CONDUCTOR):
        c = tuple(Fraction(x) for x in coeffs)
        if len(c) != totient(m):
            raise ScalarError(f"expected {totient(m)} coordinates for conductor {m}, got {len(c)}")
        self.m = m
        self.c = c
        self._rational = not any(c[1:])

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, c: tuple, m: int) -> "CycNum":
        obj = cls.__new__(cls)
        obj.m = m
        obj.c = c
        obj._rational = not any(c[1:])
        return obj

    @classmethod
    def from_rational(cls, q, m: int = DEFAULT_CONDUCTOR) -> "CycNum":
        zero = Fraction(0)
        return cls._raw((Fraction(q),) + (zero,) * (totient(m) - 1), m)

    @classmethod
    def zeta(cls, m: int = DEFAULT_CONDUCTOR, k: int = 1, order: int | None = None) -> "CycNum":
        """zeta_order^k inside Q(zeta_m); ``order`` defaults to ``m`` and must divide it."""
        order = m if order is None else order
        if m % order:
            raise ScalarError(f"zeta_{order} does not lie in Q(zeta_{m})")
        return cyc_normalize({(k * (m // order)) % m: 1}, m)

    @classmethod
    def coerce(cls, x, m: int = DEFAULT_CONDUCTOR) -> "CycNum":
        if isinstance(x, CycNum):
            return x if x.m == m else x.embed(m)
        if isinstance(x, (int, Fraction, Rational)):
            return cls.from_rational(x, m)
        if isinstance(x, str):
            return parse_cycnum(x, m)
        raise ScalarError(f"cannot coerce {x!r} to CycNum")

    # -- structure ----------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.m

    def is_rational(self) -> bool:
        return self._rational

    def to_fraction(self) -> Fraction:
        if not self._rational:
            raise ScalarError(f"{self} is not rational")
        return self.c[0]

    def embed(self, M: int) -> "CycNum":
        """Image under Q(zeta_m) -> Q(zeta_M), zeta_m -> zeta_M^(M/m)."""
        if M == self.m:
            return self
        if M % self.m:
            raise ScalarError(f"cannot embed conductor {self.m} into {M}")
        step = M // self.m
        return cyc_normalize({k * step: v for k, v in enumerate(self.c) if v}, M)

    def _common(self, other) -> tuple["CycNum", "CycNum"]:
        if other.m == self.m:
            return self, other
        M = math.lcm(self.m, other.m)
        return self.embed(M), other.embed(M)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, CycNum):
            a, b = self._common(other)
            return CycNum._raw(tuple(x + y for x, y in zip(a.c, b.c)), a.m)
        if isinstance(other, (int, Fraction)):
            return CycNum._raw((self.c[0] + other,) + self.c[1:], self.m)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(tuple(-x for x in self.c), self.m)

    def __sub__(self, other):
        if isinstance(other, CycNum):
            a, b = self._common(other)
            return CycNum._raw(tuple(x - y for x, y in zip(a.c, b.c)), a.m)
        if isinstance(other, (int, Fraction)):
            return CycNum._raw((self.c[0] - other,) + self.c[1:], self.m)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum._raw(tuple(x * other for x in self.c), self.m)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        if b._rational:
            s = b.c[0]
            return CycNum._raw(tuple(x * s for x in a.c), a.m)
        if a._rational:
            s = a.c[0]
            return CycNum._raw(tuple(x * s for x in b.c), a.m)
        deg = len(a.c)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        conv[i + j] += x * y
        table = _reduction_table(a.m)
        out = [Fraction(0)] * deg
        for k, v in enumerate(conv):
            if v:
                row = table[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += v * row[i]
        return CycNum._raw(tuple(out), a.m)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("inverse of zero CycNum")
        if self._rational:
            return CycNum.from_rational(1 / self.c[0], self.m)
        # extended Euclid in Q[z]: u*self + v*Phi_m = 1
        inv = _poly_inverse_mod(list(self.c), [Fraction(x) for x in cyclotomic_coeffs(self.m)])
        return CycNum._raw(tuple(inv), self.m)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return CycNum._raw(tuple(x / other for x in self.c), self.m)
        if isinstance(other, CycNum):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.from_rational(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, k: int) -> "CycNum":
        """Galois automorphism zeta -> zeta^k, gcd(k, m) = 1."""
        if math.gcd(k, self.m) != 1:
            raise ScalarError(f"{k} is not a unit modulo {self.m}")
        return cyc_normalize({(i * k) % self.m: v for i, v in enumerate(self.c) if v}, self.m)

    # -- comparison ---------------------------------------------------
    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycNum):
            a, b = self._common(other)
            return a.c == b.c
        if isinstance(other, (int, Fraction)):
            return self._rational and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self._rational:
            return hash(self.c[0])
        return hash((self.m, self.c))

    def __repr__(self):
        return f"CycNum({format_cycnum(self)!r}, m={self.m})"

    def __str__(self):
        return format_cycnum(self)


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        _poly_trim(a)
    return q, a


def _poly_inverse_mod(a: list, mod: list) -> list:
    deg = len(mod) - 1
    r0, r1 = list(mod), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        prod = _poly_mul(q, s1)
        s_new = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                 for i in range(max(len(s0), len(prod)))]
        s0, s1 = s1, _poly_trim(s_new)
        if not r1:
            raise ScalarError("element is not invertible modulo the cyclotomic polynomial")
    # r1 is a nonzero constant
    c = r1[0]
    out = [x / c for x in s1]
    _, out = _poly_divmod(out, mod)
    return out + [Fraction(0)] * (deg - len(out))


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def cyc_normalize(raw, m: int = DEFAULT_CONDUCTOR) -> CycNum:
    """Reduce a polynomial in zeta_m modulo Phi_m.

    ``raw`` is either a mapping exponent -> rational coefficient or a sequence
    of coefficients indexed by exponent.  Exponents are taken modulo m first.
    """
    if m < 1:
        raise ScalarError(f"conductor must be positive, got {m}")
    items = raw.items() if hasattr(raw, "items") else enumerate(raw)
    deg = totient(m)
    full = [Fraction(0)] * m
    for k, v in items:
        if v:
            full[k % m] += Fraction(v)
    phi = cyclotomic_coeffs(m)
    # reduce from the top with the monic Phi_m
    for k in range(m - 1, deg - 1, -1):
        top = full[k]
        if top:
            full[k] = Fraction(0)
            shift = k - deg
            for i in range(deg):
                if phi[i]:
                    full[shift + i] -= top * phi[i]
    return CycNum._raw(tuple(full[:deg]), m)


# -- serialization ------------------------------------------------------

def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cycnum(x: CycNum) -> str:
    """Canonical decimal-free string, e.g. ``(-3/2)*z^2 + 1/4`` with z = zeta_m."""
    parts = []
    for k in range(len(x.c) - 1, -1, -1):
        q = x.c[k]
        if not q:
            continue
        if k == 0:
            parts.append(_fmt_frac(q))
            continue
        mono = "z" if k == 1 else f"z^{k}"
        if q == 1:
            parts.append(mono)
        elif q.denominator == 1 and q > 0:
            parts.append(f"{q.numerator}*{mono}")
        else:
            parts.append(f"({_fmt_frac(q)})*{mono}")
    return " + ".join(parts) if parts else "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|([()+\-*/^])|(z))")


def parse_cycnum(text: str, m: int = DEFAULT_CONDUCTOR) -> CycNum:
    """Parse a polynomial expression in z = zeta_m with rational coefficients.

    Accepts the output of :func:`format_cycnum` as well as looser input such
    as ``"3 - z^3"``, ``"-1/2"`` or ``"2*(z^4 + 1)"``.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ScalarError(f"cannot parse scalar {text!r} at position {pos}")
        pos = mt.end()
        if mt.group(1):
            tokens.append(("num", int(mt.group(1))))
        elif mt.group(2):
            tokens.append(("op", mt.group(2)))
        else:
            tokens.append(("z", None))
    tokens.append(("end", None))
    p = _Parser(tokens, m)
    val = p.expr()
    if p.peek()[0] != "end":
        raise ScalarError(f"trailing input in scalar {text!r}")
    return val


class _Parser:
    def __init__(self, tokens, m):
        self.t = tokens
        self.i = 0
        self.m = m

    def peek(self):
        return self.t[self.i]

    def take(self):
        tok = self.t[self.i]
        self.i += 1
        return tok

    def expr(self) -> CycNum:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        val = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> CycNum:
        val = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            val = val * rhs if op == "*" else val / rhs
        return val

    def power(self) -> CycNum:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, k = self.take()
            if kind != "num":
                raise ScalarError("exponent must be an integer literal")
            base = base ** (-k if neg else k)
        return base

    def atom(self) -> CycNum:
        kind, v = self.take()
        if kind == "num":
            return CycNum.from_rational(v, self.m)
        if kind == "z":
            return CycNum.zeta(self.m)
        if (kind, v) == ("op", "("):
            val = self.expr()
            if self.take() != ("op", ")"):
                raise ScalarError("unbalanced parentheses")
            return val
        if (kind, v) == ("op", "-"):
            return -self.atom()
        raise ScalarError(f"unexpected token {v!r}")


# -- rational functions in hbar -----------------------------------------

def _coerce_poly(seq: Sequence, m: int) -> list[CycNum]:
    out = [CycNum.coerce(x, m) for x in seq]
    while out and not out[-1]:
        out.pop()
    return out


def _upoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [None] * max(len(a) - len(b) + 1, 0)
    inv_lead = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv_lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] = a[i + k] - f * y
        while a and not a[-1]:
            a.pop()
    zero = CycNum.from_rational(0, b[0].m)
    return [x if x is not None else zero for x in q], a


def _upoly_gcd(a: list, b: list) -> list:
    while b:
        _, r = _upoly_divmod(a, b)
        a, b = b, r
    return a


def _upoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    zero = CycNum.from_rational(0, a[0].m)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    while out and not out[-1]:
        out.pop()
    return out


def _upoly_add(a: list, b: list, sign: int = 1) -> list:
    n = max(len(a), len(b))
    zero = CycNum.from_rational(0, (a or b)[0].m) if (a or b) else None
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x + y if sign > 0 else x - y)
    while out and not out[-1]:
        out.pop()
    return out


class HbarScalar:
    """A rational function num(hbar)/den(hbar) with den(0) != 0.

    The canonical form has gcd(num, den) = 1 and den(0) = 1, so equality is
    coefficient-wise.
    """

    __slots__ = ("num", "den", "m")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), m: int = DEFAULT_CONDUCTOR):
        num_p = _coerce_poly(num, m)
        den_p = _coerce_poly(den, m)
        if not den_p:
            raise ZeroDivisionError("HbarScalar with zero denominator")
        if num_p:
            g = _upoly_gcd(num_p, den_p)
            if len(g) > 1:
                num_p, r1 = _upoly_divmod(num_p, g)
                den_p, r2 = _upoly_divmod(den_p, g)
                assert not r1 and not r2
        else:
            den_p = [CycNum.from_rational(1, m)]
        if not den_p[0]:
            raise ScalarError("denominator vanishes at hbar = 0; not a valid specialization coefficient")
        c0 = den_p[0]
        if c0 != 1:
            inv = c0.inverse()
            num_p = [x * inv for x in num_p]
            den_p = [x * inv for x in den_p]
        self.num = tuple(num_p)
        self.den = tuple(den_p)
        self.m = m

    @classmethod
    def _make(cls, num, den, m):
        # fast path: skip gcd when den is 1
        if len(den) == 1 and den[0] == 1:
            obj = cls.__new__(cls)
            obj.num = tuple(num)
            obj.den = tuple(den)
            obj.m = m
            return obj
        return cls(num, den, m)

    @classmethod
    def hbar(cls, m: int = DEFAULT_CONDUCTOR) -> "HbarScalar":
        return cls((0, 1), (1,), m)

    @classmethod
    def coerce(cls, x, m: int = DEFAULT_CONDUCTOR) -> "HbarScalar":
        if isinstance(x, HbarScalar):
            return x
        return cls._make(_coerce_poly([x], m), [CycNum.from_rational(1, m)], m)

    def _lift(self, other):
        if isinstance(other, HbarScalar):
            return other
        if isinstance(other, (int, Fraction, CycNum)):
            return HbarScalar.coerce(other, self.m)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return HbarScalar._make(_upoly_add(list(self.num), list(o.num)), list(self.den), self.m) \
                if len(self.den) == 1 else HbarScalar(_upoly_add(list(self.num), list(o.num)), self.den, self.m)
        num = _upoly_add(_upoly_mul(list(self.num), list(o.den)), _upoly_mul(list(o.num), list(self.den)))
        return HbarScalar(num, _upoly_mul(list(self.den), list(o.den)), self.m)

    __radd__ = __add__

    def __neg__(self):
        return HbarScalar._make([-x for x in self.num], list(self.den), self.m) if len(self.den) == 1 \
            else HbarScalar([-x for x in self.num], self.den, self.m)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        num = _upoly_mul(list(self.num), list(o.num))
        den = _upoly_mul(list(self.den), list(o.den))
        if len(den) == 1:
            return HbarScalar._make(num, den, self.m)
        return HbarScalar(num, den, self.m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero HbarScalar")
        return HbarScalar(_upoly_mul(list(self.num), list(o.den)), _upoly_mul(list(self.den), list(o.num)), self.m)

    def __rtruediv__(self, other):
        return HbarScalar.coerce(other, self.m) / self

    def __pow__(self, k: int):
        if k < 0:
            return HbarScalar.coerce(1, self.m) / self ** (-k)
        result = HbarScalar.coerce(1, self.m)
        for _ in range(k):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def valuation(self) -> float:
        for k, x in enumerate(self.num):
            if x:
                return k
        return math.inf

    def eval0(self) -> CycNum:
        """Specialize at hbar = 0."""
        if not self.num:
            return CycNum.from_rational(0, self.m)
        return self.num[0] / self.den[0]

    def shift(self, k: int) -> "HbarScalar":
        """Multiply by hbar^k; negative k requires valuation >= -k."""
        if k >= 0:
            zero = CycNum.from_rational(0, self.m)
            return HbarScalar._make([zero] * k + list(self.num), list(self.den), self.m) if self.num else self
        if self.valuation() < -k:
            raise ScalarError(f"cannot divide {self} by hbar^{-k}")
        return HbarScalar(list(self.num[-k:]), self.den, self.m)

    def __repr__(self):
        return f"HbarScalar({self})"

    def __str__(self):
        def fmt(p):
            terms = []
            for k, x in enumerate(p):
                if x:
                    s = format_cycnum(x)
                    terms.append(s if k == 0 else f"({s})*h^{k}")
            return " + ".join(terms) or "0"
        if len(self.den) == 1:
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


def hbar_valuation(s: HbarScalar) -> float:
    """Largest v with hbar^v dividing the numerator; ``math.inf`` for zero."""
    if not isinstance(s, HbarScalar):
        raise ScalarError(f"expected an HbarScalar, got {type(s).__name__}")
    if not s.den or not s.den[0]:
        raise ScalarError("denominator vanishes at hbar = 0")
    return s.valuation()


def eval0(x):
    """Set hbar = 0; plain scalars pass through."""
    return x.eval0() if isinstance(x, HbarScalar) else x


def to_cycnum(x, m: int = DEFAULT_CONDUCTOR) -> CycNum:
    return CycNum.coerce(x, m)
