"""Monomials, monomial orders and sparse polynomials in x0..x3."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .field import Field, FieldError

NVARS = 4
VARS = tuple(f"x{i}" for i in range(NVARS))
Exps = tuple  # 4-tuple of nonnegative ints

ZERO_EXPS = (0,) * NVARS


def grevlex_key(e: Exps):
    """Sort key: larger key means larger monomial in grevlex x0 > x1 > x2 > x3."""
    return (sum(e), -e[3], -e[2], -e[1], -e[0])


def mono_mul(a: Exps, b: Exps) -> Exps:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def mono_divides(a: Exps, b: Exps) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def mono_div(b: Exps, a: Exps) -> Exps:
    return (b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3])


def mono_lcm(a: Exps, b: Exps) -> Exps:
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def monomials_of_degree(d: int) -> list[Exps]:
    """All exponent vectors of total degree d, in grevlex-descending order."""
    if d < 0:
        return []
    out = [
        (d - a - b - c, a, b, c)
        for c in range(d + 1)
        for b in range(d + 1 - c)
        for a in range(d + 1 - b - c)
    ]
    out.sort(key=grevlex_key, reverse=True)
    return out


@dataclass(frozen=True)
class Monomial:
    exponents: Exps

    def __post_init__(self):
        if len(self.exponents) != NVARS or any(e < 0 for e in self.exponents):
            raise ValueError(f"bad exponent vector {self.exponents}")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(mono_mul(self.exponents, other.exponents))

    def divides(self, other: "Monomial") -> bool:
        return mono_divides(self.exponents, other.exponents)

    def __str__(self):
        return _format_monomial(self.exponents) or "1"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; module orders compare (position, monomial) pairs.

    kind is one of "grevlex", "lex", "elim" (first ``k`` variables eliminated,
    ties broken by grevlex), "pot" or "top" (module orders over ``base``;
    position 0 is the largest position). ``degrees`` gives the generator
    degrees of the ambient free module, used by "top".
    """

    kind: str = "grevlex"
    k: int = 0
    base: str = "grevlex"
    degrees: tuple = ()

    def key(self, m):
        if self.kind in ("pot", "top"):
            pos, e = m
            b = MonomialOrder(self.base, self.k).key(e)
            if self.kind == "pot":
                return (-pos, b)
            shift = self.degrees[pos] if self.degrees else 0
            return (sum(e) + shift, b, -pos)
        e = m.exponents if isinstance(m, Monomial) else m
        if self.kind == "grevlex":
            return grevlex_key(e)
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "elim":
            return (sum(e[: self.k]), grevlex_key(e))
        raise ValueError(f"unknown order kind {self.kind!r}")


GREVLEX = MonomialOrder("grevlex")


def order_compare(m1, m2, order: MonomialOrder = GREVLEX) -> str:
    """Return "LT", "EQ" or "GT"."""
    k1, k2 = order.key(m1), order.key(m2)
    if k1 == k2:
        return "EQ"
    return "GT" if k1 > k2 else "LT"


def _format_monomial(e: Exps) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(VARS[i])
        elif a > 1:
            parts.append(f"{VARS[i]}^{a}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial over a ``Field``.

    ``terms`` maps exponent 4-tuples to nonzero field coefficients.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: Field, terms: Mapping[Exps, object] | None = None, *, _clean=False):
        self.field = field
        if _clean:
            self._terms = dict(terms)
        else:
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != NVARS:
                    raise ValueError(f"exponent vector {e} must have length {NVARS}")
                c = field(c)
                if c:
                    clean[e] = field.add(clean.get(e, 0), c) if e in clean else c
            self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls(field, {}, _clean=True)

    @classmethod
    def constant(cls, field: Field, c) -> "Polynomial":
        return cls(field, {ZERO_EXPS: c})

    @classmethod
    def var(cls, field: Field, i: int) -> "Polynomial":
        e = [0] * NVARS
        e[i] = 1
        return cls(field, {tuple(e): 1}, _clean=True)

    @classmethod
    def linear(cls, field: Field, coeffs: Iterable) -> "Polynomial":
        """The linear form sum c_i x_i."""
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * NVARS
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, terms)

    @classmethod
    def parse(cls, text: str, field: Field) -> "Polynomial":
        return parse_polynomial(text, field)

    # basic queries ------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list:
        """(exps, coeff) pairs in grevlex-descending order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms; None for the zero polynomial.

        Raises ValueError when the polynomial is not homogeneous.
        """
        degs = {sum(e) for e in self._terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop()

    def coefficient(self, e: Exps):
        return self._terms.get(tuple(e), self.field(0))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        add = self.field.add
        for e, c in other._terms.items():
            v = add(out[e], c) if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.field, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial(self.field, {e: neg(c) for e, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.field, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.field)
        mul = self.field.mul
        return Polynomial(self.field, {e: mul(v, c) for e, v in self._terms.items()}, _clean=True)

    def mul_monomial(self, m: Exps, c=1) -> "Polynomial":
        c = self.field(c)
        mul = self.field.mul
        return Polynomial(
            self.field, {mono_mul(e, m): mul(v, c) for e, v in self._terms.items()}, _clean=True
        )

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.field.inv(self.leading_term()[1]))

    def evaluate(self, point) -> object:
        """Value at a point (sequence of 4 field values)."""
        f = self.field
        pt = [f(x) for x in point]
        total = f(0)
        for e, c in self._terms.items():
            v = c
            for x, a in zip(pt, e):
                if a:
                    v = f.mul(v, f(x) ** a if f.p is None else pow(x, a, f.p))
            total = f.add(total, v)
        return total

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Replace x_i by images[i] (e.g. a linear change of coordinates)."""
        one = Polynomial.constant(self.field, 1)
        powers: dict = {}

        def pw(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = images[i] ** a
            return powers[key]

        total = Polynomial.zero(self.field)
        for e, c in self._terms.items():
            t = one.scale(c)
            for i, a in enumerate(e):
                if a:
                    t = t * pw(i, a)
            total = total + t
        return total

    def permute_vars(self, perm) -> "Polynomial":
        """Rename x_i to x_{perm[i]}."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * NVARS
            for i, a in enumerate(e):
                ne[perm[i]] = a
            out[tuple(ne)] = c
        return Polynomial(self.field, out, _clean=True)

    def diff(self, i: int) -> "Polynomial":
        f = self.field
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = f.mul(c, f(e[i]))
                if v:
                    out[tuple(ne)] = v
        return Polynomial(f, out, _clean=True)

    # comparison / display -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.field, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            c = self.field.lift(c)
            mono = _format_monomial(e)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.field})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(x[0-3])|(\^)|(\*)|([+-])|(\()|(\)))")


def parse_polynomial(text: str, field: Field) -> Polynomial:
    """Parse the text format: integer/rational coefficients, x0..x3, ``^`` powers.

    Products are written with ``*``; parentheses are allowed.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = m.end()
        for kind, val in zip(("num", "var", "pow", "mul", "sign", "lp", "rp"), m.groups()):
            if val is not None:
                tokens.append((kind, val))
                break
    if not tokens:
        raise ValueError("empty polynomial")
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr():
        kind, val = peek()
        sign = 1
        if kind == "sign":
            take()
            sign = -1 if val == "-" else 1
        acc = term().scale(sign)
        while peek()[0] == "sign":
            _, val = take()
            t = term()
            acc = acc + t if val == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek()[0] == "mul":
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = peek()
        if kind == "num":
            take()
            base = Polynomial.constant(field, Fraction(val))
        elif kind == "var":
            take()
            base = Polynomial.var(field, int(val[1]))
        elif kind == "lp":
            take()
            base = expr()
            if peek()[0] != "rp":
                raise ValueError("unbalanced parentheses")
            take()
        else:
            raise ValueError(f"unexpected token {val!r}")
        if peek()[0] == "pow":
            take()
            k, v = take()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(v)
        return base

    result = expr()
    if idx != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def poly_ops(f: Polynomial, g, op: str) -> Polynomial:
    """``op`` in {"add", "mul", "scale"}; for "scale", g is a scalar."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def variables(field: Field) -> tuple[Polynomial, ...]:
    return tuple(Polynomial.var(field, i) for i in range(NVARS))
