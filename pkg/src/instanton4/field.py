"""Exact coefficient fields: the rationals and prime fields GF(p), p odd."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field.

    ``p is None`` means the rationals (coefficients are ``Fraction``);
    otherwise coefficients are plain ints in ``[0, p)``.
    """

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is None:
            return
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise FieldError(f"modulus {self.p!r} is not prime")
        if self.p == 2:
            raise FieldError("characteristic 2 is not supported")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def to_json(self) -> dict:
        return {"p": self.p} if self.p is not None else {"rationals": True}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        if data.get("rationals"):
            return cls(None)
        return cls(int(data["p"]))

    # raw coefficient arithmetic; hot paths in groebner inline these
    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def lift(self, a) -> int | Fraction:
        """Symmetric representative, for printing (``p - 1`` prints as -1)."""
        if self.p is None:
            return a
        return a - self.p if a > self.p // 2 else a

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        a = self(a)
        if not a:
            return a
        if self.p is None:
            num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
            if num is None or den is None:
                return None
            return Fraction(num, den)
        return _tonelli_shanks(a, self.p)

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self(x))


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _tonelli_shanks(a: int, p: int) -> int | None:
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class FieldElement:
    """A field value bound to its field, for the public scalar API."""

    field: Field
    value: int | Fraction

    def _check(self, other: "FieldElement"):
        if not isinstance(other, FieldElement):
            return FieldElement(self.field, self.field(other))
        if other.field != self.field:
            raise FieldError(f"mixed fields: {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field}({self.value})"


def field_ops(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "mul", "inv", "neg"}.

    Unary ops act on ``b`` when given (matching ``inv(b)``), else on ``a``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    x = b if b is not None else a
    if op == "inv":
        return x.inverse()
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")
