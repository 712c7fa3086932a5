"""Hilbert series, functions and polynomials from lead-term data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .poly import NVARS, mono_divides


def _minimalize(gens) -> tuple:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def _padd(a: dict, b: dict, shift: int = 0, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + sign * v
        if not out[k + shift]:
            del out[k + shift]
    return out


@lru_cache(maxsize=20000)
def _numerator(gens: tuple) -> tuple:
    """K-polynomial numerator of S/(gens) as sorted (exp, coeff) pairs."""
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    # base case: pairwise coprime generators
    support = [0] * NVARS
    coprime = True
    for g in gens:
        for i, a in enumerate(g):
            if a:
                if support[i]:
                    coprime = False
                support[i] += 1
    if coprime:
        poly = {0: 1}
        for g in gens:
            poly = _padd(poly, poly, sum(g), -1)
        return tuple(sorted(poly.items()))
    # pivot on the variable shared by most generators, at its median exponent
    i = max(range(NVARS), key=lambda v: support[v])
    exps = sorted(g[i] for g in gens if g[i])
    a = exps[len(exps) // 2]
    # keep the pivot outside the ideal: stay below a pure power of x_i
    pure = [g[i] for g in gens if g[i] and sum(g) == g[i]]
    if pure:
        a = min(a, min(pure) - 1)
    piv = tuple(a if j == i else 0 for j in range(NVARS))
    plus = _minimalize(gens + (piv,))
    colon = _minimalize(tuple(tuple(max(x - y, 0) for x, y in zip(g, piv)) for g in gens))
    n1 = dict(_numerator(plus))
    n2 = dict(_numerator(colon))
    return tuple(sorted(_padd(n1, n2, a).items()))


def monomial_numerator(gens) -> dict:
    """Numerator N(t) with HS(S/(gens)) = N(t) / (1 - t)^4."""
    return dict(_numerator(_minimalize(tuple(tuple(g) for g in gens))))


def module_numerator(lead_terms, degrees) -> dict:
    """Numerator for F/N where F has generator ``degrees`` and N has the given
    lead terms, a list of (position, exps)."""
    by_pos: dict = {i: [] for i in range(len(degrees))}
    for pos, e in lead_terms:
        by_pos[pos].append(e)
    total: dict = {}
    for pos, gens in by_pos.items():
        total = _padd(total, monomial_numerator(gens), degrees[pos])
    return total


def _binom_poly(k: int) -> list[Fraction]:
    """Coefficients (constant first) of C(t - k + 3, 3) as a polynomial in t."""
    # (t-k+3)(t-k+2)(t-k+1)/6
    poly = [Fraction(1)]
    for c in (3 - k, 2 - k, 1 - k):
        new = [Fraction(0)] * (len(poly) + 1)
        for i, v in enumerate(poly):
            new[i] += v * c
            new[i + 1] += v
        poly = new
    return [v / 6 for v in poly]


@dataclass(frozen=True)
class HilbertData:
    """Hilbert data of a graded module: HS(t) = numerator(t) / (1 - t)^4."""

    numerator: dict

    @property
    def hilbert_polynomial(self) -> list[Fraction]:
        """Coefficients, constant term first, trailing zeros stripped."""
        out = [Fraction(0)] * 4
        for k, n in self.numerator.items():
            for i, v in enumerate(_binom_poly(k)):
                out[i] += n * v
        while out and out[-1] == 0:
            out.pop()
        return out

    @property
    def regularity_bound(self) -> int:
        """HF(d) = HP(d) for every d >= this bound."""
        if not self.numerator:
            return -(10**9)
        return max(self.numerator) - 3

    def hilbert_function(self, d: int) -> int:
        total = 0
        for k, n in self.numerator.items():
            if d - k >= 0:
                total += n * comb(d - k + 3, 3)
        return total

    def hilbert_polynomial_at(self, d: int) -> Fraction:
        return sum((c * d**i for i, c in enumerate(self.hilbert_polynomial)), Fraction(0))

    @property
    def dimension(self) -> int:
        """Krull dimension (projective dimension + 1); -1 for the zero module."""
        hp = self.hilbert_polynomial
        if hp:
            return len(hp)
        return 0 if self.numerator else -1

    @property
    def degree(self) -> int:
        """Leading coefficient of HP times (dim - 1)!."""
        hp = self.hilbert_polynomial
        if not hp:
            return sum(self.numerator.values()) if self.numerator else 0
        from math import factorial

        return int(hp[-1] * factorial(len(hp) - 1))

    def series_string(self) -> str:
        terms = [f"{c}*t^{k}" for k, c in sorted(self.numerator.items())]
        return f"({' + '.join(terms) or '0'}) / (1-t)^4"

    def to_json(self) -> dict:
        return {
            "numerator": {str(k): v for k, v in sorted(self.numerator.items())},
            "hilbert_polynomial": [str(c) for c in self.hilbert_polynomial],
            "regularity_bound": self.regularity_bound,
        }


def polynomial_string(coeffs: list[Fraction], var: str = "t") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = f"-{mono}"
        elif mono:
            s = f"{c}*{mono}"
        else:
            s = str(c)
        parts.append(s)
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def hilbert_difference(a: HilbertData, b: HilbertData) -> HilbertData:
    return HilbertData(_padd(a.numerator, b.numerator, 0, -1))


def hilbert_sum(a: HilbertData, b: HilbertData) -> HilbertData:
    return HilbertData(_padd(a.numerator, b.numerator))


def shift(h: HilbertData, a: int) -> HilbertData:
    """Hilbert data of M(a)."""
    return HilbertData({k - a: v for k, v in h.numerator.items()})
