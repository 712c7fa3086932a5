"""Buchberger Groebner bases for graded submodules of free S-modules.

S = k[x0..x3]. Internally a module element is a dict mapping a term key to a
coefficient. Keys are 7-tuples built so that *smaller key = larger term*:

    pot: (pos, -deg, e3, e2, e1, e0, 0)       position first, then grevlex
    top: (0, -(deg + degrees[pos]), e3, e2, e1, e0, pos)

Both layouts are linear in the exponents, so multiplying a term by a
monomial is adding a fixed shift vector to its key. Leading terms are found
with a min-heap over keys (lazy deletion).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .field import Field, FieldError
from .poly import NVARS, Polynomial, mono_divides, mono_lcm

POT = "pot"
TOP = "top"


class InhomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class FreeModule:
    """Graded free module; ``degrees[i]`` is the degree of basis vector i.

    So ``FreeModule((1, 1))`` is 2S(-1) and ``FreeModule((-1,))`` is S(1).
    """

    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees:
            raise ValueError("free module must have positive rank")

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def twists(self) -> tuple:
        """The sheaf twists: basis vector of degree d spans S(-d)."""
        return tuple(-d for d in self.degrees)

    def shift(self, a: int) -> "FreeModule":
        """F(a): every generator degree drops by a."""
        return FreeModule(tuple(d - a for d in self.degrees))

    def __add__(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.degrees + other.degrees)

    def __str__(self):
        parts = []
        for d in sorted(set(self.degrees)):
            n = self.degrees.count(d)
            tw = f"S({-d})" if d else "S"
            parts.append(f"{n}{tw}" if n > 1 else tw)
        return " + ".join(parts)


def vector_degree(vec: Sequence[Polynomial], ambient: FreeModule) -> int | None:
    """Internal degree of a homogeneous vector; None for zero."""
    deg = None
    for f, d in zip(vec, ambient.degrees):
        for e in f._terms:
            t = sum(e) + d
            if deg is None:
                deg = t
            elif deg != t:
                raise InhomogeneousError(f"vector {[str(g) for g in vec]} is not homogeneous")
    return deg


class _Elem:
    """A basis element in internal form."""

    __slots__ = ("terms", "lead", "pos", "lexps", "deg")

    def __init__(self, terms: list, deg: int):
        self.terms = terms  # [(key, coeff)] sorted by key (leading term first)
        self.lead = terms[0][0]
        k = self.lead
        self.pos = k[0] + k[6]
        self.lexps = (k[5], k[4], k[3], k[2])
        self.deg = deg


def _key(kind: str, pos: int, e, degrees) -> tuple:
    d = e[0] + e[1] + e[2] + e[3]
    if kind == POT:
        return (pos, -d, e[3], e[2], e[1], e[0], 0)
    return (0, -(d + degrees[pos]), e[3], e[2], e[1], e[0], pos)


def _shift(e) -> tuple:
    return (0, -(e[0] + e[1] + e[2] + e[3]), e[3], e[2], e[1], e[0], 0)


def _split(k):
    return k[0] + k[6], (k[5], k[4], k[3], k[2])


class Engine:
    """Shared machinery for one (field, ambient, order) triple."""

    def __init__(self, field: Field, ambient: FreeModule, kind: str = POT):
        if kind not in (POT, TOP):
            raise ValueError(f"unsupported module order {kind!r}")
        self.field = field
        self.ambient = ambient
        self.kind = kind
        self.p = field.p

    # conversion -------------------------------------------------------
    def to_internal(self, vec: Sequence[Polynomial]) -> dict:
        if len(vec) != self.ambient.rank:
            raise ValueError(f"vector of length {len(vec)} in rank {self.ambient.rank} module")
        out = {}
        for pos, f in enumerate(vec):
            if f.field != self.field:
                raise FieldError(f"mixed fields: {f.field} and {self.field}")
            for e, c in f._terms.items():
                out[_key(self.kind, pos, e, self.ambient.degrees)] = c
        return out

    def to_vector(self, d) -> list[Polynomial]:
        comps: list[dict] = [dict() for _ in range(self.ambient.rank)]
        items = d.items() if isinstance(d, dict) else d
        for k, c in items:
            pos, e = _split(k)
            comps[pos][e] = c
        return [Polynomial(self.field, t, _clean=True) for t in comps]

    def make_elem(self, d: dict) -> _Elem | None:
        if not d:
            return None
        terms = sorted(d.items())
        k = terms[0][0]
        pos, e = _split(k)
        return _Elem(terms, sum(e) + self.ambient.degrees[pos])

    # reduction ----------------------------------------------------------
    def _find_reducer(self, index: dict, k):
        pos, e = _split(k)
        for g in index.get(pos, ()):
            if mono_divides(g.lexps, e):
                return g, (e[0] - g.lexps[0], e[1] - g.lexps[1], e[2] - g.lexps[2], e[3] - g.lexps[3])
        return None, None

    def _sub_mult(self, f: dict, heap: list, g: _Elem, m, c):
        """f -= c * m * g (g monic), maintaining heap of keys."""
        s1 = -(m[0] + m[1] + m[2] + m[3])
        s2, s3, s4, s5 = m[3], m[2], m[1], m[0]
        p = self.p
        push = heapq.heappush
        if p:
            for k, gc in g.terms:
                nk = (k[0], k[1] + s1, k[2] + s2, k[3] + s3, k[4] + s4, k[5] + s5, k[6])
                old = f.get(nk)
                if old is None:
                    f[nk] = (-c * gc) % p
                    push(heap, nk)
                else:
                    v = (old - c * gc) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        else:
            for k, gc in g.terms:
                nk = (k[0], k[1] + s1, k[2] + s2, k[3] + s3, k[4] + s4, k[5] + s5, k[6])
                old = f.get(nk)
                if old is None:
                    f[nk] = -c * gc
                    push(heap, nk)
                else:
                    v = old - c * gc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]

    def reduce(self, f: dict, index: dict, full: bool = True) -> dict:
        """Normal form of f (consumed) w.r.t. monic elements in ``index``.

        With full=False only the leading term is reduced until irreducible.
        """
        heap = list(f)
        heapq.heapify(heap)
        rem = {}
        pop = heapq.heappop
        while heap:
            k = pop(heap)
            c = f.get(k)
            if c is None:
                continue
            g, m = self._find_reducer(index, k)
            if g is None:
                if not full:
                    rem.update(f)
                    return rem
                rem[k] = c
                del f[k]
                continue
            self._sub_mult(f, heap, g, m, c)
        return rem

    def monic(self, d: dict) -> dict:
        if not d:
            return d
        lead = min(d)
        c = d[lead]
        if c == 1:
            return d
        inv = self.field.inv(c)
        p = self.p
        if p:
            return {k: v * inv % p for k, v in d.items()}
        return {k: v * inv for k, v in d.items()}


def _index(elems) -> dict:
    idx: dict = {}
    for g in elems:
        idx.setdefault(g.pos, []).append(g)
    return idx


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of a graded submodule of ``ambient``."""

    ambient: FreeModule
    field: Field
    kind: str
    elems: list = dc_field(repr=False)
    reduced: bool = True
    maxdeg: int | None = None

    @property
    def engine(self) -> Engine:
        return Engine(self.field, self.ambient, self.kind)

    @property
    def generators(self) -> list[list[Polynomial]]:
        eng = self.engine
        return [eng.to_vector(g.terms) for g in self.elems]

    def polys(self) -> list[Polynomial]:
        """Generators of an ideal (rank-1 ambient) as polynomials."""
        if self.ambient.rank != 1:
            raise ValueError("polys() needs a rank-1 ambient")
        return [v[0] for v in self.generators]

    def __len__(self):
        return len(self.elems)

    def lead_monomials(self) -> list[tuple[int, tuple]]:
        return [(g.pos, g.lexps) for g in self.elems]

    def is_zero(self) -> bool:
        return not self.elems

    def normal_form(self, vec) -> list[Polynomial]:
        eng = self.engine
        if isinstance(vec, Polynomial):
            vec = [vec]
        rem = eng.reduce(eng.to_internal(vec), _index(self.elems))
        return eng.to_vector(rem)

    def contains(self, vec) -> bool:
        if self.maxdeg is not None:
            if isinstance(vec, Polynomial):
                vec = [vec]
            d = vector_degree(vec, self.ambient)
            if d is not None and d > self.maxdeg:
                raise ValueError(f"degree {d} exceeds truncation degree {self.maxdeg}")
        eng = self.engine
        if isinstance(vec, Polynomial):
            vec = [vec]
        return not eng.reduce(eng.to_internal(vec), _index(self.elems))

    def key(self) -> tuple:
        """Canonical hashable form; equal iff the reduced bases agree."""
        return tuple(tuple(g.terms) for g in self.elems)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.field == other.field
            and self.kind == other.kind
            and self.key() == other.key()
        )


def _gm_update(pairs: list, basis: list, elems: list, h: int, ideal: bool):
    """Gebauer-Moeller installation of element h.

    pairs are tuples (deg, lcm_exps, i, j); basis is a list of indices.
    """
    H = elems[h]
    hpos, hl = H.pos, H.lexps
    cand = []
    for g in basis:
        G = elems[g]
        if G.pos != hpos:
            continue
        lcm = mono_lcm(hl, G.lexps)
        coprime = all(a == 0 or b == 0 for a, b in zip(hl, G.lexps))
        cand.append((g, lcm, coprime and ideal))
    # chain criterion among the new pairs
    keep = []
    for i, (g, lcm, coprime) in enumerate(cand):
        if coprime:
            keep.append((g, lcm, coprime))
            continue
        redundant = False
        for j, (g2, lcm2, cp2) in enumerate(cand):
            if j == i:
                continue
            if mono_divides(lcm2, lcm) and (lcm2 != lcm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append((g, lcm, coprime))
    # drop product-criterion pairs (ideal case only)
    new_pairs = [
        (sum(lcm) + 0, lcm, g, h) for g, lcm, coprime in keep if not coprime
    ]
    # old pairs made redundant by h
    filtered = []
    for pr in pairs:
        _, lcm, i, j = pr
        if elems[i].pos == hpos and mono_divides(hl, lcm):
            l1 = mono_lcm(elems[i].lexps, hl)
            l2 = mono_lcm(elems[j].lexps, hl)
            if l1 != lcm and l2 != lcm:
                continue
        filtered.append(pr)
    basis = [g for g in basis if not (elems[g].pos == hpos and mono_divides(hl, elems[g].lexps))]
    basis.append(h)
    return filtered + new_pairs, basis


def _spoly(eng: Engine, F: _Elem, G: _Elem, lcm) -> dict:
    m1 = (lcm[0] - F.lexps[0], lcm[1] - F.lexps[1], lcm[2] - F.lexps[2], lcm[3] - F.lexps[3])
    m2 = (lcm[0] - G.lexps[0], lcm[1] - G.lexps[1], lcm[2] - G.lexps[2], lcm[3] - G.lexps[3])
    f: dict = {}
    heap: list = []
    eng._sub_mult(f, heap, F, m1, -1 if eng.p is None else eng.p - 1)
    eng._sub_mult(f, heap, G, m2, 1)
    return f


def buchberger(
    gens: Sequence,
    ambient: FreeModule | None = None,
    field: Field | None = None,
    kind: str = POT,
    maxdeg: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``gens`` are vectors (sequences of Polynomial) or, for ideals, bare
    Polynomials. All must be homogeneous with respect to ``ambient``.
    With ``maxdeg`` the computation is truncated: the result is a Groebner
    basis in degrees <= maxdeg only.
    """
    vecs = [[g] if isinstance(g, Polynomial) else list(g) for g in gens]
    if ambient is None:
        ambient = FreeModule((0,) * (len(vecs[0]) if vecs else 1))
    if field is None:
        if not vecs:
            raise ValueError("field required for an empty generating set")
        field = vecs[0][0].field
    eng = Engine(field, ambient, kind)
    for v in vecs:
        vector_degree(v, ambient)
    ideal = ambient.rank == 1

    elems: list[_Elem] = []
    basis: list[int] = []
    pairs: list = []
    # inputs enter as pending items sorted by degree, interleaved with pairs
    pending = []
    for v in vecs:
        d = eng.to_internal(v)
        if d:
            e = eng.make_elem(d)
            pending.append((e.deg, e))
    pending.sort(key=lambda t: (t[0], t[1].lead))

    def pair_degree(pr):
        _, lcm, i, j = pr
        return sum(lcm) + ambient.degrees[elems[i].pos]

    pi = 0
    while pi < len(pending) or pairs:
        next_input = pending[pi][0] if pi < len(pending) else None
        if pairs:
            pairs.sort(key=lambda pr: (pair_degree(pr), pr[1], pr[2], pr[3]))
            next_pair = pair_degree(pairs[0])
        else:
            next_pair = None
        if next_input is not None and (next_pair is None or next_input <= next_pair):
            deg = next_input
        else:
            deg = next_pair
        if maxdeg is not None and deg > maxdeg:
            break
        # gather everything in this degree
        batch = []
        while pi < len(pending) and pending[pi][0] == deg:
            batch.append(dict(pending[pi][1].terms))
            pi += 1
        todo = []
        rest = []
        for pr in pairs:
            (todo if pair_degree(pr) == deg else rest).append(pr)
        pairs = rest
        for pr in todo:
            _, lcm, i, j = pr
            batch.append(_spoly(eng, elems[i], elems[j], lcm))
        for f in batch:
            idx = _index(elems[g] for g in basis)
            r = eng.reduce(f, idx, full=False)
            if not r:
                continue
            r = eng.monic(eng.reduce(r, idx, full=True))
            if not r:
                continue
            elems.append(eng.make_elem(r))
            pairs, basis = _gm_update(pairs, basis, elems, len(elems) - 1, ideal)

    return _make_reduced(eng, [elems[g] for g in basis], maxdeg)


def _make_reduced(eng: Engine, elems: list, maxdeg=None) -> GroebnerBasis:
    # minimalize
    elems = sorted(elems, key=lambda g: g.lead)
    minimal = []
    for g in elems:
        if any(h.pos == g.pos and mono_divides(h.lexps, g.lexps) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = _index(minimal[:i] + minimal[i + 1 :])
        lead = {g.lead: g.terms[0][1]}
        tail = dict(g.terms[1:])
        tail = eng.reduce(tail, others, full=True)
        lead.update(tail)
        out.append(eng.make_elem(eng.monic(lead)))
    out.sort(key=lambda g: g.lead)
    return GroebnerBasis(eng.ambient, eng.field, eng.kind, out, True, maxdeg)


def groebner_basis(gens, ambient=None, field=None, kind=POT, maxdeg=None) -> GroebnerBasis:
    return buchberger(gens, ambient, field, kind, maxdeg)


def normal_form(f, gb: GroebnerBasis):
    """Remainder of f modulo gb; a Polynomial for ideals, else a vector."""
    if isinstance(f, Polynomial):
        if gb.ambient.rank != 1:
            raise ValueError("ambient mismatch: polynomial against a module basis")
        return gb.normal_form([f])[0]
    if len(f) != gb.ambient.rank:
        raise ValueError("ambient mismatch")
    return gb.normal_form(f)


def syzygy_module(
    gens: Sequence, ambient: FreeModule | None = None, field: Field | None = None
) -> tuple[FreeModule, list[list[Polynomial]]]:
    """Generators of the syzygy module of homogeneous ``gens``.

    Returns (source, syzygies) where source is the free module with one basis
    vector per generator (degree = generator degree) and each syzygy is a
    coefficient vector c with sum c_i gens_i = 0.
    Computed by a position-over-term basis of <(g_i, e_i)> in ambient + source.
    """
    vecs = [[g] if isinstance(g, Polynomial) else list(g) for g in gens]
    if ambient is None:
        ambient = FreeModule((0,) * len(vecs[0]))
    if field is None:
        field = vecs[0][0].field
    r = ambient.rank
    degs = []
    for v in vecs:
        d = vector_degree(v, ambient)
        degs.append(0 if d is None else d)
    source = FreeModule(tuple(degs)) if vecs else None
    if not vecs:
        return source, []
    big = FreeModule(ambient.degrees + source.degrees)
    one = Polynomial.constant(field, 1)
    zero = Polynomial.zero(field)
    aug = []
    for i, v in enumerate(vecs):
        tail = [zero] * len(vecs)
        tail[i] = one
        aug.append(list(v) + tail)
    gb = buchberger(aug, big, field, POT)
    syz = []
    for g in gb.elems:
        if g.pos >= r:
            vec = gb.engine.to_vector(g.terms)
            syz.append(vec[r:])
    return source, syz


def divide_exact(h: Polynomial, g: Polynomial) -> Polynomial:
    """h / g, raising ValueError when g does not divide h."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    f = h.field
    ge, gc = g.leading_term()
    ginv = f.inv(gc)
    q: dict = {}
    r = h
    while not r.is_zero():
        e, c = r.leading_term()
        if not mono_divides(ge, e):
            raise ValueError(f"{g} does not divide {h}")
        m = tuple(a - b for a, b in zip(e, ge))
        cq = f.mul(c, ginv)
        q[m] = cq
        r = r - g.mul_monomial(m, cq)
    return Polynomial(f, q, _clean=True)


__all__ = [
    "FreeModule",
    "GroebnerBasis",
    "InhomogeneousError",
    "POT",
    "TOP",
    "buchberger",
    "divide_exact",
    "groebner_basis",
    "normal_form",
    "syzygy_module",
    "vector_degree",
    "NVARS",
]
