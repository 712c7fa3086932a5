"""Graded modules over S = k[x0..x3] and ideal calculus.

A GradedModule is a subquotient (G + R) / R of a graded free module F:
``gens`` G and ``rels`` R are lists of homogeneous vectors of F. Ideals,
quotient rings, submodules and cokernels are all special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .field import Field, FieldError
from .groebner import (
    POT,
    TOP,
    FreeModule,
    GroebnerBasis,
    InhomogeneousError,
    buchberger,
    divide_exact,
    syzygy_module,
    vector_degree,
)
from .hilbert import HilbertData, hilbert_difference, module_numerator
from .poly import NVARS, Polynomial

Vector = list  # list[Polynomial]

S0 = FreeModule((0,))


# ---------------------------------------------------------------------------
# vector helpers


def _zero(field: Field) -> Polynomial:
    return Polynomial.zero(field)


def _is_zero_vec(v) -> bool:
    return all(f.is_zero() for f in v)


def _clean(vecs) -> list:
    return [list(v) for v in vecs if not _is_zero_vec(v)]


def _vec_scale(v, g: Polynomial) -> list:
    return [f * g for f in v]


def _vec_add(u, v) -> list:
    return [a + b for a, b in zip(u, v)]


def _permute_vec(v, perm) -> list:
    return [f.permute_vars(perm) for f in v]


def gb_of(vecs, ambient: FreeModule, field: Field, kind: str = POT) -> GroebnerBasis:
    return buchberger(_clean(vecs), ambient, field, kind)


def contains_all(gb: GroebnerBasis, vecs) -> bool:
    return all(gb.contains(list(v)) for v in vecs)


# ---------------------------------------------------------------------------
# submodule operations on generator lists


def intersect_submodules(U, W, ambient: FreeModule, field: Field) -> list:
    """Generators of U ∩ W inside ``ambient``."""
    U, W = _clean(U), _clean(W)
    if not U or not W:
        return []
    r = ambient.rank
    zero = [_zero(field)] * r
    gens = [list(u) + list(u) for u in U] + [list(w) + zero for w in W]
    gb = buchberger(gens, ambient + ambient, field, POT)
    out = []
    for g in gb.generators:
        if _is_zero_vec(g[:r]):
            out.append(g[r:])
    return out


def colon_by_element(U, g: Polynomial, ambient: FreeModule, field: Field) -> list:
    """Generators of U : g = {v : g v in U}."""
    if g.is_zero():
        raise ZeroDivisionError("colon by the zero polynomial")
    U = _clean(U)
    if not U:
        return []
    r = ambient.rank
    gF = []
    for i in range(r):
        e = [_zero(field)] * r
        e[i] = g
        gF.append(e)
    inter = intersect_submodules(U, gF, ambient, field)
    return [[divide_exact(f, g) for f in v] for v in inter]


def colon_by_variable_power(U, i: int, ambient: FreeModule, field: Field) -> list:
    """Generators of U : x_i^infinity (Bayer-Stillman).

    Variables are permuted so that x_i is last in grevlex; with a
    degree-compatible order that breaks ties by the last exponent, a
    homogeneous element whose lead term is divisible by x3^k is divisible
    by x3^k, so dividing the basis elements out gives the saturation.
    """
    U = _clean(U)
    if not U:
        return []
    perm = list(range(NVARS))
    perm[i], perm[NVARS - 1] = perm[NVARS - 1], perm[i]
    moved = [_permute_vec(v, perm) for v in U]
    gb = buchberger(moved, ambient, field, TOP)
    out = []
    for v in gb.generators:
        k = min(e[NVARS - 1] for f in v for e in f._terms)
        if k:
            shift = tuple(k if j == NVARS - 1 else 0 for j in range(NVARS))
            v = [_div_monomial(f, shift) for f in v]
        out.append(_permute_vec(v, perm))
    return out


def _div_monomial(f: Polynomial, m) -> Polynomial:
    return Polynomial(
        f.field, {tuple(a - b for a, b in zip(e, m)): c for e, c in f._terms.items()}, _clean=True
    )


def saturate_irrelevant(U, ambient: FreeModule, field: Field) -> list:
    """Generators of U : m^infinity, m = (x0, x1, x2, x3).

    Computed as the intersection of the four U : x_i^infinity; a component
    already containing the running intersection is skipped.
    """
    U = _clean(U)
    if not U:
        return []
    K = colon_by_variable_power(U, NVARS - 1, ambient, field)
    for i in range(NVARS - 1):
        Ji = colon_by_variable_power(U, i, ambient, field)
        gbi = buchberger(Ji, ambient, field, POT)
        if contains_all(gbi, K):
            continue
        K = intersect_submodules(K, Ji, ambient, field)
    return K


def colon_infinity_element(U, g: Polynomial, ambient: FreeModule, field: Field) -> list:
    """U : g^infinity."""
    if g.is_zero():
        raise ZeroDivisionError("saturation by the zero polynomial")
    deg = g.homogeneous_degree()
    if deg == 0:
        return _clean(U)
    terms = list(g._terms)
    if len(terms) == 1:
        e = terms[0]
        cur = _clean(U)
        for i, a in enumerate(e):
            if a:
                cur = colon_by_variable_power(cur, i, ambient, field)
        return cur
    cur = _clean(U)
    gb = buchberger(cur, ambient, field, POT)
    while True:
        nxt = colon_by_element(cur, g, ambient, field)
        gbn = buchberger(nxt, ambient, field, POT)
        if gbn == gb:
            return [list(v) for v in gbn.generators]
        cur, gb = nxt, gbn


def saturate_vectors(U, J: Sequence[Polynomial] | None, ambient: FreeModule, field: Field) -> list:
    """U : J^infinity, as the intersection of U : g^infinity over generators g."""
    if J is None:
        return saturate_irrelevant(U, ambient, field)
    J = [g for g in J if not g.is_zero()]
    if not J:
        return _clean(U)
    if any(g.homogeneous_degree() == 0 for g in J):
        return _clean(U)
    if _is_irrelevant(J, field):
        return saturate_irrelevant(U, ambient, field)
    parts = [colon_infinity_element(U, g, ambient, field) for g in J]
    K = parts[0]
    for P in parts[1:]:
        if contains_all(buchberger(P, ambient, field, POT), K):
            continue
        K = intersect_submodules(K, P, ambient, field)
    return K


def _is_irrelevant(J, field: Field) -> bool:
    """True when J consists of linear forms spanning all four variables."""
    if not all(g.homogeneous_degree() == 1 for g in J):
        return False
    from .linalg import rank

    rows = [[g.coefficient(tuple(1 if j == i else 0 for j in range(NVARS))) for i in range(NVARS)] for g in J]
    return rank(rows, field) == NVARS


def colon_by_ideal(U, J: Sequence[Polynomial], ambient: FreeModule, field: Field) -> list:
    """U : J = intersection of U : g over generators g of J."""
    J = [g for g in J if not g.is_zero()]
    if not J:
        # U : 0 is everything
        return _identity(ambient, field)
    K = None
    for g in J:
        part = colon_by_element(U, g, ambient, field)
        if K is None:
            K = part
        else:
            K = intersect_submodules(K, part, ambient, field)
    return K


def _identity(ambient: FreeModule, field: Field) -> list:
    one = Polynomial.constant(field, 1)
    out = []
    for i in range(ambient.rank):
        e = [_zero(field)] * ambient.rank
        e[i] = one
        out.append(e)
    return out


# ---------------------------------------------------------------------------
# matrices between free modules


@dataclass(frozen=True)
class Map:
    """Homogeneous degree-0 map source -> target given by its columns.

    ``cols[j]`` is the image of basis vector j of ``source``.
    """

    source: FreeModule
    target: FreeModule
    cols: tuple

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.cols)
        object.__setattr__(self, "cols", cols)
        if len(cols) != self.source.rank:
            raise ValueError("column count differs from source rank")
        for j, c in enumerate(cols):
            if len(c) != self.target.rank:
                raise ValueError("column length differs from target rank")
            d = vector_degree(c, self.target)
            if d is not None and d != self.source.degrees[j]:
                raise InhomogeneousError(
                    f"column {j} has degree {d}, basis vector has degree {self.source.degrees[j]}"
                )

    @property
    def field(self) -> Field:
        return self.cols[0][0].field

    def entry(self, i: int, j: int) -> Polynomial:
        return self.cols[j][i]

    def rows(self) -> list:
        return [[c[i] for c in self.cols] for i in range(self.target.rank)]

    def apply(self, v) -> list:
        out = [_zero(self.field)] * self.target.rank
        for vj, c in zip(v, self.cols):
            if not vj.is_zero():
                out = [a + vj * b for a, b in zip(out, c)]
        return out

    def compose(self, other: "Map") -> "Map":
        """self ∘ other."""
        return Map(other.source, self.target, [self.apply(c) for c in other.cols])

    def is_zero(self) -> bool:
        return all(_is_zero_vec(c) for c in self.cols)

    def to_json(self) -> list:
        return [[str(f) for f in row] for row in self.rows()]


def matrix_map(rows, source: FreeModule, target: FreeModule) -> Map:
    """Build a Map from a row-major matrix (rows indexed by target)."""
    cols = [[rows[i][j] for i in range(target.rank)] for j in range(source.rank)]
    return Map(source, target, cols)


# ---------------------------------------------------------------------------
# graded modules


KINDS = ("ideal", "submodule", "quotient", "subquotient", "extension")


@dataclass(frozen=True, eq=False)
class GradedModule:
    """The subquotient (gens + rels) / rels of the free module ``ambient``."""

    ambient: FreeModule
    gens: tuple
    rels: tuple
    field: Field
    kind: str = "subquotient"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown module kind {self.kind!r}")
        gens = tuple(tuple(v) for v in _clean(self.gens))
        rels = tuple(tuple(v) for v in _clean(self.rels))
        for v in gens + rels:
            if len(v) != self.ambient.rank:
                raise ValueError("vector length differs from ambient rank")
            for f in v:
                if f.field != self.field:
                    raise FieldError(f"mixed fields: {f.field} and {self.field}")
            vector_degree(v, self.ambient)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "rels", rels)

    # constructors -------------------------------------------------------
    @classmethod
    def free(cls, ambient: FreeModule, field: Field) -> "GradedModule":
        return cls(ambient, tuple(_identity(ambient, field)), (), field, "quotient")

    @classmethod
    def cokernel_of(cls, f: Map) -> "GradedModule":
        return cls(f.target, tuple(_identity(f.target, f.field)), f.cols, f.field, "quotient")

    @classmethod
    def from_ideal(cls, polys, field: Field, twist: int = 0) -> "GradedModule":
        """The ideal as a module, twisted: I(twist)."""
        return cls(FreeModule((-twist,)), tuple((g,) for g in polys), (), field, "ideal")

    @classmethod
    def quotient_ring(cls, polys, field: Field, twist: int = 0) -> "GradedModule":
        """(S/I)(twist)."""
        amb = FreeModule((-twist,))
        one = Polynomial.constant(field, 1)
        return cls(amb, ((one,),), tuple((g,) for g in polys), field, "quotient")

    # basic data ---------------------------------------------------------
    @cached_property
    def gb_rels(self) -> GroebnerBasis:
        return buchberger(self.rels, self.ambient, self.field, POT)

    @cached_property
    def gb_total(self) -> GroebnerBasis:
        return buchberger(self.gens + self.rels, self.ambient, self.field, POT)

    @cached_property
    def hilbert(self) -> HilbertData:
        degs = self.ambient.degrees
        top = HilbertData(module_numerator(self.gb_rels.lead_monomials(), degs))
        bottom = HilbertData(module_numerator(self.gb_total.lead_monomials(), degs))
        return hilbert_difference(top, bottom)

    def hilbert_function(self, d: int) -> int:
        return self.hilbert.hilbert_function(d)

    def is_zero(self) -> bool:
        return contains_all(self.gb_rels, self.gens)

    @property
    def generator_degrees(self) -> tuple:
        return tuple(vector_degree(g, self.ambient) for g in self.gens)

    def shift(self, a: int) -> "GradedModule":
        """M(a)."""
        return GradedModule(self.ambient.shift(a), self.gens, self.rels, self.field, self.kind)

    def contains(self, v) -> bool:
        """Is the ambient vector v in gens + rels (i.e. does it define an element)?"""
        return self.gb_total.contains(list(v))

    def is_zero_element(self, v) -> bool:
        return self.gb_rels.contains(list(v))

    # presentation ---------------------------------------------------------
    def presentation(self) -> Map | None:
        """A map P : F1 -> F0 with coker P ≅ M, F0 having one basis vector per generator.

        None when the generators are free (no relations among them).
        """
        k = len(self.gens)
        if k == 0:
            raise ValueError("zero module has no generators to present")
        F0 = FreeModule(self.generator_degrees)
        if not self.rels:
            src, syz = syzygy_module(list(self.gens), self.ambient, self.field)
        else:
            src, syz = syzygy_module(list(self.gens) + list(self.rels), self.ambient, self.field)
        cols = _clean([s[:k] for s in syz])
        if not cols:
            return None
        F1 = FreeModule(tuple(vector_degree(c, F0) for c in cols))
        return Map(F1, F0, cols)

    def as_cokernel(self) -> "GradedModule":
        """The same module presented as a quotient of the free module on its generators."""
        P = self.presentation()
        if P is None:
            return GradedModule.free(FreeModule(self.generator_degrees), self.field)
        return GradedModule.cokernel_of(P)

    # saturation ------------------------------------------------------------
    def saturation(self) -> "GradedModule":
        """((G + R) : m^inf) / (R : m^inf): the module of sections in large degrees
        agrees, and H^0_m is killed."""
        total = saturate_irrelevant(list(self.gens) + list(self.rels), self.ambient, self.field)
        rels = saturate_irrelevant(list(self.rels), self.ambient, self.field) if self.rels else []
        kind = self.kind if self.kind != "extension" else "subquotient"
        return GradedModule(self.ambient, tuple(total), tuple(rels), self.field, kind)

    # degree pieces ---------------------------------------------------------
    def degree_basis(self, d: int) -> list:
        """Ambient vectors whose classes form a basis of M_d."""
        from .linalg import rref

        mons = _ambient_monomials(self.ambient, d)
        index = {m: i for i, m in enumerate(mons)}
        rel_rows = _span_rows(self.rels, self.ambient, d, index, self.field)
        rel_red, rel_piv = rref(rel_rows, self.field, len(mons)) if rel_rows else ([], [])
        gen_rows = _span_rows(self.gens, self.ambient, d, index, self.field)
        out = []
        cur = list(rel_red)
        cur_rank = len(rel_piv)
        for row in gen_rows:
            cand = cur + [row]
            red, piv = rref(cand, self.field, len(mons))
            if len(piv) > cur_rank:
                cur, cur_rank = red, len(piv)
                out.append(_row_to_vec(row, mons, self.ambient, self.field))
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "degrees": list(self.ambient.degrees),
            "gens": [[str(f) for f in v] for v in self.gens],
            "rels": [[str(f) for f in v] for v in self.rels],
        }

    def __repr__(self):
        return f"GradedModule({self.kind}, ambient={self.ambient}, {len(self.gens)} gens, {len(self.rels)} rels)"


def _ambient_monomials(ambient: FreeModule, d: int) -> list:
    from .poly import monomials_of_degree

    out = []
    for pos, a in enumerate(ambient.degrees):
        if d - a >= 0:
            out.extend((pos, e) for e in monomials_of_degree(d - a))
    return out


def _span_rows(vecs, ambient: FreeModule, d: int, index: dict, field: Field) -> list:
    """Coordinate rows of all monomial multiples of ``vecs`` landing in degree d."""
    from .poly import monomials_of_degree

    rows = []
    n = len(index)
    for v in vecs:
        dv = vector_degree(v, ambient)
        if dv is None or dv > d:
            continue
        for m in monomials_of_degree(d - dv):
            row = [field(0)] * n
            for pos, f in enumerate(v):
                for e, c in f._terms.items():
                    row[index[(pos, tuple(a + b for a, b in zip(e, m)))]] = c
            rows.append(row)
    return rows


def _row_to_vec(row, mons, ambient: FreeModule, field: Field) -> list:
    comps = [dict() for _ in range(ambient.rank)]
    for c, (pos, e) in zip(row, mons):
        if c:
            comps[pos][e] = c
    return [Polynomial(field, t, _clean=True) for t in comps]


# ---------------------------------------------------------------------------
# module operations


def module_op(A: GradedModule, B: GradedModule, f: Map, op: str) -> GradedModule:
    """Kernel, cokernel or image of the map A -> B induced by the ambient matrix f.

    f maps A.ambient to B.ambient; it must send gens of A into gens + rels of
    B and rels of A into rels of B for the induced map to be well defined.
    """
    if f.source != A.ambient or f.target != B.ambient:
        raise InhomogeneousError("matrix does not match the module ambients")
    images = [f.apply(g) for g in A.gens]
    if op == "image":
        return GradedModule(B.ambient, tuple(images), B.rels, B.field, "subquotient" if B.rels else "submodule")
    if op == "cokernel":
        return GradedModule(B.ambient, B.gens, tuple(B.rels) + tuple(images), B.field, "subquotient")
    if op == "kernel":
        k = len(A.gens)
        if k == 0:
            return GradedModule(A.ambient, (), A.rels, A.field, "subquotient")
        _, syz = syzygy_module(images + [list(r) for r in B.rels], B.ambient, B.field)
        kgens = []
        for s in syz:
            v = [_zero(A.field)] * A.ambient.rank
            for c, g in zip(s[:k], A.gens):
                if not c.is_zero():
                    v = _vec_add(v, _vec_scale(g, c))
            kgens.append(v)
        kind = "subquotient" if A.rels else "submodule"
        return GradedModule(A.ambient, tuple(_clean(kgens)), A.rels, A.field, kind)
    raise ValueError(f"unknown op {op!r}")


def check_well_defined(A: GradedModule, B: GradedModule, f: Map) -> bool:
    """Does f induce a module map A -> B?"""
    return contains_all(B.gb_total, [f.apply(g) for g in A.gens]) and contains_all(
        B.gb_rels, [f.apply(r) for r in A.rels]
    )


def extension_pushout(F0_cover: Map, A: GradedModule, cls: Map) -> GradedModule:
    """Extension 0 -> A -> E -> B -> 0 from a cocycle.

    ``F0_cover`` is a presentation P : F1 -> F0 of B (so B = coker P, Z1 = im P)
    and ``cls`` : F1 -> A.ambient is the class, given on the generators of
    Z1; the cocycle condition is that cls kills the syzygies of P modulo A's
    relations. E = (F0 ⊕ A) / {(P v, -cls v)}.
    """
    P = F0_cover
    field = P.field
    if cls.source != P.source or cls.target != A.ambient:
        raise InhomogeneousError("class does not match the presentation")
    amb = P.target + A.ambient
    r0 = P.target.rank
    zeros_a = [_zero(field)] * A.ambient.rank
    zeros_0 = [_zero(field)] * r0
    gens = [list(e) + zeros_a for e in _identity(P.target, field)]
    gens += [zeros_0 + list(g) for g in A.gens]
    rels = [zeros_0 + list(r) for r in A.rels]
    for pc, cc in zip(P.cols, cls.cols):
        rels.append(list(pc) + [-c for c in cc])
    return GradedModule(amb, tuple(gens), tuple(rels), field, "extension")


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True, eq=False)
class Ideal:
    """Homogeneous ideal of S, compared by reduced Groebner basis."""

    field: Field
    gens: tuple

    def __post_init__(self):
        gens = tuple(g for g in self.gens if not g.is_zero())
        for g in gens:
            if g.field != self.field:
                raise FieldError(f"mixed fields: {g.field} and {self.field}")
            if not g.is_homogeneous():
                raise InhomogeneousError(f"{g} is not homogeneous")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, polys, field: Field | None = None) -> "Ideal":
        polys = list(polys)
        if field is None:
            if not polys:
                raise ValueError("field required for an empty generating set")
            field = polys[0].field
        return cls(field, tuple(polys))

    @classmethod
    def parse(cls, texts, field: Field) -> "Ideal":
        return cls(field, tuple(Polynomial.parse(t, field) for t in texts))

    @classmethod
    def irrelevant(cls, field: Field) -> "Ideal":
        return cls(field, tuple(Polynomial.var(field, i) for i in range(NVARS)))

    @classmethod
    def unit(cls, field: Field) -> "Ideal":
        return cls(field, (Polynomial.constant(field, 1),))

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger([(g,) for g in self.gens], S0, self.field, POT)

    @property
    def basis(self) -> list[Polynomial]:
        return self.gb.polys()

    def _vecs(self):
        return [[g] for g in self.gens]

    def contains(self, f: Polynomial) -> bool:
        return self.gb.contains([f])

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.gb.normal_form([f])[0]

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other: "Ideal") -> bool:
        return self.is_subset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.field == other.field and self.gb.key() == other.gb.key()

    def __hash__(self):
        return hash((self.field, self.gb.key()))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.homogeneous_degree() == 0 for g in self.basis)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.field, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.field, tuple(f * g for f in self.gens for g in other.gens))

    def intersect(self, other: "Ideal") -> "Ideal":
        return _from_vecs(intersect_submodules(self._vecs(), other._vecs(), S0, self.field), self.field)

    def quotient(self, other: "Ideal") -> "Ideal":
        return _from_vecs(colon_by_ideal(self._vecs(), list(other.gens), S0, self.field), self.field)

    def colon(self, g: Polynomial) -> "Ideal":
        return _from_vecs(colon_by_element(self._vecs(), g, S0, self.field), self.field)

    def saturate(self, J: "Ideal | None" = None) -> "Ideal":
        """I : J^infinity; J defaults to the irrelevant ideal."""
        jg = None if J is None else list(J.gens)
        if J is not None and J.is_zero():
            return self
        return _from_vecs(saturate_vectors(self._vecs(), jg, S0, self.field), self.field)

    def is_saturated(self) -> bool:
        return self == self.saturate()

    @cached_property
    def hilbert(self) -> HilbertData:
        """Hilbert data of S/I."""
        return HilbertData(module_numerator(self.gb.lead_monomials(), (0,)))

    def hilbert_polynomial(self) -> list:
        return self.hilbert.hilbert_polynomial

    def dim_in_degree(self, d: int) -> int:
        """dim_k I_d."""
        from math import comb

        if d < 0:
            return 0
        return comb(d + 3, 3) - self.hilbert.hilbert_function(d)

    def as_module(self, twist: int = 0) -> GradedModule:
        return GradedModule.from_ideal(self.gens, self.field, twist)

    def quotient_ring(self, twist: int = 0) -> GradedModule:
        return GradedModule.quotient_ring(self.gens, self.field, twist)

    def to_json(self) -> list:
        return [str(g) for g in self.basis]

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]}, {self.field})"


def _from_vecs(vecs, field: Field) -> Ideal:
    return Ideal(field, tuple(v[0] for v in vecs))


def ideal_combine(I: Ideal, J: Ideal, op: str) -> Ideal:
    """op in {"sum", "product", "intersection", "quotient"}."""
    if I.field != J.field:
        raise FieldError(f"mixed fields: {I.field} and {J.field}")
    if op == "sum":
        return I + J
    if op == "product":
        return I * J
    if op == "intersection":
        return I.intersect(J)
    if op == "quotient":
        return I.quotient(J)
    raise ValueError(f"unknown op {op!r}")


def saturate(I: Ideal, J: Ideal | None = None) -> Ideal:
    return I.saturate(J)


def hilbert(M) -> HilbertData:
    """Hilbert data of a GradedModule, or of S/I for an Ideal."""
    return M.hilbert


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = out.intersect(J)
    return out
