"""Graded Ext, sheaf cohomology via local duality, and Chern classes on P^3.

Local duality on S = k[x0..x3] with canonical module S(-4): for a finitely
generated graded M and i >= 1,

    h^i(P^3, M~(d)) = dim Ext^{3-i}(M, S(-4))_{-d},

and h^0(M~(d)) = dim M_d - dim Ext^4(M, S(-4))_{-d} + dim Ext^3(M, S(-4))_{-d}.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction

from .field import Field
from .groebner import FreeModule
from .linalg import rank
from .modules import GradedModule, Ideal, Map, module_op
from .poly import NVARS, Polynomial, monomials_of_degree
from .resolution import Resolution, free_resolution

_RES_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def resolution_of(M: GradedModule) -> Resolution:
    """Minimal resolution of M, memoized per module object."""
    res = _RES_CACHE.get(M)
    if res is None:
        res = free_resolution(M, True)
        _RES_CACHE[M] = res
    return res


# ---------------------------------------------------------------------------
# graded Ext as a module


def _hom_module(F: FreeModule, N: GradedModule) -> GradedModule:
    """Hom(F, N) for a free F: one copy of N(b_j) per basis vector of F."""
    a = N.ambient.rank
    degs = []
    for b in F.degrees:
        degs.extend(d - b for d in N.ambient.degrees)
    amb = FreeModule(tuple(degs))
    zero = Polynomial.zero(N.field)
    gens, rels = [], []
    for j in range(F.rank):
        for g in N.gens:
            v = [zero] * (a * F.rank)
            v[j * a : (j + 1) * a] = g
            gens.append(v)
        for r in N.rels:
            v = [zero] * (a * F.rank)
            v[j * a : (j + 1) * a] = r
            rels.append(v)
    return GradedModule(amb, tuple(gens), tuple(rels), N.field, "subquotient")


def _dual_map(d: Map, src: GradedModule, tgt: GradedModule, a: int) -> Map:
    """Hom(d, N) : Hom(F_{k-1}, N) -> Hom(F_k, N), phi -> phi ∘ d."""
    field = d.field
    zero = Polynomial.zero(field)
    cols = []
    nk = d.source.rank
    for j in range(d.target.rank):
        for s in range(a):
            col = [zero] * (a * nk)
            for l in range(nk):
                col[l * a + s] = d.entry(j, l)
            cols.append(col)
    return Map(src.ambient, tgt.ambient, cols)


def graded_ext(M: GradedModule, N: GradedModule, i: int) -> GradedModule:
    """Ext^i_S(M, N) as a graded subquotient, from Hom(resolution of M, N)."""
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    res = resolution_of(M)
    mods = res.modules
    if i >= len(mods):
        amb = N.ambient
        return GradedModule(amb, (), (), N.field, "subquotient")
    a = N.ambient.rank
    H = [_hom_module(F, N) for F in mods]
    Hi = H[i]
    if i + 1 < len(mods):
        D_next = _dual_map(res.maps[i], Hi, H[i + 1], a)
        ker = module_op(Hi, H[i + 1], D_next, "kernel")
        kgens = ker.gens
    else:
        kgens = Hi.gens
    rels = list(Hi.rels)
    if i > 0:
        D_prev = _dual_map(res.maps[i - 1], H[i - 1], Hi, a)
        rels += [D_prev.apply(g) for g in H[i - 1].gens]
    return GradedModule(Hi.ambient, tuple(kgens), tuple(rels), N.field, "subquotient")


# ---------------------------------------------------------------------------
# degreewise Ext against S(-4)


def _piece_index(F: FreeModule, e: int, shift: int) -> list:
    """Monomial coordinates of Hom(F, S(shift))_e = ⊕_j S_{e + b_j + shift}."""
    out = []
    for j, b in enumerate(F.degrees):
        dd = e + b + shift
        if dd >= 0:
            out.extend((j, m) for m in monomials_of_degree(dd))
    return out


def _dual_piece_rank(d: Map, e: int, shift: int, field: Field) -> int:
    """Rank of Hom(d, S(shift)) in degree e."""
    src = _piece_index(d.target, e, shift)
    tgt = _piece_index(d.source, e, shift)
    if not src or not tgt:
        return 0
    tindex = {k: i for i, k in enumerate(tgt)}
    # one row per source coordinate (rank of transpose = rank)
    rows = []
    for j, m in src:
        row = [0] * len(tgt)
        for l in range(d.source.rank):
            f = d.entry(j, l)
            for ex, c in f._terms.items():
                key = (l, tuple(x + y for x, y in zip(ex, m)))
                idx = tindex.get(key)
                if idx is not None:
                    row[idx] = field.add(row[idx], c)
        rows.append(row)
    return rank(rows, field)


def ext_dim(res: Resolution, k: int, e: int, shift: int = -4) -> int:
    """dim Ext^k(M, S(shift))_e from a resolution of M."""
    mods = res.modules
    if k < 0 or k >= len(mods):
        return 0
    total = len(_piece_index(mods[k], e, shift))
    if total == 0:
        return 0
    out = total
    if k < len(res.maps):
        out -= _dual_piece_rank(res.maps[k], e, shift, res.field)
    if k > 0:
        out -= _dual_piece_rank(res.maps[k - 1], e, shift, res.field)
    return out


def sheaf_cohomology_dim(M: GradedModule, i: int, d: int) -> int:
    """h^i(P^3, M~(d))."""
    if not 0 <= i <= 3:
        raise ValueError("cohomological degree must be in 0..3")
    if M.is_zero():
        return 0
    res = resolution_of(M)
    if i >= 1:
        return ext_dim(res, 3 - i, -d)
    return M.hilbert_function(d) - ext_dim(res, 4, -d) + ext_dim(res, 3, -d)


def cohomology_table(M: GradedModule, degrees) -> dict:
    """{(i, d): h^i(M~(d))} over the given twists."""
    return {(i, d): sheaf_cohomology_dim(M, i, d) for d in degrees for i in range(4)}


def h0_by_saturation(M: GradedModule, d: int) -> int:
    """dim of the degree-d part of the saturation of M.

    Equals h^0(M~(d)) when M is a submodule of a free module, since free
    modules have no first local cohomology; used as an independent check.
    """
    return M.saturation().hilbert_function(d)


# ---------------------------------------------------------------------------
# Chern classes


class ChernError(ValueError):
    pass


@dataclass(frozen=True)
class ChernRecord:
    rank: int
    c1: int
    c2: int
    c3: int

    def as_tuple(self) -> tuple:
        return (self.rank, self.c1, self.c2, self.c3)

    def to_json(self) -> dict:
        return {"rank": self.rank, "c1": self.c1, "c2": self.c2, "c3": self.c3}


OMEGA1 = ChernRecord(3, -1, 1, -1)


def chern_of_ideal_sheaf(m: int, degZ: int, chiZ: int) -> ChernRecord:
    """Chern classes of I_Z(m) for a subscheme Z of dimension <= 1."""
    return ChernRecord(1, m, degZ, (4 - m) * degZ - 2 * chiZ)


def chern_of_kernel(E: ChernRecord, m: int, degZ: int, chiZ_CM: int, lengthT: int) -> ChernRecord:
    """Chern classes of F = Ker(E -> I_Z(m)) for an epimorphism from a bundle E.

    Uses c1(E) = c1(F) + m, c2(E) = c2(F) + m c1(F) + deg Z_CM and
    c3(E) = -c3(F) + m c2(F) + (c1(F) - m + 4) deg Z_CM - 2 chi(O_{Z_CM});
    the result must also satisfy c3(F) = length T.
    """
    if degZ < 0 or lengthT < 0:
        raise ChernError("degree and torsion length must be nonnegative")
    c1 = E.c1 - m
    c2 = E.c2 - m * c1 - degZ
    c3 = -E.c3 + m * c2 + (c1 - m + 4) * degZ - 2 * chiZ_CM
    if c3 != lengthT:
        raise ChernError(f"c3 = {c3} differs from the torsion length {lengthT}")
    return ChernRecord(E.rank - 1, c1, c2, c3)


_TODD = (Fraction(1), Fraction(2), Fraction(11, 6), Fraction(1))


def hilbert_polynomial_from_chern(r: int, c1: int, c2: int, c3: int) -> list:
    """Coefficients (constant first) of chi(F(t)) by Riemann-Roch on P^3."""
    ch = [Fraction(r), Fraction(c1), Fraction(c1 * c1 - 2 * c2, 2), Fraction(c1**3 - 3 * c1 * c2 + 3 * c3, 6)]
    chtd = [sum(ch[a] * _TODD[k - a] for a in range(k + 1)) for k in range(4)]
    # multiply by e^{th} = sum t^j h^j / j! and take the h^3 coefficient
    out = [Fraction(0)] * 4
    fact = [1, 1, 2, 6]
    for j in range(4):
        out[j] += chtd[3 - j] / fact[j]
    return out


def _pad(hp, n=4) -> list:
    hp = [Fraction(c) for c in hp]
    return hp + [Fraction(0)] * (n - len(hp))


def chern_from_hilbert_polynomial(hp, r: int) -> ChernRecord:
    """Recover (c1, c2, c3) from chi(F(t)) for a sheaf of rank r."""
    hp = _pad(hp)
    if hp[3] != Fraction(r, 6):
        raise ChernError(f"Hilbert polynomial does not have rank {r}")
    sol = [0, 0, 0]
    for pos, coeff in ((0, 2), (1, 1), (2, 0)):
        base = list(sol)
        a0 = hilbert_polynomial_from_chern(r, *base)[coeff]
        base[pos] = 1
        a1 = hilbert_polynomial_from_chern(r, *base)[coeff]
        slope = a1 - a0
        val = (hp[coeff] - a0) / slope
        if val.denominator != 1:
            raise ChernError("Hilbert polynomial gives non-integral Chern classes")
        sol[pos] = int(val)
    return ChernRecord(r, *sol)


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class CurveInvariants:
    degree: int
    chi: int
    chi_CM: int
    lengthT: int
    cm_ideal: Ideal | None = None

    def as_tuple(self) -> tuple:
        return (self.degree, self.chi, self.chi_CM, self.lengthT)


def annihilator(M: GradedModule) -> Ideal:
    """ann_S(M) = ∩ over generators g of (rels : g)."""
    from .groebner import syzygy_module
    from .modules import intersect_submodules, S0

    out = None
    for g in M.gens:
        if M.gb_rels.contains(list(g)):
            continue
        vecs = [list(g)] + [list(r) for r in M.rels]
        _, syz = syzygy_module(vecs, M.ambient, M.field)
        part = [[s[0]] for s in syz if not s[0].is_zero()]
        if not part:
            return Ideal(M.field, ())
        out = part if out is None else intersect_submodules(out, part, S0, M.field)
    if out is None:
        return Ideal.unit(M.field)
    return Ideal(M.field, tuple(v[0] for v in out))


def top_dimensional_part(I: Ideal, codim: int = 2) -> Ideal:
    """Intersection of the primary components of I of codimension ``codim``,
    computed as ann Ext^codim(S/I, S)."""
    S = GradedModule.free(FreeModule((0,)), I.field)
    E = graded_ext(I.quotient_ring(), S, codim)
    if E.is_zero():
        return Ideal.unit(I.field)
    return annihilator(E)


def has_no_point_components(I: Ideal) -> bool:
    """For a scheme Z of dimension 1: no isolated or embedded points.

    By local duality a height-3 prime p is associated to S/I exactly when
    Ext^3(S/I, S) is nonzero at p, so this holds iff Ext^3(S/I, S) has
    finite length.
    """
    S = GradedModule.free(FreeModule((0,)), I.field)
    E = graded_ext(I.quotient_ring(), S, 3)
    return E.is_zero() or not E.hilbert.hilbert_polynomial


def curve_invariants(I: Ideal) -> CurveInvariants:
    """(deg Z, chi(O_Z), chi(O_{Z_CM}), length T) for a scheme of dimension <= 1."""
    hp = I.hilbert_polynomial()
    if len(hp) > 2:
        raise ValueError("ideal defines a scheme of dimension >= 2")
    deg = int(hp[1]) if len(hp) == 2 else 0
    chi = int(hp[0]) if hp else 0
    if deg == 0:
        return CurveInvariants(0, chi, 0, chi, None)
    if has_no_point_components(I):
        return CurveInvariants(deg, chi, chi, 0, I.saturate())
    cm = top_dimensional_part(I, 2)
    hcm = _pad(cm.hilbert_polynomial())
    if int(hcm[1]) != deg:
        raise ValueError("top-dimensional part has a different degree")
    chi_cm = int(hcm[0])
    return CurveInvariants(deg, chi, chi_cm, chi - chi_cm, cm)


def dims_in_degree(M: GradedModule, degrees) -> dict:
    return {d: M.hilbert_function(d) for d in degrees}


__all__ = [
    "ChernError",
    "ChernRecord",
    "CurveInvariants",
    "OMEGA1",
    "annihilator",
    "chern_from_hilbert_polynomial",
    "chern_of_ideal_sheaf",
    "chern_of_kernel",
    "cohomology_table",
    "curve_invariants",
    "ext_dim",
    "graded_ext",
    "hilbert_polynomial_from_chern",
    "resolution_of",
    "sheaf_cohomology_dim",
    "top_dimensional_part",
    "NVARS",
]
