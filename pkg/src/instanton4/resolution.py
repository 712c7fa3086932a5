"""Graded minimal free resolutions and Betti tables.

Resolutions are computed degree by degree with linear algebra: in each
internal degree d the new generators of a kernel are the vectors of the
kernel that are not multiples of kernel vectors of degree d - 1. Internal
degrees are bounded using the regularity of an initial module, which in
turn is bounded through the Taylor resolution of its monomial ideals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .field import Field
from .groebner import POT, TOP, FreeModule, buchberger, vector_degree
from .linalg import det, rref, rref_numpy
from .modules import GradedModule, Map
from .poly import NVARS, Polynomial, mono_divides, mono_lcm, monomials_of_degree

MAX_LENGTH = NVARS + 1
TAYLOR_ENUMERATION_LIMIT = 5000


@dataclass
class Resolution:
    """F_0 <- F_1 <- ... ; ``maps[i]`` is F_{i+1} -> F_i.

    ``modules[0]`` is F_0 (it surjects onto the resolved module).
    """

    modules: list
    maps: list
    field: Field
    minimal: bool

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def betti(self) -> dict:
        """{(i, j): rank}: homological degree i, internal degree j."""
        out: dict = {}
        for i, F in enumerate(self.modules):
            for d in F.degrees:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def betti_string(self) -> str:
        return ", ".join(f"{i}:{r}S({-j})" for (i, j), r in sorted(self.betti.items()))

    def composites_vanish(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if not a.compose(b).is_zero():
                return False
        return True

    def euler_numerator(self) -> dict:
        """Alternating sum of t^j over Betti numbers: the K-polynomial."""
        out: dict = {}
        for (i, j), r in self.betti.items():
            out[j] = out.get(j, 0) + (-1) ** i * r
        return {k: v for k, v in out.items() if v}

    def regularity(self) -> int:
        """max over (i, j) of j - i."""
        return max(j - i for (i, j) in self.betti)

    def to_json(self) -> dict:
        return {
            "betti": {f"({i},{j})": r for (i, j), r in sorted(self.betti.items())},
            "maps": [m.to_json() for m in self.maps],
        }


def _is_unit(f: Polynomial) -> bool:
    return len(f) == 1 and next(iter(f._terms)) == (0, 0, 0, 0)


# ---------------------------------------------------------------------------
# regularity bounds


def _taylor_bound(gens: list) -> int:
    """Upper bound for reg(S/J), J the monomial ideal on ``gens``.

    The minimal resolution is a summand of the Taylor resolution and has
    length <= 4, so Betti degrees in homological degree i are degrees of
    lcms of i generators.
    """
    if not gens:
        return 0
    if any(sum(g) == 0 for g in gens):
        return 0
    best = 0
    degs = sorted((sum(g) for g in gens), reverse=True)
    total_lcm = gens[0]
    for g in gens[1:]:
        total_lcm = mono_lcm(total_lcm, g)
    for i in range(1, min(NVARS, len(gens)) + 1):
        if comb(len(gens), i) <= TAYLOR_ENUMERATION_LIMIT:
            top = 0
            for sub in combinations(gens, i):
                m = sub[0]
                for g in sub[1:]:
                    m = mono_lcm(m, g)
                top = max(top, sum(m))
        else:
            top = min(sum(degs[:i]), sum(total_lcm))
        best = max(best, top - i)
    return best


def _quotient_reg_bound(lead_terms, degrees) -> int:
    """Bound for reg(F / N) from the lead terms (pos, exps) of a basis of N."""
    by_pos: dict = {i: [] for i in range(len(degrees))}
    for pos, e in lead_terms:
        by_pos[pos].append(tuple(e))
    return max(degrees[p] + _taylor_bound(g) for p, g in by_pos.items())


def _minimal_monomials(gens) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _strongly_stable(gens) -> bool:
    """Is the monomial ideal closed under x_j -> x_i for i < j?"""
    for g in gens:
        for j in range(1, NVARS):
            if not g[j]:
                continue
            for i in range(j):
                m = list(g)
                m[j] -= 1
                m[i] += 1
                if not any(mono_divides(h, tuple(m)) for h in gens):
                    return False
    return True


def _stable_quotient_bound(lead_terms, degrees) -> int | None:
    """reg(F / in N) when every component ideal of in N is strongly stable
    (then reg(S/J) is the top generator degree minus one); None otherwise."""
    by_pos: dict = {i: [] for i in range(len(degrees))}
    for pos, e in lead_terms:
        by_pos[pos].append(tuple(e))
    out = []
    for p, gens in by_pos.items():
        gens = _minimal_monomials(gens)
        if not gens:
            out.append(degrees[p])
            continue
        if any(sum(g) == 0 for g in gens):
            continue
        if not _strongly_stable(gens):
            return None
        out.append(degrees[p] + max(sum(g) for g in gens) - 1)
    return max(out) if out else min(degrees)


def _generic_change(field: Field, seed: int = 0) -> list:
    """Images of x0..x3 under a seeded random invertible linear substitution."""
    rng = random.Random(seed)
    hi = field.p - 1 if field.p else 9
    while True:
        mat = [[field(rng.randint(-hi if not field.p else 0, hi)) for _ in range(NVARS)] for _ in range(NVARS)]
        if det(mat, field):
            return [Polynomial.linear(field, row) for row in mat]


def _submodule_bound(vecs, ambient: FreeModule, field: Field, images) -> int:
    """Upper bound for reg of the submodule N spanned by ``vecs``."""
    top = max(ambient.degrees)
    if not vecs:
        return top
    moved = [[f.substitute(images) for f in v] for v in vecs]
    gb = buchberger(moved, ambient, field, TOP)
    bound = _stable_quotient_bound(gb.lead_monomials(), ambient.degrees)
    if bound is None:
        gb = buchberger([list(v) for v in vecs], ambient, field, POT)
        bound = _quotient_reg_bound(gb.lead_monomials(), ambient.degrees)
    return max(top, bound + 1)


def regularity_bound(M: GradedModule) -> int:
    """Upper bound for the Castelnuovo-Mumford regularity of M = (G + R) / R.

    Uses 0 -> R -> G + R -> M -> 0, reg(N) <= max(reg F, reg(F / in N) + 1)
    for a submodule N of a free module F, and semicontinuity under passing
    to initial modules. The initial modules are taken in random coordinates,
    where they are usually strongly stable and their regularity is read off
    the generator degrees; otherwise a Taylor resolution bound is used.
    """
    images = _generic_change(M.field)
    out = _submodule_bound(list(M.gens) + list(M.rels), M.ambient, M.field, images)
    if M.rels:
        out = max(out, _submodule_bound(list(M.rels), M.ambient, M.field, images) - 1)
    return out


# ---------------------------------------------------------------------------
# degree pieces


@lru_cache(maxsize=4096)
def _piece(degrees: tuple, d: int):
    """Basis (j, monomial) of F_d for F with generator ``degrees``, and its index."""
    basis = [(j, m) for j, a in enumerate(degrees) for m in monomials_of_degree(d - a)]
    return basis, {b: i for i, b in enumerate(basis)}


@lru_cache(maxsize=4096)
def _shift_index(degrees: tuple, d: int, v: int):
    """Positions in F_d of x_v times the basis of F_{d-1}."""
    src, _ = _piece(degrees, d - 1)
    _, idx = _piece(degrees, d)
    out = []
    for j, m in src:
        e = list(m)
        e[v] += 1
        out.append(idx[(j, tuple(e))])
    return np.array(out, dtype=np.int64)


class _Lin:
    """Dense matrices over a field: int64 arrays mod p or object arrays over QQ."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p
        self.dtype = np.int64 if self.p else object

    def zeros(self, shape):
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(self.field(0))
        return out

    def reduce(self, a):
        return a % self.p if self.p else a

    def rref(self, a):
        if a.shape[0] == 0:
            return a, []
        if self.p:
            return rref_numpy(a, self.p, a.shape[1])
        red, piv = rref(a.tolist(), self.field, a.shape[1])
        out = self.zeros((len(red), a.shape[1]))
        for i, r in enumerate(red):
            out[i, :] = r
        return out, piv

    def kernel(self, a, ncols: int):
        """Rows spanning {v : a v = 0}."""
        red, piv = self.rref(a) if a.shape[0] else (a, [])
        free = [c for c in range(ncols) if c not in set(piv)]
        out = self.zeros((len(free), ncols))
        for k, c in enumerate(free):
            out[k, c] = 1 if self.p else self.field(1)
            for row, pc in zip(red, piv):
                out[k, pc] = self.reduce(-row[c])
        return out

    def residual(self, v, red, piv):
        """v minus its projection along the RREF rows ``red``."""
        if not piv or v.shape[0] == 0:
            return v
        return self.reduce(v - v[:, piv] @ red)


def _map_matrix(lin: _Lin, cols, sdeg: tuple, tdeg: tuple, d: int):
    """Matrix (rows: target piece, columns: source piece) of a map in degree d."""
    src, _ = _piece(sdeg, d)
    tgt, tidx = _piece(tdeg, d)
    a = lin.zeros((len(tgt), len(src)))
    field = lin.field
    for s, (j, m) in enumerate(src):
        for comp, f in enumerate(cols[j]):
            for e, c in f._terms.items():
                t = tidx[(comp, (e[0] + m[0], e[1] + m[1], e[2] + m[2], e[3] + m[3]))]
                a[t, s] = field.add(a[t, s], c) if not lin.p else (a[t, s] + c) % lin.p
    return a


def _span_matrix(lin: _Lin, vecs, vdeg: list, tdeg: tuple, d: int):
    """Rows: monomial multiples of ``vecs`` landing in degree d of the target."""
    tgt, tidx = _piece(tdeg, d)
    rows = []
    field = lin.field
    for v, e0 in zip(vecs, vdeg):
        for m in monomials_of_degree(d - e0):
            row = lin.zeros(len(tgt))
            for comp, f in enumerate(v):
                for e, c in f._terms.items():
                    t = tidx[(comp, (e[0] + m[0], e[1] + m[1], e[2] + m[2], e[3] + m[3]))]
                    row[t] = (row[t] + c) % lin.p if lin.p else field.add(row[t], c)
            rows.append(row)
    if not rows:
        return lin.zeros((0, len(tgt)))
    return np.vstack(rows)


def _row_to_vector(lin: _Lin, row, degrees: tuple, d: int) -> list:
    basis, _ = _piece(degrees, d)
    field = lin.field
    terms = [dict() for _ in degrees]
    for i in np.nonzero(row)[0] if lin.p else [i for i, x in enumerate(row) if x]:
        j, m = basis[i]
        terms[j][m] = int(row[i]) if lin.p else row[i]
    return [Polynomial(field, t) for t in terms]


class _MinimalGenerators:
    """Accumulates minimal generators of a graded submodule of a free module
    from its degree pieces, given in increasing degree."""

    def __init__(self, lin: _Lin, degrees: tuple):
        self.lin = lin
        self.degrees = degrees
        self.prev = None  # (degree, basis rows)
        self.gens = []
        self.gen_degrees = []

    def add_piece(self, d: int, rows):
        """``rows`` span the degree-d piece of the submodule."""
        lin = self.lin
        n = len(_piece(self.degrees, d)[0])
        if self.prev is not None and self.prev[0] == d - 1 and self.prev[1].shape[0]:
            B = self.prev[1]
            shifted = lin.zeros((B.shape[0] * NVARS, n))
            for v in range(NVARS):
                shifted[v * B.shape[0] : (v + 1) * B.shape[0]][:, _shift_index(self.degrees, d, v)] = B
            gred, gpiv = lin.rref(shifted)
        else:
            gred, gpiv = lin.zeros((0, n)), []
        res = lin.residual(rows, gred, gpiv) if rows.shape[0] else rows
        new, _ = lin.rref(res)
        for r in new:
            self.gens.append(_row_to_vector(lin, r, self.degrees, d))
            self.gen_degrees.append(d)
        # basis of the whole piece for the next degree
        if len(gpiv) or new.shape[0]:
            full, _ = lin.rref(np.vstack([gred, new]) if gred.shape[0] else new)
        else:
            full = lin.zeros((0, n))
        self.prev = (d, full)


# ---------------------------------------------------------------------------
# pruning of unit entries


def _find_unit(cols):
    for c, col in enumerate(cols):
        for r, f in enumerate(col):
            if _is_unit(f):
                return r, c
    return None


def _prune(degs: list, cols: list) -> None:
    """Remove unit entries everywhere in the complex, in place.

    degs[k] are the degrees of F_k, cols[k] the columns of F_{k+1} -> F_k.
    A unit u at (r, c) of cols[k] lets us drop basis vector c of F_{k+1}
    and basis vector r of F_k after a change of basis.
    """
    changed = True
    while changed:
        changed = False
        for k in range(len(cols)):
            hit = _find_unit(cols[k])
            if hit is None:
                continue
            r, c = hit
            A = cols[k]
            u = A[c][r]
            field = u.field
            uinv = field.inv(next(iter(u._terms.values())))
            colc = A[c]
            new_cols = []
            for j, col in enumerate(A):
                if j == c:
                    continue
                a = col[r]
                if a.is_zero():
                    nc = list(col)
                else:
                    f = a.scale(uinv)
                    nc = [x if y.is_zero() else x - f * y for x, y in zip(col, colc)]
                new_cols.append(nc[:r] + nc[r + 1 :])
            cols[k] = new_cols
            degs[k + 1] = degs[k + 1][:c] + degs[k + 1][c + 1 :]
            degs[k] = degs[k][:r] + degs[k][r + 1 :]
            if k > 0:
                cols[k - 1] = cols[k - 1][:r] + cols[k - 1][r + 1 :]
            if k + 1 < len(cols):
                cols[k + 1] = [list(col[:c]) + list(col[c + 1 :]) for col in cols[k + 1]]
            changed = True
            break
    while cols and (not cols[-1] or not degs[-1]):
        cols.pop()
        degs.pop()


# ---------------------------------------------------------------------------
# resolutions


def _is_identity(gens, ambient: FreeModule) -> bool:
    if len(gens) != ambient.rank:
        return False
    for i, g in enumerate(gens):
        for j, f in enumerate(g):
            if i == j:
                if not _is_unit(f):
                    return False
            elif not f.is_zero():
                return False
    return True


def _relations(M: GradedModule, lin: _Lin, top: int):
    """Minimal generators of the relation module of M's generators."""
    deg0 = tuple(M.generator_degrees)
    gens_acc = _MinimalGenerators(lin, deg0)
    if not M.rels and _is_identity(M.gens, M.ambient):
        return gens_acc
    if _is_identity(M.gens, M.ambient):
        # relations are spanned by the given rels
        rdeg = [vector_degree(r, M.ambient) for r in M.rels]
        for d in range(min(rdeg), top + 1):
            gens_acc.add_piece(d, _span_matrix(lin, M.rels, rdeg, deg0, d))
        return gens_acc
    # kernel of F0 + F_R -> ambient, projected to F0
    rdeg = tuple(vector_degree(r, M.ambient) for r in M.rels)
    big = deg0 + rdeg
    cols = [list(g) for g in M.gens] + [list(r) for r in M.rels]
    for d in range(min(deg0), top + 1):
        a = _map_matrix(lin, cols, big, M.ambient.degrees, d)
        ker = lin.kernel(a, a.shape[1])
        n_f0 = sum(len(monomials_of_degree(d - e)) for e in deg0)
        gens_acc.add_piece(d, ker[:, :n_f0])
    return gens_acc


def free_resolution(M: GradedModule, minimal: bool = True) -> Resolution:
    """Minimal graded free resolution of M.

    ``minimal`` is accepted for compatibility; the result is always minimal.
    """
    if not M.gens or M.is_zero():
        raise ValueError("cannot resolve the zero module")
    field = M.field
    lin = _Lin(field)
    reg = regularity_bound(M)
    degs = [list(M.generator_degrees)]
    cols: list = []
    rel = _relations(M, lin, reg + 1)
    if rel.gens:
        degs.append(list(rel.gen_degrees))
        cols.append(rel.gens)
        # prune redundant generators of M before computing higher syzygies
        _prune(degs, cols)
    k = 1
    while k < len(degs) and k < MAX_LENGTH and cols:
        sdeg = tuple(degs[k])
        tdeg = tuple(degs[k - 1])
        acc = _MinimalGenerators(lin, sdeg)
        for d in range(min(sdeg), reg + k + 2):
            a = _map_matrix(lin, cols[k - 1], sdeg, tdeg, d)
            acc.add_piece(d, lin.kernel(a, a.shape[1]))
        if not acc.gens:
            break
        degs.append(list(acc.gen_degrees))
        cols.append(acc.gens)
        k += 1
    _prune(degs, cols)
    mods = [FreeModule(tuple(d)) for d in degs]
    maps = [Map(mods[i + 1], mods[i], cols[i]) for i in range(len(cols))]
    return Resolution(mods, maps, field, True)


def resolve_map(P: Map | None, F0: FreeModule, field: Field, minimal: bool = True) -> Resolution:
    """Resolution of coker P : F1 -> F0 (P None means the free module F0)."""
    if P is None:
        return Resolution([F0], [], field, True)
    return free_resolution(GradedModule.cokernel_of(P), minimal)


def betti_table(M: GradedModule) -> dict:
    return free_resolution(M, True).betti


def format_betti(betti: dict) -> str:
    """Macaulay2-style table: rows j - i, columns i."""
    if not betti:
        return "(zero)"
    imax = max(i for i, _ in betti)
    rows = sorted({j - i for i, j in betti})
    lines = ["      " + " ".join(f"{i:>4}" for i in range(imax + 1))]
    for r in rows:
        cells = []
        for i in range(imax + 1):
            v = betti.get((i, r + i), 0)
            cells.append(f"{v if v else '.':>4}")
        lines.append(f"{r:>4}: " + " ".join(cells))
    return "\n".join(lines)
