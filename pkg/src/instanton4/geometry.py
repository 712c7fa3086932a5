"""Lines and quadrics in P^3: Plücker coordinates, incidence, transversals,
five-secant detection, rulings and seeded random line configurations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations

from .field import Field, FieldError
from .linalg import det, nullspace, rref
from .modules import Ideal
from .poly import NVARS, Polynomial, monomials_of_degree

PLUCKER_INDEX = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
MAX_TRIES = 1000


class GeometryError(ValueError):
    pass


def _canon_point(field: Field, v) -> tuple:
    v = [field(x) for x in v]
    for x in v:
        if x:
            inv = field.inv(x)
            return tuple(field.mul(y, inv) for y in v)
    raise GeometryError("zero vector is not a point")


def _add(field: Field, u, v, a=1, b=1) -> tuple:
    a, b = field(a), field(b)
    return tuple(field.add(field.mul(a, x), field.mul(b, y)) for x, y in zip(u, v))


def _dot(field: Field, u, v):
    s = field(0)
    for x, y in zip(u, v):
        s = field.add(s, field.mul(x, y))
    return s


# ---------------------------------------------------------------------------
# lines


@dataclass(frozen=True, eq=False)
class LineP3:
    """A line in P^3, stored by the reduced row echelon basis of its points."""

    field: Field
    points: tuple

    def __post_init__(self):
        rows = [[self.field(x) for x in p] for p in self.points]
        if len(rows) != 2 or any(len(r) != NVARS for r in rows):
            raise GeometryError("a line needs two points with 4 coordinates")
        red, piv = rref(rows, self.field, NVARS)
        if len(piv) != 2:
            raise GeometryError("spanning points are dependent")
        object.__setattr__(self, "points", tuple(tuple(r) for r in red))

    @classmethod
    def through(cls, p, q, field: Field) -> "LineP3":
        return cls(field, (tuple(p), tuple(q)))

    @classmethod
    def from_forms(cls, forms, field: Field) -> "LineP3":
        """The line cut out by two independent linear forms (Polynomials or coefficient lists)."""
        rows = []
        for f in forms:
            if isinstance(f, Polynomial):
                if f.homogeneous_degree() != 1:
                    raise GeometryError(f"{f} is not a linear form")
                rows.append([f.coefficient(_unit(i)) for i in range(NVARS)])
            else:
                rows.append([field(x) for x in f])
        ker = nullspace(rows, field, NVARS)
        if len(ker) != 2:
            raise GeometryError("forms do not cut out a line")
        return cls(field, tuple(tuple(v) for v in ker))

    @property
    def a(self) -> tuple:
        return self.points[0]

    @property
    def b(self) -> tuple:
        return self.points[1]

    def point(self, s, t) -> tuple:
        """s * a + t * b."""
        return _add(self.field, self.a, self.b, s, t)

    @cached_property
    def plucker(self) -> tuple:
        """(p01, p02, p03, p12, p13, p23), first nonzero coordinate scaled to 1."""
        f = self.field
        a, b = self.a, self.b
        raw = [f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])) for i, j in PLUCKER_INDEX]
        return _canon_point(f, raw)

    @cached_property
    def forms(self) -> tuple:
        """Coefficient vectors of two linear forms vanishing on the line (RREF)."""
        ker = nullspace([list(self.a), list(self.b)], self.field, NVARS)
        red, _ = rref(ker, self.field, NVARS)
        return tuple(tuple(r) for r in red)

    @cached_property
    def linear_forms(self) -> tuple:
        return tuple(Polynomial.linear(self.field, c) for c in self.forms)

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.field, self.linear_forms)

    def contains_point(self, P) -> bool:
        return all(not _dot(self.field, c, P) for c in self.forms)

    def __eq__(self, other):
        if not isinstance(other, LineP3):
            return NotImplemented
        return self.field == other.field and self.points == other.points

    def __hash__(self):
        return hash((self.field, self.points))

    def to_json(self) -> dict:
        lift = self.field.lift
        return {
            "points": [[str(lift(x)) for x in p] for p in self.points],
            "plucker": [str(lift(x)) for x in self.plucker],
            "ideal": [str(g) for g in self.linear_forms],
        }

    def __repr__(self):
        return f"LineP3({', '.join(str(g) for g in self.linear_forms)})"


def _unit(i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(NVARS))


def plucker(L: LineP3) -> tuple:
    return L.plucker


def plucker_relation(p) -> object:
    """p01 p23 - p02 p13 + p03 p12 (zero on every line)."""
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def plucker_pairing(field: Field, p, q):
    """Bilinear form whose vanishing means the two lines meet."""
    terms = (
        (p[0], q[5], 1),
        (p[1], q[4], -1),
        (p[2], q[3], 1),
        (p[3], q[2], 1),
        (p[4], q[1], -1),
        (p[5], q[0], 1),
    )
    s = field(0)
    for x, y, sgn in terms:
        s = field.add(s, field.mul(field(sgn), field.mul(x, y)))
    return s


def meets(L1: LineP3, L2: LineP3) -> bool:
    """True iff the lines share a point (so L meets itself)."""
    m = [list(L1.a), list(L1.b), list(L2.a), list(L2.b)]
    return not det(m, L1.field)


def line_ideal(L: LineP3) -> Ideal:
    return L.ideal


def line_through_points(p, q, field: Field) -> LineP3:
    return LineP3.through(p, q, field)


# ---------------------------------------------------------------------------
# quadrics


@dataclass(frozen=True, eq=False)
class QuadricSurface:
    """Quadric x^T G x = 0. ``known_line`` (optional) fixes which ruling is family A."""

    field: Field
    gram: tuple
    known_line: LineP3 | None = None

    def __post_init__(self):
        g = tuple(tuple(self.field(x) for x in row) for row in self.gram)
        if len(g) != NVARS or any(len(r) != NVARS for r in g):
            raise GeometryError("Gram matrix must be 4x4")
        for i in range(NVARS):
            for j in range(NVARS):
                if g[i][j] != g[j][i]:
                    raise GeometryError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_polynomial(cls, q: Polynomial, known_line: LineP3 | None = None) -> "QuadricSurface":
        f = q.field
        if q.homogeneous_degree() != 2:
            raise GeometryError("a quadric needs a nonzero quadratic form")
        half = f.inv(f(2))
        g = [[f(0)] * NVARS for _ in range(NVARS)]
        for e, c in q.items():
            idx = [i for i in range(NVARS) for _ in range(e[i])]
            i, j = idx
            if i == j:
                g[i][i] = c
            else:
                g[i][j] = g[j][i] = f.mul(c, half)
        return cls(f, tuple(tuple(r) for r in g), known_line)

    @cached_property
    def equation(self) -> Polynomial:
        f = self.field
        terms = {}
        for i in range(NVARS):
            for j in range(i, NVARS):
                c = self.gram[i][j] if i == j else f.mul(f(2), self.gram[i][j])
                if c:
                    e = tuple((i == k) + (j == k) for k in range(NVARS))
                    terms[e] = c
        return Polynomial(f, terms)

    def value(self, P):
        return self.equation.evaluate(P)

    def bilinear(self, P, R):
        f = self.field
        s = f(0)
        for i in range(NVARS):
            for j in range(NVARS):
                if self.gram[i][j]:
                    s = f.add(s, f.mul(self.gram[i][j], f.mul(f(P[i]), f(R[j]))))
        return s

    @property
    def is_nonsingular(self) -> bool:
        return bool(det([list(r) for r in self.gram], self.field))

    def contains_point(self, P) -> bool:
        return not self.value(P)

    def contains_line(self, L: LineP3) -> bool:
        return all(self.contains_point(P) for P in (L.a, L.b, L.point(1, 1)))

    def tangent_form(self, P) -> tuple:
        """Coefficients of the tangent plane at P (the polar of P)."""
        f = self.field
        return tuple(_dot(f, row, P) for row in self.gram)

    def restrict(self, L: LineP3) -> tuple:
        """(alpha, beta, gamma) with Q(s a + t b) = alpha s^2 + beta s t + gamma t^2."""
        f = self.field
        alpha = self.bilinear(L.a, L.a)
        gamma = self.bilinear(L.b, L.b)
        beta = f.mul(f(2), self.bilinear(L.a, L.b))
        return alpha, beta, gamma

    def to_json(self) -> dict:
        return {"equation": str(self.equation)}

    def __repr__(self):
        return f"QuadricSurface({self.equation})"


def quadric_through(L1: LineP3, L2: LineP3, L3: LineP3) -> QuadricSurface:
    """The unique quadric containing three pairwise skew lines."""
    field = L1.field
    for A, B in combinations((L1, L2, L3), 2):
        if meets(A, B):
            raise GeometryError("lines are not pairwise skew")
    mons = monomials_of_degree(2)
    rows = []
    for L in (L1, L2, L3):
        for P in (L.a, L.b, L.point(1, 1)):
            rows.append([_mono_value(field, m, P) for m in mons])
    ker = nullspace(rows, field, len(mons))
    if len(ker) != 1:
        raise GeometryError(f"quadrics through the lines form a space of dimension {len(ker)}")
    q = Polynomial(field, {m: c for m, c in zip(mons, ker[0]) if c}).monic()
    Q = QuadricSurface.from_polynomial(q, L1)
    if not Q.is_nonsingular:
        raise GeometryError("the quadric through the lines is singular")
    return Q


def _mono_value(field: Field, m, P):
    v = field(1)
    for x, a in zip(P, m):
        for _ in range(a):
            v = field.mul(v, field(x))
    return v


# ---------------------------------------------------------------------------
# rulings


def _other_line(Q: QuadricSurface, P, ell: LineP3) -> LineP3:
    """The second line of Q through P, where ell is a line of Q through P."""
    f = Q.field
    T = Q.tangent_form(P)
    # a point b of ell other than P, and c in the tangent plane off ell
    b = ell.b if _canon_point(f, ell.a) == _canon_point(f, P) else ell.a
    if _rank_pts(f, [P, b]) < 2:
        b = ell.b
    plane = nullspace([list(T)], f, NVARS)
    c = None
    for v in plane:
        if _rank_pts(f, [P, b, v]) == 3:
            c = v
            break
    if c is None:
        raise GeometryError("degenerate tangent plane")
    bgc = Q.bilinear(b, c)
    cgc = Q.bilinear(c, c)
    if not bgc:
        raise GeometryError("quadric is singular at the point")
    # points lam P + mu b + nu c with (mu, nu) ∝ (cGc, -2 bGc)
    R = _add(f, b, c, cgc, f.neg(f.mul(f(2), bgc)))
    return LineP3.through(P, R, f)


def _rank_pts(field: Field, pts) -> int:
    return len(rref([list(p) for p in pts], field, NVARS)[1])


def line_through_point_meeting(Q: QuadricSurface, P, L: LineP3) -> LineP3:
    """For P on Q off the line L of Q: the line of Q through P meeting L."""
    f = Q.field
    T = Q.tangent_form(P)
    ta, tb = _dot(f, T, L.a), _dot(f, T, L.b)
    R = _add(f, L.a, L.b, tb, f.neg(ta))
    if not any(R):
        raise GeometryError("point lies on the reference line")
    return LineP3.through(P, R, f)


def ruling_lines(Q: QuadricSurface, family: str, param, ref: LineP3 | None = None) -> LineP3:
    """A line of Q in the given family.

    Family "A" is the ruling containing ``ref`` (default ``Q.known_line``),
    "B" the opposite one. ``param`` is either a point of Q (the line of that
    family through it) or a scalar t / pair (s, t): family B is indexed by
    the point s a + t b of ref, family A by the point of the B-line through
    ref's first point.
    """
    ref = ref or Q.known_line
    if ref is None:
        raise GeometryError("a reference line is needed to name the rulings")
    if family not in ("A", "B"):
        raise ValueError("family must be 'A' or 'B'")
    f = Q.field
    if not Q.is_nonsingular:
        raise GeometryError("quadric is singular")
    if not Q.contains_line(ref):
        raise GeometryError("reference line does not lie on the quadric")
    if isinstance(param, (tuple, list)) and len(param) == NVARS:
        P = tuple(f(x) for x in param)
        if not Q.contains_point(P):
            raise GeometryError("point is not on the quadric")
        if ref.contains_point(P):
            lineA = ref
            lineB = _other_line(Q, P, ref)
        else:
            lineB = line_through_point_meeting(Q, P, ref)
            lineA = _other_line(Q, P, lineB)
        return lineA if family == "A" else lineB
    s, t = (param if isinstance(param, (tuple, list)) else (1, param))
    if family == "B":
        P = ref.point(s, t)
        return _other_line(Q, P, ref)
    B0 = _other_line(Q, ref.a, ref)
    R = B0.b if _rank_pts(f, [ref.a, B0.b]) == 2 else B0.a
    P = _add(f, ref.a, R, s, t)
    if not any(P):
        raise GeometryError("parameter does not give a point")
    if ref.contains_point(P):
        return ref
    return _other_line(Q, P, B0)


# ---------------------------------------------------------------------------
# transversals and five-secants


def _roots_binary_quadratic(field: Field, alpha, beta, gamma):
    """Roots (s, t) of alpha s^2 + beta s t + gamma t^2.

    Returns (roots, status) with status in {"two", "double", "irrational",
    "zero"} ("zero" when the form vanishes identically).
    """
    if not alpha and not beta and not gamma:
        return [], "zero"
    disc = field.sub(field.mul(beta, beta), field.mul(field(4), field.mul(alpha, gamma)))
    if not alpha:
        # t (beta s + gamma t)
        if not beta:
            return [(field(1), field(0))], "double"
        return [(field(1), field(0)), (field.neg(gamma), beta)], "two"
    if not disc:
        return [(field.neg(beta), field.mul(field(2), alpha))], "double"
    r = field.sqrt(disc)
    if r is None:
        return [], "irrational"
    den = field.mul(field(2), alpha)
    return [(field.add(field.neg(beta), r), den), (field.sub(field.neg(beta), r), den)], "two"


@dataclass
class TransversalResult:
    """Common transversals of four skew lines.

    kind: "finite" (0, 1 or 2 rational lines), "irrational" (two conjugate
    lines not defined over the field) or "infinite" (all four on one quadric).
    """

    kind: str
    lines: list = dc_field(default_factory=list)
    multiplicities: list = dc_field(default_factory=list)
    quadric: QuadricSurface | None = None

    @property
    def count(self) -> int:
        return sum(self.multiplicities)

    @property
    def tangent(self) -> bool:
        return 2 in self.multiplicities


def _check_skew(lines):
    for A, B in combinations(lines, 2):
        if meets(A, B):
            raise GeometryError("lines are not pairwise skew")


def transversals_of_four(L1: LineP3, L2: LineP3, L3: LineP3, L4: LineP3) -> TransversalResult:
    _check_skew((L1, L2, L3, L4))
    Q = quadric_through(L1, L2, L3)
    f = Q.field
    roots, status = _roots_binary_quadratic(f, *Q.restrict(L4))
    if status == "zero":
        return TransversalResult("infinite", [], [], Q)
    if status == "irrational":
        return TransversalResult("irrational", [], [], Q)
    lines = [line_through_point_meeting(Q, L4.point(s, t), L1) for s, t in roots]
    mults = [2] if status == "double" else [1, 1]
    return TransversalResult("finite", lines, mults, Q)


@dataclass
class FiveSecantResult:
    """status: "none", "witness" (a rational 5-secant is given) or
    "irrational" (5-secants exist only over an extension of the field)."""

    status: str
    witness: LineP3 | None = None

    def __bool__(self):
        return self.status != "none"


def _transversal_incidence(Q: QuadricSurface, L4: LineP3, L1: LineP3, L5: LineP3) -> tuple:
    """Binary quadratic h(s, t): the line of Q through L4.point(s, t) meeting L1
    meets L5 iff h(s, t) = 0 (on points of L4 ∩ Q)."""
    f = Q.field
    T_a = Q.tangent_form(L4.a)
    T_b = Q.tangent_form(L4.b)

    def R(Tv):
        return _add(f, L1.a, L1.b, _dot(f, Tv, L1.b), f.neg(_dot(f, Tv, L1.a)))

    # P(s,t) = s a + t b, R(s,t) = s R_a + t R_b; Plücker of P ∧ R is quadratic
    Ra, Rb = R(T_a), R(T_b)
    a, b = L4.a, L4.b

    def pl(u, v):
        return [f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])) for i, j in PLUCKER_INDEX]

    q5 = L5.plucker
    ss = plucker_pairing(f, pl(a, Ra), q5)
    tt = plucker_pairing(f, pl(b, Rb), q5)
    st = f.add(plucker_pairing(f, pl(a, Rb), q5), plucker_pairing(f, pl(b, Ra), q5))
    return ss, st, tt


def five_secant(cfg) -> FiveSecantResult:
    """Decide whether five pairwise skew lines admit a common transversal."""
    lines = list(cfg.lines if hasattr(cfg, "lines") else cfg)
    if len(lines) < 5:
        raise GeometryError("five lines are required")
    L1, L2, L3, L4, L5 = lines[:5]
    _check_skew(lines[:5])
    Q = quadric_through(L1, L2, L3)
    f = Q.field
    g4 = Q.restrict(L4)
    if not any(g4):
        # all transversals of L1..L4 form the opposite ruling: pick one through L5 ∩ Q
        g5 = Q.restrict(L5)
        if not any(g5):
            return FiveSecantResult("witness", line_through_point_meeting(Q, L5.a, L1))
        roots, status = _roots_binary_quadratic(f, *g5)
        if status == "irrational":
            return FiveSecantResult("irrational")
        s, t = roots[0]
        return FiveSecantResult("witness", line_through_point_meeting(Q, L5.point(s, t), L1))
    h = _transversal_incidence(Q, L4, L1, L5)
    mat = [list(g4), list(h)]
    red, piv = rref(mat, f, 3)
    if len(piv) == 2:
        ker = nullspace(mat, f, 3)[0]
        # ker ∝ (s^2, st, t^2) of a common root, if one exists
        v0, v1, v2 = ker
        if f.sub(f.mul(v1, v1), f.mul(v0, v2)):
            return FiveSecantResult("none")
        s, t = (v0, v1) if v0 else (v1, v2)
        return FiveSecantResult("witness", line_through_point_meeting(Q, L4.point(s, t), L1))
    # h is a multiple of g4: every transversal of L1..L4 meets L5
    roots, status = _roots_binary_quadratic(f, *g4)
    if status == "irrational":
        return FiveSecantResult("irrational")
    s, t = roots[0]
    return FiveSecantResult("witness", line_through_point_meeting(Q, L4.point(s, t), L1))


def has_five_secant(cfg):
    """False, a witness LineP3, or True when 5-secants exist only over an extension."""
    res = five_secant(cfg)
    if res.status == "none":
        return False
    return res.witness if res.witness is not None else True


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True, eq=False)
class LineConfiguration:
    field: Field
    lines: tuple
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        for L in self.lines:
            if L.field != self.field:
                raise FieldError("line over a different field")

    def __len__(self):
        return len(self.lines)

    def __getitem__(self, i):
        return self.lines[i]

    def line(self, k: int) -> LineP3:
        """1-based access, matching the usual L_1, ..., L_5 numbering."""
        return self.lines[k - 1]

    @cached_property
    def incidence(self) -> tuple:
        n = len(self.lines)
        return tuple(tuple(meets(self.lines[i], self.lines[j]) for j in range(n)) for i in range(n))

    @property
    def is_skew(self) -> bool:
        n = len(self.lines)
        return not any(self.incidence[i][j] for i in range(n) for j in range(n) if i != j)

    @cached_property
    def five_secant_status(self) -> FiveSecantResult | None:
        if len(self.lines) != 5 or not self.is_skew:
            return None
        return five_secant(self)

    def quadric(self, i: int, j: int, k: int) -> QuadricSurface:
        """Q_{ijk} through L_i, L_j, L_k (1-based)."""
        return quadric_through(self.line(i), self.line(j), self.line(k))

    def union_ideal(self) -> Ideal:
        from .modules import intersect_all

        return intersect_all([L.ideal for L in self.lines])

    def permuted(self, perm) -> "LineConfiguration":
        """Lines reordered: new L_k = old L_{perm[k-1]} (1-based)."""
        return LineConfiguration(self.field, tuple(self.line(k) for k in perm), self.seed)

    def to_json(self, canonical: bool = False) -> dict:
        """Config file form; ``canonical`` adds Plücker tuples and line ideals."""
        lift = self.field.lift
        out = {
            "field": self.field.to_json(),
            "lines": [[[_json_coord(lift(x)) for x in p] for p in L.points] for L in self.lines],
        }
        if canonical:
            out["seed"] = self.seed
            out["plucker"] = [[str(lift(x)) for x in L.plucker] for L in self.lines]
            out["ideals"] = [[str(f) for f in L.linear_forms] for L in self.lines]
        return out

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "LineConfiguration":
        if field is None:
            field = Field.from_json(data.get("field", {"p": 32003}))
        lines = []
        for pts in data["lines"]:
            if len(pts) != 2:
                raise GeometryError("each line needs exactly two points")
            lines.append(LineP3(field, tuple(tuple(field(x) for x in p) for p in pts)))
        return cls(field, tuple(lines))


def _json_coord(x):
    if isinstance(x, int):
        return x
    return x.numerator if x.denominator == 1 else str(x)


def _random_point(rng: random.Random, field: Field) -> tuple:
    if field.p:
        return tuple(rng.randrange(field.p) for _ in range(NVARS))
    return tuple(field(rng.randint(-9, 9)) for _ in range(NVARS))


def random_line(rng: random.Random, field: Field) -> LineP3:
    for _ in range(MAX_TRIES):
        p, q = _random_point(rng, field), _random_point(rng, field)
        try:
            return LineP3.through(p, q, field)
        except GeometryError:
            continue
    raise GeometryError("could not sample independent points")


def random_skew_config(n: int, seed: int, field: Field | None = None) -> LineConfiguration:
    """n pairwise skew random lines, deterministic in (n, seed, field).

    Extra rejection: for n = 4 the union must not lie on a quadric and for
    n = 5 there must be no 5-secant (over the algebraic closure).
    Each line is retried at most MAX_TRIES times.
    """
    if n < 1:
        raise ValueError("n must be positive")
    field = field or Field()
    rng = random.Random(seed)
    lines: list = []
    for k in range(n):
        for _ in range(MAX_TRIES):
            L = random_line(rng, field)
            if any(meets(L, M) for M in lines):
                continue
            if k == 3 and n == 4 and quadric_through(*lines[:3]).contains_line(L):
                continue
            if k == 4 and n == 5 and five_secant(lines + [L]).status != "none":
                continue
            lines.append(L)
            break
        else:
            raise GeometryError(f"no admissible line {k + 1} after {MAX_TRIES} tries")
    return LineConfiguration(field, tuple(lines), seed)


def standard_lines(field: Field) -> tuple:
    """L1 = {x2=x3=0}, L2 = {x0=x1=0}, L3 = {x0+x2 = x1+x3 = 0}; Q = x0x3 - x1x2."""
    L1 = LineP3.through((1, 0, 0, 0), (0, 1, 0, 0), field)
    L2 = LineP3.through((0, 0, 1, 0), (0, 0, 0, 1), field)
    L3 = LineP3.through((1, 0, -1, 0), (0, 1, 0, -1), field)
    return L1, L2, L3


def five_secant_config(field: Field | None = None, seed: int = 0) -> LineConfiguration:
    """Five pairwise skew lines with the 5-secant M = {x0 - x1 = x2 - x3 = 0}.

    L1, L2, L3 are the standard lines (M is in the opposite ruling of their
    quadric); L4 and L5 are random lines through random points of M.
    """
    field = field or Field()
    rng = random.Random(seed)
    L1, L2, L3 = standard_lines(field)
    M = LineP3.through((1, 1, 0, 0), (0, 0, 1, 1), field)
    lines = [L1, L2, L3]
    while len(lines) < 5:
        P = M.point(rng.randrange(1, 1000), rng.randrange(1, 1000))
        L = LineP3.through(P, _random_point(rng, field), field)
        if any(meets(L, K) for K in lines) or L == M:
            continue
        Q = quadric_through(L1, L2, L3)
        if len(lines) == 3 and Q.contains_line(L):
            continue
        lines.append(L)
    return LineConfiguration(field, tuple(lines), seed)


def tangent_config(seed: int, field: Field | None = None) -> LineConfiguration:
    """Four skew lines with L4 tangent to Q(L1, L2, L3).

    L4 passes through a random point P of Q and lies in the tangent plane
    at P (but not on Q), so it meets Q only at P, doubly.
    """
    field = field or Field()
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        L1, L2, L3 = (random_line(rng, field) for _ in range(3))
        if meets(L1, L2) or meets(L1, L3) or meets(L2, L3):
            continue
        Q = quadric_through(L1, L2, L3)
        # random point of Q: on a random B-line (meets L1)
        B = ruling_lines(Q, "B", rng.randrange(field.p or 100))
        P = B.point(1, rng.randrange(field.p or 100))
        T = Q.tangent_form(P)
        plane = nullspace([list(T)], field, NVARS)
        r1, r2 = (field(rng.randrange(field.p or 100)) for _ in range(2))
        c = tuple(field.add(field.add(field.mul(r1, u), v), field.mul(r2, w)) for u, v, w in zip(*plane))
        try:
            L4 = LineP3.through(P, c, field)
        except GeometryError:
            continue
        if Q.contains_line(L4) or any(meets(L4, M) for M in (L1, L2, L3)):
            continue
        return LineConfiguration(field, (L1, L2, L3, L4), seed)
    raise GeometryError("could not build a tangent configuration")
