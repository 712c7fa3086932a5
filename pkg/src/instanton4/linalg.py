"""Dense exact linear algebra over a Field (row reduction, rank, kernels)."""

from __future__ import annotations

from .field import Field


NUMPY_THRESHOLD = 4000


def rref(rows: list[list], field: Field, ncols: int | None = None):
    """Reduced row echelon form. Returns (rows, pivot_columns); input untouched."""
    p = field.p
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if p and rows and len(rows) * ncols > NUMPY_THRESHOLD:
        red, piv = rref_numpy(rows, p, ncols)
        return red.tolist(), piv
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        row = m[r]
        if p:
            row = [v * inv % p for v in row]
        else:
            row = [v * inv for v in row]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                other = m[i]
                if p:
                    m[i] = [(a - f * b) % p for a, b in zip(other, row)]
                else:
                    m[i] = [a - f * b for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list], field: Field) -> int:
    if not rows:
        return 0
    if field.p and len(rows) * len(rows[0]) > 4000:
        return _rank_numpy(rows, field.p)
    return len(rref(rows, field)[1])


def _rank_numpy(rows, p: int) -> int:
    return len(rref_numpy(rows, p)[1])


def rref_numpy(a, p: int, ncols: int | None = None):
    """RREF modulo a prime p < 2^31 with numpy int64 arithmetic.

    Accepts nested lists or an array; returns (array of nonzero rows, pivots).
    """
    import numpy as np

    a = np.array(a, dtype=np.int64) % p
    if a.ndim == 1 or a.size == 0:
        a = a.reshape(-1, ncols or 0)
    nr, nc = a.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(rows: list[list], field: Field, ncols: int) -> list[list]:
    """Basis of {v : rows * v = 0}."""
    red, pivots = rref(rows, field, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [field(0)] * ncols
        v[fcol] = field(1)
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[fcol])
        basis.append(v)
    return basis


def solve(rows: list[list], rhs: list, field: Field):
    """One solution x of rows * x = rhs, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [field(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def det(mat: list[list], field: Field):
    n = len(mat)
    m = [list(r) for r in mat]
    d = field(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return field(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = field.neg(d)
        d = field.mul(d, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = field.mul(m[i][c], inv)
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[c])]
    return d


def matmul(a: list[list], b: list[list], field: Field) -> list[list]:
    cols = list(zip(*b))
    out = []
    for row in a:
        out.append([_dot(row, col, field) for col in cols])
    return out


def _dot(u, v, field: Field):
    s = sum(x * y for x, y in zip(u, v))
    return s % field.p if field.p else s


def inverse(mat: list[list], field: Field) -> list[list]:
    n = len(mat)
    aug = [list(r) + [field(1) if i == j else field(0) for j in range(n)] for i, r in enumerate(mat)]
    red, piv = rref(aug, field, n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
