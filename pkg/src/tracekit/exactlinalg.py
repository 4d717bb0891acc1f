"""Exact integer and rational linear algebra.

Everything here works over arbitrary-precision Python ints (or Fractions
for congruence pivoting); no floating point is used anywhere.  Matrices
are lists of lists, row major, and inputs are never mutated.
"""

from fractions import Fraction

from .errors import InternalInvariantError

IntMatrix = list[list[int]]


def _copy(m):
    return [list(row) for row in m]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def transpose(m: IntMatrix) -> IntMatrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def det_int(m: IntMatrix) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss)
    elimination.  det([]) == 1 so empty forms behave like rank-0 lattices."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    a = _copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return abs(det_int(m)) == 1


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with D = U*m*V, U and V unimodular, D diagonal with
    nonnegative entries satisfying d[i] | d[i+1]."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row[dst] += f * row[src]
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # choose the nonzero entry of minimal absolute value as pivot
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot now divides its row and column; enforce divisibility of the
        # remaining block by folding a bad entry into column t
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    d = a
    if __debug__:
        chain = [d[i][i] for i in range(min(rows, cols))]
        for x, y in zip(chain, chain[1:]):
            if x == 0 and y != 0:
                raise InternalInvariantError("SNF zero precedes nonzero")
            if x and y % x:
                raise InternalInvariantError("SNF divisibility chain broken")
        if mat_mul(mat_mul(u, _copy(m)), v) != d:
            raise InternalInvariantError("SNF factorization mismatch")
    return u, d, v


def cokernel(m: IntMatrix, ambient_rank: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Cokernel of m viewed as a map Z^cols -> Z^rows: returns
    (free rank, torsion coefficients).  For an empty presentation the
    ambient rank may be passed explicitly."""
    rows = len(m)
    if rows == 0:
        return (ambient_rank or 0), ()
    _, d, _ = smith_normal_form(m)
    diag = [d[i][i] for i in range(min(rows, len(d[0]) if d else 0))]
    free = rows - sum(1 for x in diag if x != 0)
    torsion = tuple(x for x in diag if x > 1)
    return free, torsion


def signature_symmetric(m) -> int:
    """Signature of a symmetric matrix over Q, by exact congruence
    diagonalization (Lagrange reduction with rational arithmetic)."""
    n = len(m)
    if n == 0:
        return 0
    s = [[Fraction(x) for x in row] for row in m]
    if any(len(row) != n for row in s):
        raise ValueError("signature of a non-square matrix")
    for i in range(n):
        for j in range(i):
            if s[i][j] != s[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    k = 0
    while k < n:
        if s[k][k] == 0:
            # bring a nonzero diagonal entry to position k, or manufacture
            # one from an off-diagonal entry (hyperbolic pivot)
            swap = next((i for i in range(k + 1, n) if s[i][i] != 0), None)
            if swap is not None:
                s[k], s[swap] = s[swap], s[k]
                for row in s:
                    row[k], row[swap] = row[swap], row[k]
            else:
                off = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if s[i][j] != 0:
                            off = (i, j)
                            break
                    if off:
                        break
                if off is None:
                    break  # remaining block is zero
                i, j = off
                for col in range(n):
                    s[i][col] += s[j][col]
                for row in s:
                    row[i] += row[j]
                if i != k:
                    s[k], s[i] = s[i], s[k]
                    for row in s:
                        row[k], row[i] = row[i], row[k]
        p = s[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            f = s[r][k] / p
            if f:
                for col in range(n):
                    s[r][col] -= f * s[k][col]
                for row in s:
                    row[r] -= f * row[k]
        k += 1
    return pos - neg
