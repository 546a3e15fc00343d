"""Small exact integer/rational matrix toolkit (lists of lists)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Matrix = list[list]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def bilinear(g: Matrix, u, v):
    return dot(u, matvec(g, v))


def det(a: Matrix):
    """Bareiss fraction-free determinant (works for int or Fraction entries)."""
    n = len(a)
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = val // prev if isinstance(val, int) and isinstance(prev, int) else val / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def smith(a: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form of a square nonsingular integer matrix.

    Returns (d, U, V) with U a V = diag(d), U, V unimodular, d_i | d_{i+1}, d_i > 0.
    """
    n = len(a)
    m = [list(map(int, r)) for r in a]
    U = identity(n)
    V = identity(n)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in m:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(n):
        # pivot: smallest nonzero |entry| in the trailing block
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise ZeroDivisionError("singular matrix")
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = m[t][t]
            done = True
            for i in range(t + 1, n):
                q = m[i][t] // p
                if q:
                    add_row(i, t, -q)
                if m[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = m[t][j] // p
                if q:
                    add_col(j, t, -q)
                if m[t][j]:
                    done = False
            if not done:
                continue
            # divisibility of the rest of the block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if m[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            U[t] = [-x for x in U[t]]
    return [m[i][i] for i in range(n)], U, V


def row_basis(vectors: list[list[int]]) -> list[list[int]]:
    """Hermite-style echelon basis of the Z-span of integer row vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncol = len(rows[0])
    basis = []
    col = 0
    while rows and col < ncol:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    new.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows = rest
        col += 1
    return basis


def rational_span_basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the Z-module spanned by rational vectors."""
    den = 1
    for v in vectors:
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in v] for v in vectors]
    return [[Fraction(x, den) for x in r] for r in row_basis(ints)]


def kernel_basis(row: list[int]) -> list[list[int]]:
    """Integer basis of {x : row . x = 0} (x in Z^n)."""
    n = len(row)
    # column operations on a 1 x n matrix tracked in W (n x n), row * W = (g, 0, ...)
    a = list(row)
    W = identity(n)
    for j in range(1, n):
        # combine column 0 and j by extended gcd
        x, y = a[0], a[j]
        if y == 0:
            continue
        g, s, t = _xgcd(x, y)
        # new col0 = s*c0 + t*cj, new colj = (-y/g)*c0 + (x/g)*cj
        c0 = [W[i][0] for i in range(n)]
        cj = [W[i][j] for i in range(n)]
        for i in range(n):
            W[i][0] = s * c0[i] + t * cj[i]
            W[i][j] = -(y // g) * c0[i] + (x // g) * cj[i]
        a[0], a[j] = g, 0
    start = 1 if a[0] != 0 else 0
    return [[W[i][j] for i in range(n)] for j in range(start, n)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out
