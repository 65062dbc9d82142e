"""Exact integer and rational matrix routines.

Matrices are lists of rows.  Large sparse matrices (bar resolutions) are
handled column by column by :func:`sparse_elementary_divisors` and never
materialized densely.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError, NotAUnit, NotSquare


def xgcd(a, b):
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(cols):
                    if brow[j]:
                        acc[j] += a * brow[j]
        out.append(acc)
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


@dataclass(frozen=True)
class SNFResult:
    D: list
    U: list
    V: list

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)

    @property
    def elementary_divisors(self):
        return [d for d in self.diagonal if d]


def smith_normal_form(M):
    """Smith form ``U M V = D`` with ``d_1 | d_2 | ...`` and ``d_i >= 0``.

    Pivot choice is deterministic: the entry of smallest nonzero absolute
    value in the active block, ties going to the lowest row, then the lowest
    column.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(r) != n for r in A):
        raise InputError("ragged matrix")
    U, V = identity(m), identity(n)

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a, b = A[dst], A[src]
        for j in range(n):
            if b[j]:
                a[j] += q * b[j]
        a, b = U[dst], U[src]
        for j in range(m):
            if b[j]:
                a[j] += q * b[j]

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clean = clean and not A[t][j]
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % piv for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(A, U, V)


def det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise NotSquare("determinant needs a square matrix")
    if n == 0:
        return 1
    integral = all(isinstance(x, int) for r in M for x in r)
    A = [list(r) if integral else [Fraction(x) for x in r] for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = num // prev if integral else num / prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rref_solve(A, B):
    """Solve ``A X = B`` over Q for square nonsingular ``A``.

    ``B`` is a matrix (list of rows); the solution is returned as a list of
    rows of Fractions.  Raises :class:`NotAUnit` if ``A`` is singular.
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquare("coefficient matrix must be square")
    k = len(B[0]) if B else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(x) for x in B[i]] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise NotAUnit("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        rowc = [x * inv for x in M[c]]
        M[c] = rowc
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                row = M[r]
                for j in range(c, n + k):
                    if rowc[j]:
                        row[j] -= f * rowc[j]
    return [row[n:] for row in M]


def integer_inverse(M):
    """Inverse of an integer matrix with determinant +-1."""
    n = len(M)
    d = det(M)
    if d not in (1, -1):
        raise NotAUnit(f"determinant {d} is not a unit of Z")
    X = rref_solve(M, identity(n))
    return [[int(x) for x in row] for row in X]


def rank_mod_p(rows, p, ncols=None):
    """Rank over F_p of an integer matrix given as rows (dense lists or dicts)."""
    pivots = {}
    for row in rows:
        v = {j: x % p for j, x in (row.items() if isinstance(row, dict) else enumerate(row))
             if x % p}
        while v:
            lead = min(v)
            w = pivots.get(lead)
            if w is None:
                inv = pow(v[lead], -1, p)
                pivots[lead] = {j: x * inv % p for j, x in v.items()}
                break
            f = v[lead]
            for j, x in w.items():
                y = (v.get(j, 0) - f * x) % p
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
    return len(pivots)


def _axpy(v, w, q):
    """``v += q * w`` in place on sparse dicts."""
    if not q:
        return
    for j, x in w.items():
        y = v.get(j, 0) + q * x
        if y:
            v[j] = y
        else:
            v.pop(j, None)


def _diagonalize(cols, nrows):
    """Elementary divisors of a dense matrix given as columns (no transforms)."""
    A = [list(c) for c in cols if any(c)]
    # work on rows of the transpose; the divisors are the same
    divs = []
    while A:
        best = None
        for i, row in enumerate(A):
            for j, v in enumerate(row):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        piv_row = A[i]
        piv = piv_row[j]
        clean = True
        for k, row in enumerate(A):
            if k != i and row[j]:
                q = row[j] // piv
                for c, x in enumerate(piv_row):
                    if x:
                        row[c] -= q * x
                clean = clean and not row[j]
        for c in range(len(piv_row)):
            if c != j and piv_row[c]:
                q = piv_row[c] // piv
                for row in A:
                    if row[j]:
                        row[c] -= q * row[j]
                clean = clean and not piv_row[c]
        if not clean:
            continue
        bad = next((k for k, row in enumerate(A)
                    if k != i and any(x % piv for x in row)), None)
        if bad is not None:
            A[i] = [a + b for a, b in zip(piv_row, A[bad])]
            continue
        divs.append(abs(piv))
        del A[i]
        for row in A:
            del row[j]
        A = [row for row in A if any(row)]
    return sorted(divs)


def sparse_elementary_divisors(columns):
    """Rank and nontrivial elementary divisors of a matrix given by columns.

    ``columns`` is an iterable of sparse columns, each a dict or an iterable
    of ``(row, value)`` pairs.  Columns are streamed: those that reduce to a
    vector with leading entry +-1 become elimination pivots, the others are
    set aside and diagonalized densely at the end after being cleared at
    every pivot row.  Returns ``(rank, [d >= 2 ...])``.
    """
    pivots = {}
    deferred = []
    for col in columns:
        v = {j: x for j, x in (col.items() if isinstance(col, dict) else col) if x}
        while v:
            r = min(v)
            w = pivots.get(r)
            if w is not None:
                _axpy(v, w, -v[r])
                continue
            if v[r] in (1, -1):
                if v[r] < 0:
                    v = {j: -x for j, x in v.items()}
                pivots[r] = v
            else:
                deferred.append(v)
            break
    seen, reduced = set(), []
    for v in deferred:
        while True:
            ks = [k for k in v if k in pivots]
            if not ks:
                break
            k = min(ks)
            _axpy(v, pivots[k], -v[k])
        if v:
            key = tuple(sorted(v.items()))
            neg = tuple((k, -x) for k, x in key)
            if key not in seen and neg not in seen:
                seen.add(key)
                reduced.append(v)
    rows = sorted({k for v in reduced for k in v})
    index = {k: i for i, k in enumerate(rows)}
    dense = []
    for v in reduced:
        c = [0] * len(rows)
        for k, x in v.items():
            c[index[k]] = x
        dense.append(c)
    divs = _diagonalize(dense, len(rows))
    return len(pivots) + len(divs), [d for d in divs if d > 1]


def elementary_divisors(M):
    """Dense convenience wrapper around :func:`sparse_elementary_divisors`."""
    cols = transpose(M) if M else []
    return sparse_elementary_divisors(
        [(i, x) for i, x in enumerate(col) if x] for col in cols)
