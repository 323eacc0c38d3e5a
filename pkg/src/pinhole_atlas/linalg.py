"""Fraction-free exact linear algebra over the rationals.

Everything here works on plain lists of ints or Fractions; no floats ever
enter or leave.  Rank and determinant use Bareiss elimination so that the
intermediate entries stay integral once the input rows are scaled to
integers.
"""

from fractions import Fraction
from math import gcd


def _int_rows(rows, scales=None):
    """Copy `rows` into integer rows, scaling each row by its denominator lcm.

    When `scales` is a list, the per-row multiplier is appended to it.
    """
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) if den != 1 else int(x) for x in row])
        if scales is not None:
            scales.append(den)
    return out


def rank(rows):
    """Exact rank of a matrix with int or Fraction entries."""
    m = _int_rows(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            for j in range(c, ncols):
                mi[j] = (pv * mi[j] - f * m[r][j]) // prev
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def det(rows):
    """Exact determinant of a square matrix (int in, int out; Fractions allowed)."""
    n = len(rows)
    if n == 0:
        return 1
    assert all(len(r) == n for r in rows)
    scales = []
    m = _int_rows(rows, scales)
    fractional = any(s != 1 for s in scales)
    sign = 1
    prev = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0 if not fractional else Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pv = m[c][c]
        for i in range(c + 1, n):
            mi = m[i]
            f = mi[c]
            for j in range(c, n):
                mi[j] = (pv * mi[j] - f * m[c][j]) // prev
        prev = pv
    d = sign * m[n - 1][n - 1]
    if fractional:
        total = 1
        for s in scales:
            total *= s
        return Fraction(d, total)
    return d


def minor_det(rows, row_idx, col_idx):
    """Determinant of the submatrix on the given row and column index tuples."""
    return det([[rows[i][j] for j in col_idx] for i in row_idx])


def kernel_vector_3x4(a):
    """A nonzero integer kernel vector of a rank-3 3x4 matrix.

    v[c] = (-1)^c * det(a with column c removed), 0-based c.  Returns None
    when the matrix has rank < 3 (all four maximal minors vanish).
    """
    v = []
    for c in range(4):
        cols = [j for j in range(4) if j != c]
        v.append((-1) ** c * det([[a[i][j] for j in cols] for i in range(3)]))
    if all(x == 0 for x in v):
        return None
    return v


def mat_mul(a, b):
    """Matrix product; entries need only support + and *."""
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for t in range(1, k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = row[0] * v[0]
        for t in range(1, len(v)):
            s = s + row[t] * v[t]
        out.append(s)
    return out


def adjugate(m):
    """Adjugate of a small square matrix (entries support +, *, -)."""
    n = len(m)
    if n == 1:
        raise ValueError("adjugate needs n >= 2")
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != i]
            cols = [c for c in range(n) if c != j]
            out[j][i] = (-1) ** (i + j) * cofactor_det([[m[r][c] for c in cols] for r in rows])
    return out


def cofactor_det(m):
    """Determinant by cofactor expansion; works for symbolic entries too."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    s = None
    for j in range(n):
        if isinstance(m[0][j], int) and m[0][j] == 0:
            continue
        sub = [[m[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = (-1) ** j * m[0][j] * cofactor_det(sub)
        s = term if s is None else s + term
    if s is None:
        return 0
    return s


def inverse(m):
    """Exact inverse of a square Fraction/int matrix; None when singular."""
    d = det(m)
    if d == 0:
        return None
    n = len(m)
    if n == 1:
        return [[Fraction(1, 1) / Fraction(m[0][0])]]
    adj = adjugate(m)
    return [[Fraction(adj[i][j], 1) / d for j in range(n)] for i in range(n)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
