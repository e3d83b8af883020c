"""Integer linear algebra on small dense matrices (lists of lists of ints).

Column-style unimodular elimination: ``A @ U = H`` with ``U`` unimodular and
``H`` in column echelon form.  The kernel of ``A`` over Z is spanned by the
columns of ``U`` that map to zero columns of ``H``.
"""

from __future__ import annotations

from fractions import Fraction


def _xgcd(a, b):
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def column_echelon(A):
    """Return (H, U, rank) with A U = H, U unimodular, H in column echelon form."""
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for M in (H, U):
            for row in M:
                x, y = row[i], row[j]
                row[i] = a * x + b * y
                row[j] = c * x + d * y

    piv = 0
    for r in range(m):
        if piv >= n:
            break
        for j in range(piv + 1, n):
            if H[r][j] == 0:
                continue
            x, y = H[r][piv], H[r][j]
            g, s, t = _xgcd(x, y)
            # det [[s, -y/g], [t, x/g]] = (s x + t y)/g = 1
            colop(piv, j, s, t, -y // g, x // g)
        if H[r][piv] != 0:
            if H[r][piv] < 0:
                colop(piv, piv, -1, 0, -1, 0)
            piv += 1
    return H, U, piv


def integer_kernel(A, ncols=None):
    """Z-basis (list of column vectors) of {x in Z^n : A x = 0}."""
    if not A:
        n = ncols or 0
        return [[int(i == j) for i in range(n)] for j in range(n)]
    n = len(A[0])
    _, U, rank = column_echelon(A)
    return [[U[i][j] for i in range(n)] for j in range(rank, n)]


def rank(A):
    if not A or not A[0]:
        return 0
    return column_echelon(A)[2]


def hermite_rows(B, reverse=False):
    """Row Hermite normal form of the lattice spanned by the rows of B.

    With ``reverse=True`` the pivots are the *last* nonzero entries, each made
    positive; this is the canonical basis used for residue-field generators.
    """
    if not B:
        return []
    if reverse:
        return [row[::-1] for row in hermite_rows([r[::-1] for r in B])]
    T = [list(c) for c in zip(*B)]  # columns = rows of B
    H, _, rk = column_echelon(T)
    rows = [[H[i][j] for i in range(len(H))] for j in range(rk)]
    # reduce entries above each pivot into [0, pivot)
    for j, row in enumerate(rows):
        pc = next(c for c, v in enumerate(row) if v)
        pv = row[pc]
        for k in range(j):
            q = rows[k][pc] // pv
            if q:
                rows[k] = [a - q * b for a, b in zip(rows[k], row)]
    return rows


def determinant(M):
    """Exact determinant of a square integer/rational matrix."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def left_kernel(B):
    """Z-basis of {c : c B = 0} for an r x m integer matrix B (rows as vectors)."""
    r = len(B)
    if r == 0:
        return []
    m = len(B[0])
    if m == 0:
        return [[int(i == j) for j in range(r)] for i in range(r)]
    BT = [[B[i][j] for i in range(r)] for j in range(m)]
    return integer_kernel(BT)


def matvec_rows(C, B):
    """C @ B for row-vector lists."""
    m = len(B[0]) if B else 0
    return [[sum(c * B[i][j] for i, c in enumerate(crow)) for j in range(m)] for crow in C]
