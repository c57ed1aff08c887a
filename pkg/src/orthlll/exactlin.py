"""Exact integer/rational linear algebra.

Matrices are plain lists of rows holding Python ``int`` or ``Fraction``
entries. Lattice bases follow the column convention: a basis is a list of
column vectors, and :func:`columns` / :func:`from_columns` convert between
the two views.
"""

from fractions import Fraction

__all__ = [
    "NotFullRankError",
    "columns",
    "from_columns",
    "transpose",
    "matmul",
    "dot",
    "norm_sq",
    "gram_matrix",
    "determinant",
    "rank",
    "solve_rational",
    "in_lattice",
    "same_lattice",
    "matrix_norm_bound",
    "oracle_kernel_basis",
]


class NotFullRankError(ValueError):
    """Raised when a matrix or basis is expected to have full column rank."""


def columns(rows):
    """Split a row-major matrix into its list of column vectors."""
    return [list(c) for c in zip(*rows)]


def from_columns(cols):
    """Assemble a row-major matrix from column vectors."""
    return [list(r) for r in zip(*cols)]


def transpose(rows):
    return [list(r) for r in zip(*rows)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def norm_sq(v):
    """Squared Euclidean norm of an integer (or rational) vector."""
    return sum(x * x for x in v)


def gram_matrix(basis_cols):
    """Return ``B^T B`` for a basis given as a list of columns."""
    n = len(basis_cols)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            g[i][j] = g[j][i] = dot(basis_cols[i], basis_cols[j])
    return g


def _echelon(rows):
    """Fraction-based row echelon form; returns (echelon rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(_echelon(rows)[1])


def determinant(square):
    """Exact determinant via Bareiss fraction-free elimination."""
    n = len(square)
    m = [list(r) for r in square]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def solve_rational(basis_cols, target):
    """Solve ``B x = target`` exactly over the rationals.

    ``B`` is given by its columns and must have full column rank. Returns the
    unique solution as a list of Fractions, or ``None`` when ``target`` is not
    in the rational span of the columns.
    """
    n = len(basis_cols)
    aug = [list(r) + [t] for r, t in zip(from_columns(basis_cols), target)]
    ech, pivots = _echelon(aug)
    if n in pivots:
        return None
    if pivots != list(range(n)):
        raise NotFullRankError("not full column rank")
    return [ech[i][n] for i in range(n)]


def in_lattice(basis_cols, v):
    """True when ``v`` is an integer combination of ``basis_cols``."""
    x = solve_rational(basis_cols, v)
    return x is not None and all(c.denominator == 1 for c in x)


def same_lattice(cols_a, cols_b):
    """Mutual integer solvability: each basis lies in the other's lattice."""
    if len(cols_a) != len(cols_b):
        return False
    return all(in_lattice(cols_b, c) for c in cols_a) and all(
        in_lattice(cols_a, c) for c in cols_b
    )


def matrix_norm_bound(a):
    """Maximum squared Euclidean norm over the rows and columns of ``a``.

    Its square root is the quantity ``||A||`` bounding every row and column
    norm. Returned squared so it stays an exact integer.
    """
    row_max = max(norm_sq(r) for r in a)
    col_max = max(norm_sq(c) for c in columns(a))
    return max(row_max, col_max)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def oracle_kernel_basis(a):
    """Basis of ``{m in Z^n : A^T m = 0}`` by unimodular column elimination.

    Works on ``A^T`` (k x n) with extended-gcd column operations, tracking the
    accumulated unimodular transform ``U``. Once ``A^T U`` is in column echelon
    form with k pivot columns, the remaining n - k columns of ``U`` are a basis
    of the integer kernel. Independent of any lattice reduction; meant as a
    test oracle.
    """
    n, k = len(a), len(a[0])
    if rank(a) != k:
        raise NotFullRankError("not full column rank")
    at = transpose(a)
    w = [list(r) for r in at]  # k x n, columns get combined
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def combine(c1, c2, p, q, r, s):
        # (col c1, col c2) <- (p*c1 + q*c2, r*c1 + s*c2), det(p q; r s) = +-1
        for mat in (w, u):
            for row in mat:
                x, y = row[c1], row[c2]
                row[c1], row[c2] = p * x + q * y, r * x + s * y

    piv = 0
    for row in range(k):
        for c in range(piv + 1, n):
            x, y = w[row][piv], w[row][c]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # new piv col = s*piv + t*c (entry g), new c = -(y/g)*piv + (x/g)*c (entry 0)
            combine(piv, c, s, t, -y // g, x // g)
        if w[row][piv] != 0:
            piv += 1
    if piv != k:
        raise NotFullRankError("not full column rank")
    return from_columns([[u[i][c] for i in range(n)] for c in range(k, n)]) if n > k else []

