"""Small exact linear algebra over ``Fraction``.

Matrices here are tiny (a handful of rows), so plain Gaussian elimination is
enough; keeping it local avoids pulling a CAS into the hot paths.
"""

from fractions import Fraction


def row_reduce(rows):
    """Return the reduced row echelon form (nonzero rows only) and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m[:r], pivots


def rank(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(row_reduce(rows)[1])


def inverse(matrix):
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def sparse_rank(vectors):
    """Rank of a list of ``{key: coeff}`` dictionaries."""
    keys = sorted({k for v in vectors for k in v}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for v in vectors:
        row = [Fraction(0)] * len(keys)
        for k, c in v.items():
            row[index[k]] = Fraction(c)
        rows.append(row)
    if not keys:
        return 0
    return rank(rows)
