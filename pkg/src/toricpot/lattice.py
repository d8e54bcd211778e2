"""Exact integer and rational linear algebra for small lattices.

Everything here works on plain lists of lists with ``int`` or
:class:`fractions.Fraction` entries.  Sizes are tiny (dimension <= 4,
facet counts <= ~12), so simple classical algorithms suffice and stay
exact.
"""

from __future__ import annotations

from fractions import Fraction


def frac_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows) -> int:
    """Rank over the rationals."""
    m = frac_rows(rows)
    r = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(matrix):
    """Exact determinant of a square rational matrix."""
    m = frac_rows(matrix)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        result *= pv
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return sign * result


def solve(matrix, rhs):
    """Solve a square rational system exactly; ``None`` when singular."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(b)]
         for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def invert(matrix):
    """Exact inverse of a square rational matrix; ``None`` when singular."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)]
            for row in a]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Smith decomposition ``D = U @ A @ V`` with unimodular ``U``, ``V``.

    Returns ``(D, U, V)``; ``D`` is diagonal with nonnegative entries
    (divisibility chain not enforced beyond diagonality, which is all the
    lattice routines below need).
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    if pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            # clear column
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            # clear row
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done and all(a[i][t] == 0 for i in range(t + 1, rows)) \
                    and all(a[t][j] == 0 for j in range(t + 1, cols)):
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def saturation_basis(rows):
    """Basis of the saturation (rational row span intersected with Z^n).

    Returned rows are primitive integer vectors, sign-normalized so the
    first nonzero entry is positive.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    n = len(rows[0])
    r = rank(rows)
    if r == 0:
        return []
    _, _, v = smith_normal_form(rows)
    vinv = invert(v)
    basis = []
    for i in range(r):
        vec = [int(x) for x in vinv[i][:n]]
        assert all(Fraction(x) == y for x, y in zip(vec, vinv[i]))
        basis.append(_normalize_sign(vec))
    return basis


def _normalize_sign(vec):
    for x in vec:
        if x != 0:
            return vec if x > 0 else [-v for v in vec]
    return vec


def integer_coordinates(vec, basis_rows):
    """Express ``vec`` as an integer combination of ``basis_rows``.

    Returns the coefficient list, or ``None`` when no integer (or even
    rational) solution exists.
    """
    if not basis_rows:
        return [] if all(x == 0 for x in vec) else None
    k = len(basis_rows)
    n = len(vec)
    # least-structure exact solve of c @ basis = vec via normal equations
    # is unreliable for rank-deficient data; use augmented elimination.
    m = [[Fraction(basis_rows[j][i]) for j in range(k)] + [Fraction(vec[i])]
         for i in range(n)]
    # Gaussian elimination on the n x (k+1) system
    pivots = []
    row = 0
    for col in range(k):
        pivot = next((i for i in range(row, n) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for i in range(n):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    # consistency
    for i in range(row, n):
        if m[i][k] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for r_i, col in enumerate(pivots):
        coeffs[col] = m[r_i][k]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs]


def extend_basis(prev_rows, target_rows):
    """Extend ``prev_rows`` to a basis of the lattice spanned by ``target_rows``.

    ``prev_rows`` must be a basis of a saturated sublattice of the lattice
    with basis ``target_rows``.  Returns only the new rows.
    """
    if not prev_rows:
        return [list(r) for r in target_rows]
    coords = [integer_coordinates(p, target_rows) for p in prev_rows]
    if any(c is None for c in coords):
        return None
    k = len(target_rows)
    _, _, v = smith_normal_form(coords)
    vinv = invert(v)
    extension = []
    for i in range(len(prev_rows), k):
        coeff = [int(x) for x in vinv[i]]
        vec = [sum(c * target_rows[j][t] for j, c in enumerate(coeff))
               for t in range(len(target_rows[0]))]
        extension.append(_normalize_sign(vec))
    return extension


def reduce_against(vec, reducers, search=3):
    """Greedy L1-minimization of ``vec`` by integer combinations of ``reducers``.

    Deterministic small-scale cleanup used to canonicalize extension
    vectors of a flag basis; correctness does not depend on it.
    """
    best = list(vec)
    improved = True
    while improved:
        improved = False
        for red in reducers:
            for f in range(-search, search + 1):
                cand = [a + f * b for a, b in zip(best, red)]
                if _l1(cand) < _l1(best):
                    best = cand
                    improved = True
    return _normalize_sign(best)


def _l1(vec):
    return sum(abs(x) for x in vec)
