"""Exact integer matrix utilities: Smith normal form and lattice bases."""

from __future__ import annotations

from fractions import Fraction


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def smith_normal_form(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, S, V) with U*A*V = S diagonal, U and V unimodular.

    The diagonal is normalized so each entry is non-negative and divides
    the next.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    s = [row[:] for row in a]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for r in s:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    t = 0
    while t < min(rows, cols):
        # move a non-zero pivot to (t, t)
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    add_row(t, i, -q)
                    if s[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    add_col(t, j, -q)
                    if s[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # pivot must divide the rest of the block
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % s[t][t]:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    for i in range(min(rows, cols)):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            u[i] = [-x for x in u[i]]
    return u, s, v


def invert_unimodular(m: list[list[int]]) -> list[list[int]]:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    res = [[int(x) for x in row] for row in out]
    if any(out[i][j] != res[i][j] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return res


def rational_inverse(m: list[list[int]]) -> list[list[Fraction]]:
    """Inverse of a non-singular integer matrix over Q."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [[a[i][n + j] for j in range(n)] for i in range(n)]


def row_lattice_basis(rows: list[list[int]], n: int) -> list[list[int]]:
    """Basis (as rows) of the lattice in Z^n spanned by the given rows.

    The input must span a full-rank sublattice.  Computed by column-style
    Hermite reduction via repeated gcd elimination.
    """
    work = [row[:] for row in rows if any(row)]
    basis: list[list[int]] = []
    for col in range(n):
        # eliminate column col; rows cleared in this column wait for later columns
        pending = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        while len(pending) > 1:
            pending.sort(key=lambda r: abs(r[col]))
            a = pending[0]
            new_pending = [a]
            for b in pending[1:]:
                q = b[col] // a[col]
                nb = [x - q * y for x, y in zip(b, a)]
                if nb[col]:
                    new_pending.append(nb)
                elif any(nb):
                    rest.append(nb)
            pending = new_pending
        if not pending:
            raise ValueError("rows do not span a full-rank lattice")
        pivot = pending[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        work = rest
    return basis
