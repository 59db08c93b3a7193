"""Linear algebra over F_p, F_p[D] and its fraction field.

Polynomials are trimmed coefficient tuples over Z_p.  Fractions are
``(num, den)`` pairs with ``den`` monic and coprime to ``num``.
"""

from __future__ import annotations

from .poly import _padd, _pmul, _psub, _pscale, _trim


def fdivmod(a, b, p):
    inv = pow(b[-1], -1, p)
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return (), _trim(rem)
    q = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if not c:
            continue
        f = c * inv % p
        q[i - db] = f
        for j, y in enumerate(b):
            rem[i - db + j] = (rem[i - db + j] - f * y) % p
    return _trim(q), _trim(rem[:db])


def monic(a, p):
    if not a:
        return a
    return _pscale(a, pow(a[-1], -1, p), p)


def fgcd(a, b, p):
    while b:
        a, b = b, fdivmod(a, b, p)[1]
    return monic(a, p)


# -- fractions over F_p(D) --------------------------------------------------

ZERO = ((), (1,))
ONE = ((1,), (1,))


def frac(num, den, p):
    if not num:
        return ZERO
    g = fgcd(num, den, p)
    if g != (1,):
        num = fdivmod(num, g, p)[0]
        den = fdivmod(den, g, p)[0]
    c = pow(den[-1], -1, p)
    return _pscale(num, c, p), _pscale(den, c, p)


def fadd(x, y, p):
    if x[1] == y[1]:
        return frac(_padd(x[0], y[0], p), x[1], p)
    return frac(_padd(_pmul(x[0], y[1], p), _pmul(y[0], x[1], p), p), _pmul(x[1], y[1], p), p)


def fsub(x, y, p):
    return fadd(x, (_psub((), y[0], p), y[1]), p)


def fmul(x, y, p):
    if not x[0] or not y[0]:
        return ZERO
    return frac(_pmul(x[0], y[0], p), _pmul(x[1], y[1], p), p)


def fdiv(x, y, p):
    return fmul(x, (y[1], y[0]), p)


# -- matrices over F_p[D] ---------------------------------------------------

def echelon_pivots(rows, p):
    """Pivot columns of a row echelon form of a matrix over F_p[D].

    Fraction-free elimination with primitive-part normalisation.  Returns
    ``(pivot_cols, pivot_rows)`` where ``pivot_rows`` are indices of the
    original rows that were used as pivots.
    """
    work = [list(r) for r in rows]
    idx = list(range(len(work)))
    ncols = len(work[0]) if work else 0
    pivots, used = [], []
    top = 0
    for c in range(ncols):
        sel = None
        for i in range(top, len(work)):
            if work[i][c]:
                if sel is None or len(work[i][c]) < len(work[sel][c]):
                    sel = i
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        idx[top], idx[sel] = idx[sel], idx[top]
        piv = work[top][c]
        for i in range(top + 1, len(work)):
            e = work[i][c]
            if not e:
                continue
            g = fgcd(piv, e, p)
            a = fdivmod(piv, g, p)[0]
            b = fdivmod(e, g, p)[0]
            row = [_psub(_pmul(a, x, p), _pmul(b, y, p), p) for x, y in zip(work[i], work[top])]
            work[i] = _primitive(row, p)
        pivots.append(c)
        used.append(idx[top])
        top += 1
        if top == len(work):
            break
    return pivots, used


def _primitive(row, p):
    g = ()
    for x in row:
        if x:
            g = fgcd(g, x, p) if g else monic(x, p)
            if g == (1,):
                return row
    if not g or g == (1,):
        return row
    return [fdivmod(x, g, p)[0] for x in row]


def rank(rows, p) -> int:
    return len(echelon_pivots(rows, p)[0])


def solve_left(rows, target, p):
    """Solve sum_j x_j rows[j] = target over F_p(D).

    Returns ``(solution, unique)``: ``solution`` is a list of fractions or
    None when inconsistent; ``unique`` is False when the rows are dependent
    (in which case one particular solution is returned).
    """
    m = len(rows)
    n = len(target)
    # augmented system: one equation per column, unknowns x_0..x_{m-1}
    eqs = [[(rows[j][c], (1,)) for j in range(m)] + [(target[c], (1,))] for c in range(n)]
    eqs = [[frac(a, b, p) if a else ZERO for a, b in e] for e in eqs]
    pivcols = []
    top = 0
    for j in range(m):
        sel = next((i for i in range(top, n) if eqs[i][j][0]), None)
        if sel is None:
            continue
        eqs[top], eqs[sel] = eqs[sel], eqs[top]
        inv = fdiv(ONE, eqs[top][j], p)
        eqs[top] = [fmul(inv, x, p) for x in eqs[top]]
        for i in range(n):
            if i != top and eqs[i][j][0]:
                f = eqs[i][j]
                eqs[i] = [fsub(x, fmul(f, y, p), p) for x, y in zip(eqs[i], eqs[top])]
        pivcols.append(j)
        top += 1
    for i in range(top, n):
        if eqs[i][m][0]:
            return None, len(pivcols) == m
    sol = [ZERO] * m
    for i, j in enumerate(pivcols):
        sol[j] = eqs[i][m]
    return sol, len(pivcols) == m


# -- dense linear algebra over F_p ------------------------------------------

def affine_solve(A, b, p):
    """Solve A x = b over F_p.  Returns (particular or None, kernel basis)."""
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    M = [list(A[i]) + [b[i]] for i in range(nrows)]
    pivcols = []
    top = 0
    for c in range(ncols):
        sel = next((i for i in range(top, nrows) if M[i][c] % p), None)
        if sel is None:
            continue
        M[top], M[sel] = M[sel], M[top]
        inv = pow(M[top][c], -1, p)
        M[top] = [x * inv % p for x in M[top]]
        for i in range(nrows):
            if i != top and M[i][c] % p:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[top])]
        pivcols.append(c)
        top += 1
        if top == nrows:
            break
    if any(M[i][ncols] % p for i in range(top, nrows)):
        particular = None
    else:
        particular = [0] * ncols
        for i, c in enumerate(pivcols):
            particular[c] = M[i][ncols] % p
    free = [c for c in range(ncols) if c not in set(pivcols)]
    kernel = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, c in enumerate(pivcols):
            v[c] = (-M[i][fc]) % p
        kernel.append(v)
    return particular, kernel


def fxgcd_inverse(a, mod, p):
    """Inverse of a modulo ``mod`` in F_p[D], or None if not coprime."""
    r0, r1 = mod, fdivmod(a, mod, p)[1]
    s0, s1 = (), (1,)
    while r1:
        q, rem = fdivmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    if len(r0) != 1:
        return None
    return _pscale(fdivmod(s0, mod, p)[1], pow(r0[0], -1, p), p)
