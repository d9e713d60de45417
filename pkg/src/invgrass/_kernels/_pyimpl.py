"""Pure-Python mod-p kernels (reference implementation and fallback)."""


def rref_mod(rows, ncols, p):
    """RREF over F_p of integer rows; returns (nonzero rows, pivots)."""
    rows = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def reduce_mod(basis, pivots, v, p):
    v = [x % p for x in v]
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return v


def is_invariant_mod(basis, pivots, gens, p):
    """Does the row space of an RREF ``basis`` contain ``b * g`` for all rows b
    and generator matrices g?"""
    for b in basis:
        for g in gens:
            n = len(g)
            img = [sum(b[i] * g[i][j] for i in range(n)) % p for j in range(len(g[0]))]
            if any(reduce_mod(basis, pivots, img, p)):
                return False
    return True


def _det_mod(mat, p):
    mat = [list(r) for r in mat]
    m = len(mat)
    det = 1
    for c in range(m):
        piv = next((i for i in range(c, m) if mat[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det = det * mat[c][c] % p
        inv = pow(mat[c][c], p - 2, p)
        for i in range(c + 1, m):
            f = mat[i][c] * inv % p
            if f:
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[c])]
    return det % p


def plucker_mod(rows, subsets, p):
    """All maximal minors of ``rows`` on the given column subsets, mod p."""
    return [_det_mod([[r[c] for c in s] for r in rows], p) for s in subsets]
