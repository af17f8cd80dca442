"""Brute-force polynomial-matrix references: minimal shifted Popov bases by
coefficient-level linear algebra, cofactor determinants, naive Smith form."""

import itertools

import oracles


def solve_linear(rows, rhs, p):
    """One solution x of rows * x = rhs mod p, or None."""
    n = len(rows)
    k = len(rows[0]) if rows else 0
    aug = [[c % p for c in row] + [rhs[i] % p] for i, row in enumerate(rows)]
    piv_cols = []
    r = 0
    for col in range(k):
        sel = None
        for rr in range(r, n):
            if aug[rr][col]:
                sel = rr
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [c * inv % p for c in aug[r]]
        for rr in range(n):
            if rr != r and aug[rr][col]:
                f = aug[rr][col]
                aug[rr] = [(c - f * d) % p for c, d in zip(aug[rr], aug[r])]
        piv_cols.append(col)
        r += 1
    for rr in range(r, n):
        if aug[rr][k]:
            return None
    x = [0] * k
    for rr, col in enumerate(piv_cols):
        x[col] = aug[rr][k]
    return x


def _pivot_system(F, sigma, t, p, j, d, degcaps):
    """Linear system for a module element with pivot j of degree d.

    F is an m x k grid of int lists; degcaps[i] is the max allowed degree of
    v_i (v_j is monic of degree exactly d, its top coefficient is fixed).
    Returns (rows, rhs, layout) where layout maps unknown index -> (i, power).
    """
    m = len(F)
    k = len(F[0])
    layout = []
    for i in range(k):
        top = degcaps[i]
        if i == j:
            top = d - 1
        for power in range(top + 1):
            layout.append((i, power))
    rows = []
    rhs = []
    for r in range(m):
        # coefficients of sum_i F[r][i] * v_i up to y^sigma
        for s in range(sigma):
            row = []
            for (i, power) in layout:
                fc = F[r][i]
                c = fc[s - power] if 0 <= s - power < len(fc) else 0
                row.append(c)
            fc = F[r][j]
            lead = fc[s - d] if 0 <= s - d < len(fc) else 0
            rows.append(row)
            rhs.append((-lead) % p)
    return rows, rhs, layout


def bf_popov_approximant(F, sigma, t, p):
    """The canonical t-shifted Popov basis of {v : F v = 0 mod y^sigma},
    as a k x k grid of int lists.  Exponential-ish; test sizes only."""
    m = len(F)
    k = len(F[0])
    # pass 1: pivot degrees
    degs = []
    for j in range(k):
        for d in range(0, sigma + max(t) - min(t) + 1):
            caps = []
            for i in range(k):
                slack = d + t[j] - t[i]
                if i > j:
                    slack -= 1
                caps.append(min(slack, d + sigma))
            rows, rhs, layout = _pivot_system(F, sigma, t, p, j, d, caps)
            if solve_linear(rows, rhs, p) is not None:
                degs.append(d)
                break
        else:
            raise AssertionError("no pivot degree found")
    # pass 2: canonical columns under the Popov row constraints
    cols = []
    for j in range(k):
        caps = [degs[i] - 1 for i in range(k)]
        caps[j] = degs[j] - 1
        rows, rhs, layout = _pivot_system(F, sigma, t, p, j, degs[j], caps)
        x = solve_linear(rows, rhs, p)
        assert x is not None
        col = [[0] * (max(degs) + degs[j] + 1) for _ in range(k)]
        for val, (i, power) in zip(x, layout):
            col[i][power] = val
        col[j][degs[j]] = 1
        cols.append([oracles.trim(c) for c in col])
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def bf_det(grid, p):
    """Cofactor-expansion determinant of a grid of int-list polynomials."""
    k = len(grid)
    if k == 0:
        return [1]
    if k == 1:
        return list(grid[0][0])
    out = []
    for i in range(k):
        if not grid[i][0]:
            continue
        minor = [row[1:] for r, row in enumerate(grid) if r != i]
        term = oracles.omul(grid[i][0], bf_det(minor, p), p)
        if i % 2:
            term = [(-c) % p for c in term]
        out = oracles.oadd(out, term, p)
    return out


def companion_matrix(f, p):
    """Multiplication-by-x matrix on K[x]/<f> (columns are images of x^j)."""
    n = len(f) - 1
    cols = []
    for j in range(n):
        xj1 = [0] * (j + 1) + [1]
        cols.append(oracles.orem(xj1, f, p) + [0] * n)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mult_matrix(f, a, p):
    """Multiplication-by-a matrix M_a on K[x]/<f>."""
    n = len(f) - 1
    cols = []
    for j in range(n):
        img = oracles.orem(oracles.omul([0] * j + [1], a, p), f, p)
        cols.append(img + [0] * (n - len(img)))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def smith_invariant_factors(M, p):
    """Invariant factors of yI - M over F_p[y], largest degree first.

    Classical elimination with polynomial gcd steps; M is a constant n x n
    integer matrix.  Returns a list of n monic int-list polynomials (trailing
    entries may be [1]).
    """
    n = len(M)
    A = [[oracles.trim([(-M[i][j]) % p]) if i != j
          else [(-M[i][j]) % p, 1]
          for j in range(n)] for i in range(n)]

    def deg(u):
        return len(u) - 1 if u else -1

    for corner in range(n):
        while True:
            # find the nonzero entry of smallest degree in the working block
            best = None
            for i in range(corner, n):
                for j in range(corner, n):
                    if A[i][j] and (best is None or deg(A[i][j]) < deg(best[2])):
                        best = (i, j, A[i][j])
            if best is None:
                break
            bi, bj, _ = best
            A[corner], A[bi] = A[bi], A[corner]
            for row in A:
                row[corner], row[bj] = row[bj], row[corner]
            pivot = A[corner][corner]
            done = True
            for i in range(corner + 1, n):
                if A[i][corner]:
                    q, r = oracles.odivrem(A[i][corner], pivot, p)
                    for j in range(corner, n):
                        A[i][j] = oracles.osub(
                            A[i][j], oracles.omul(q, A[corner][j], p), p)
                    if r:
                        done = False
            for j in range(corner + 1, n):
                if A[corner][j]:
                    q, r = oracles.odivrem(A[corner][j], pivot, p)
                    for i in range(corner, n):
                        A[i][j] = oracles.osub(
                            A[i][j], oracles.omul(q, A[i][corner], p), p)
                    if r:
                        done = False
            if done:
                off = False
                for i in range(corner + 1, n):
                    if A[i][corner] or A[corner][i]:
                        off = True
                if not off:
                    break
    # divisibility chain fix-up: s_1 | s_2 | ...
    diags = [A[i][i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g = oracles.ogcd(diags[i], diags[j], p)
            lcm = oracles.odivrem(
                oracles.omul(diags[i], diags[j], p), g, p)[0] if g else []
            diags[i], diags[j] = g, lcm
    monic = []
    for d in diags:
        if d:
            inv = pow(d[-1], -1, p)
            monic.append([c * inv % p for c in d])
        else:
            monic.append([])
    monic.sort(key=lambda u: -len(u))
    return monic
