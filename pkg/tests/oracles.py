"""Reference computations that share no code with the package under test.

Linear algebra here is plain Python over ``Fraction``/``int``.  The
cohomology oracle builds the inhomogeneous cochain complex directly and
only borrows FLINT's Smith form (a separate library) for the final
quotient.
"""
from fractions import Fraction
from itertools import combinations
import math

import flint


def bareiss_det(rows):
    """Fraction-free determinant of a square integer matrix."""
    A = [list(r) for r in rows]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rational_rank(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, m):
            f = A[i][c] / A[r][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def minor_gcd_factors(rows):
    """Invariant factors from determinantal divisors ``D_k = gcd of k x k minors``.

    Zeros mark ranks beyond the rank of the matrix.  The scan over minors
    stops once the gcd reaches ``D_{k-1} * d_{k-1}``, which divides every
    ``D_k`` because invariant factors divide each other.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    k_max = min(m, n)
    r = rational_rank(rows)
    out = []
    D_prev, d_prev = 1, 1
    for k in range(1, k_max + 1):
        if k > r:
            out.append(0)
            continue
        floor = D_prev * d_prev
        g = 0
        for I in combinations(range(m), k):
            for J in combinations(range(n), k):
                g = math.gcd(g, bareiss_det([[rows[i][j] for j in J] for i in I]))
                if g == floor:
                    break
            if g == floor:
                break
        d = g // D_prev
        out.append(d)
        D_prev, d_prev = g, d
    return out


# ---------------------------------------------------------------------------
# group cohomology from the bar complex
# ---------------------------------------------------------------------------

def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def element_matrices(G, gens_action, elements=None):
    """``rho(g)`` for every element index, by BFS on the permutations.

    ``gens_action[i]`` acts for ``G.generators[i]`` on row vectors.
    """
    from torusrat.groups.perm import perm_mul

    r = len(gens_action[0])
    e = tuple(range(G.degree))
    rho = {e: [[int(i == j) for j in range(r)] for i in range(r)]}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s, A in zip(G.generators, gens_action):
                y = perm_mul(x, s)
                if y not in rho:
                    rho[y] = _matmul(rho[x], A)
                    nxt.append(y)
        frontier = nxt
    return {G.index[p]: A for p, A in rho.items()}


def _quotient(sub_rows, sup_rows):
    """Torsion invariants (>1) of ``span(sup) / span(sub)`` for a saturated ``sup``.

    Saturation makes the ambient quotient by ``sup`` free, so the torsion of
    ``sup / sub`` is the torsion of ``Z^n / sub``: the Smith form of ``sub``.
    """
    t = len(sup_rows)
    if t == 0:
        return ()
    if not sub_rows or rational_rank(sub_rows) != t:
        raise ValueError("quotient is infinite")
    S = flint.fmpz_mat(sub_rows).snf()
    diag = [abs(int(S[i, i])) for i in range(min(S.nrows(), S.ncols()))]
    return tuple(d for d in diag if d > 1)


def _kernel_rows(rows_as_cols, n_in):
    """Saturated integer basis of ``{x : x * A == 0}`` with ``A`` given as a column list."""
    if not rows_as_cols:
        return [[int(i == j) for j in range(n_in)] for i in range(n_in)]
    ncols = len(rows_as_cols)
    # left kernel via the HNF of [A | I], A being n_in x ncols
    aug = flint.fmpz_mat([[c[i] for c in rows_as_cols] + [int(i == j) for j in range(n_in)]
                          for i in range(n_in)])
    H = aug.hnf()
    out = []
    for i in range(n_in):
        row = [int(H[i, j]) for j in range(ncols + n_in)]
        if not any(row[:ncols]):
            out.append(row[ncols:])
    return out


def bar_h1(G, subgroup_elements, gens_action):
    """``H^1(H, M)`` from inhomogeneous 1-cochains ``f: H -> M`` with
    ``f(gh) = f(g) h + f(h)`` (row vectors, right action)."""
    rho = element_matrices(G, gens_action)
    els = list(subgroup_elements)
    pos = {x: i for i, x in enumerate(els)}
    r = len(gens_action[0])
    n = len(els) * r
    T = G.table
    # one column of d1 per (g, h, coordinate)
    cols = []
    for g in els:
        for h in els:
            gh = int(T[g, h])
            for c in range(r):
                col = [0] * n
                for a in range(r):
                    col[pos[g] * r + a] += rho[h][a][c]
                    col[pos[h] * r + a] += int(a == c)
                    col[pos[gh] * r + a] -= int(a == c)
                cols.append(col)
    Z1 = _kernel_rows(cols, n)
    # B^1: m -> (g -> m rho(g) - m)
    B1 = []
    for a in range(r):
        f = []
        for g in els:
            f += [rho[g][a][c] - int(a == c) for c in range(r)]
        B1.append(f)
    B1 = [b for b in B1 if any(b)]
    if not Z1:
        return ()
    if not B1:
        raise ValueError("H^1 of a lattice is finite; got an empty coboundary group")
    return _quotient(B1, Z1)


def bar_h0_hat(G, subgroup_elements, gens_action):
    """``M^H / N_H M`` from the degree-0 cocycles."""
    rho = element_matrices(G, gens_action)
    els = list(subgroup_elements)
    r = len(gens_action[0])
    cols = []
    for g in els:
        for c in range(r):
            cols.append([rho[g][a][c] - int(a == c) for a in range(r)])
    Z0 = _kernel_rows(cols, r)
    norm = [[sum(rho[g][a][c] for g in els) for c in range(r)] for a in range(r)]
    image = [row for row in norm if any(row)]
    if not Z0:
        return ()
    return _quotient(image, Z0)
