"""Exact integer linear algebra on dense matrices.

Row-vector convention throughout: a matrix acts on the right of row vectors,
a lattice is the row span of a matrix, and ``solve`` finds ``X`` with
``X @ A == B``.

Heavy lifting (HNF, determinant, invariant factors) is delegated to FLINT via
``python-flint``.  Transforms that FLINT does not expose are recovered from
HNF of an augmented matrix, or computed in Python for small inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import flint

Matrix = flint.fmpz_mat


class ZlinError(ValueError):
    """Raised on malformed matrix input or violated preconditions."""


def mat(rows: Sequence[Sequence[int]] | Matrix, ncols: int | None = None) -> Matrix:
    """Coerce nested sequences to an ``fmpz_mat``.

    ``ncols`` is needed for empty row lists.
    """
    if isinstance(rows, flint.fmpz_mat):
        return rows
    rows = [list(r) for r in rows]
    if not rows:
        return flint.fmpz_mat(0, ncols or 0)
    width = len(rows[0])
    if ncols is not None and width != ncols:
        raise ZlinError(f"expected {ncols} columns, got {width}")
    for r in rows:
        if len(r) != width:
            raise ZlinError("ragged matrix rows")
    if width == 0:
        return flint.fmpz_mat(len(rows), 0)
    return flint.fmpz_mat(rows)


def to_rows(A: Matrix) -> list[list[int]]:
    """Return the entries of ``A`` as a list of Python-int rows."""
    if A.nrows() == 0:
        return []
    if A.ncols() == 0:
        return [[] for _ in range(A.nrows())]
    return [[int(x) for x in row] for row in A.tolist()]


def identity(n: int) -> Matrix:
    out = flint.fmpz_mat(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros(r: int, c: int) -> Matrix:
    return flint.fmpz_mat(r, c)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ZlinError("hstack of nothing")
    r = blocks[0].nrows()
    rows: list[list[int]] = [[] for _ in range(r)]
    for B in blocks:
        if B.nrows() != r:
            raise ZlinError("hstack row mismatch")
        for i, row in enumerate(to_rows(B)):
            rows[i].extend(row)
    return mat(rows, sum(B.ncols() for B in blocks))


def vstack(blocks: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    rows: list[list[int]] = []
    for B in blocks:
        if ncols is None:
            ncols = B.ncols()
        elif B.ncols() != ncols:
            raise ZlinError("vstack column mismatch")
        rows.extend(to_rows(B))
    return mat(rows, ncols or 0)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(B.nrows() for B in blocks)
    m = sum(B.ncols() for B in blocks)
    out = flint.fmpz_mat(n, m)
    r0 = c0 = 0
    for B in blocks:
        for i in range(B.nrows()):
            for j in range(B.ncols()):
                v = B[i, j]
                if v:
                    out[r0 + i, c0 + j] = v
        r0 += B.nrows()
        c0 += B.ncols()
    return out


def submatrix(A: Matrix, rows: Iterable[int], cols: Iterable[int] | None = None) -> Matrix:
    rows = list(rows)
    cols = list(range(A.ncols())) if cols is None else list(cols)
    out = flint.fmpz_mat(len(rows), len(cols))
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            v = A[i, j]
            if v:
                out[a, b] = v
    return out


def is_zero_row(A: Matrix, i: int) -> bool:
    return all(A[i, j] == 0 for j in range(A.ncols()))


def nonzero_rows(A: Matrix) -> Matrix:
    keep = [i for i in range(A.nrows()) if not is_zero_row(A, i)]
    return submatrix(A, keep)


def inverse_unimodular(A: Matrix) -> Matrix:
    """Inverse of a square integer matrix with determinant +-1."""
    d = A.det()
    if abs(int(d)) != 1:
        raise ZlinError("matrix is not unimodular")
    inv = A.inv()
    return flint.fmpz_mat([[int(x) for x in row] for row in inv.tolist()]) if A.nrows() else A


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def hnf_only(A: Matrix) -> Matrix:
    """Row-style HNF of ``A`` (upper echelon, positive pivots, zero rows last)."""
    A = mat(A)
    if A.nrows() == 0 or A.ncols() == 0:
        return flint.fmpz_mat(A.nrows(), A.ncols())
    return A.hnf()


def hnf(A: Matrix) -> tuple[Matrix, Matrix]:
    """Return ``(H, U)`` with ``U`` unimodular and ``U * A == H`` in row HNF.

    Uses the HNF of ``[A | I]``.  That matrix has full row rank, so its HNF is
    ``W [A | I]`` for a unique unimodular ``W``, whose left block is the HNF of
    ``A`` and whose right block is ``W`` itself.
    """
    A = mat(A)
    m, n = A.nrows(), A.ncols()
    if m == 0:
        return flint.fmpz_mat(0, n), flint.fmpz_mat(0, 0)
    if n == 0:
        return flint.fmpz_mat(m, 0), identity(m)
    aug = hstack([A, identity(m)]).hnf()
    H = submatrix(aug, range(m), range(n))
    U = submatrix(aug, range(m), range(n, n + m))
    return H, U


def row_basis(A: Matrix) -> Matrix:
    """HNF basis (nonzero rows only) of the row lattice of ``A``."""
    return nonzero_rows(hnf_only(A))


def rank(A: Matrix) -> int:
    A = mat(A)
    if A.nrows() == 0 or A.ncols() == 0:
        return 0
    return A.rank()


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U * A * V == diag(D)`` with ``U``, ``V`` unimodular.

    ``D`` lists ``min(rows, cols)`` nonnegative invariant factors, each
    dividing the next, zeros last.
    """

    D: tuple[int, ...]
    U: Matrix
    V: Matrix


def invariant_factors(A: Matrix) -> tuple[int, ...]:
    """Diagonal of the Smith form, computed by FLINT without transforms."""
    A = mat(A)
    k = min(A.nrows(), A.ncols())
    if k == 0:
        return ()
    S = A.snf()
    return tuple(abs(int(S[i, i])) for i in range(k))


def _snf_python(rows: list[list[int]], m: int, n: int):
    A = [r[:] for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col dst += c * col src
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                best = None
                for i in range(t, m):
                    v = A[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, "r")
                for j in range(t, n):
                    v = A[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # divisibility: fold any offending row into the pivot row
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    D = tuple(A[i][i] for i in range(min(m, n)))
    return D, U, V


def snf(A: Matrix) -> SmithForm:
    """Smith normal form with transforms (pure Python; intended for small inputs)."""
    A = mat(A)
    m, n = A.nrows(), A.ncols()
    D, U, V = _snf_python(to_rows(A), m, n)
    return SmithForm(D, mat(U, m) if m else flint.fmpz_mat(0, 0), mat(V, n) if n else flint.fmpz_mat(0, 0))


# ---------------------------------------------------------------------------
# Kernels, solving, quotients
# ---------------------------------------------------------------------------

def kernel_saturated(A: Matrix) -> Matrix:
    """HNF basis of the left kernel ``{x : x * A == 0}`` (always saturated)."""
    A = mat(A)
    m, n = A.nrows(), A.ncols()
    if m == 0:
        return flint.fmpz_mat(0, 0)
    if n == 0:
        return identity(m)
    H, U = hnf(A)
    r = 0
    while r < m and not is_zero_row(H, r):
        r += 1
    if r == m:
        return flint.fmpz_mat(0, m)
    K = submatrix(U, range(r, m))
    return row_basis(K)


def _pivots(H: Matrix) -> list[int]:
    piv = []
    j = 0
    for i in range(H.nrows()):
        while j < H.ncols() and H[i, j] == 0:
            j += 1
        if j == H.ncols():
            break
        piv.append(j)
        j += 1
    return piv


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Integer ``X`` with ``X * A == B``, or ``None`` when no solution exists."""
    A, B = mat(A), mat(B)
    if B.ncols() != A.ncols():
        raise ZlinError("solve: column mismatch")
    m = A.nrows()
    if B.nrows() == 0:
        return flint.fmpz_mat(0, m)
    if m == 0 or A.ncols() == 0:
        return flint.fmpz_mat(B.nrows(), m) if B.is_zero() else None
    H, U = hnf(A)
    piv = _pivots(H)
    r = len(piv)
    if r == 0:
        return flint.fmpz_mat(B.nrows(), m) if B.is_zero() else None
    # Y * H[:r, piv] == B[:, piv] has a unique rational solution.
    Hp = submatrix(H, range(r), piv)
    Bp = submatrix(B, range(B.nrows()), piv)
    Yq = Hp.transpose().solve(Bp.transpose()).transpose()
    if any(x.q != 1 for row in Yq.tolist() for x in row):
        return None
    Y = flint.fmpz_mat([[int(x.p) for x in row] for row in Yq.tolist()])
    Hr = submatrix(H, range(r))
    if Y * Hr != B:
        return None
    return Y * submatrix(U, range(r))


def in_lattice(basis: Matrix, v: Sequence[int] | Matrix) -> bool:
    B = v if isinstance(v, flint.fmpz_mat) else mat([list(v)])
    return solve(basis, B) is not None


def lattice_equal(A: Matrix, B: Matrix) -> bool:
    return to_rows(row_basis(A)) == to_rows(row_basis(B))


def quotient_invariants(sub: Matrix, sup: Matrix) -> tuple[int, ...]:
    """Invariant factors of ``span(sup) / span(sub)``, one per basis vector of ``sup``.

    ``0`` entries denote free summands.  ``sub`` must lie in the row span of
    ``sup``.
    """
    sup_b = row_basis(sup)
    t = sup_b.nrows()
    sub_m = mat(sub, sup_b.ncols())
    if t == 0:
        if not sub_m.is_zero():
            raise ZlinError("sub is not contained in sup")
        return ()
    C = solve(sup_b, sub_m) if sub_m.nrows() else flint.fmpz_mat(0, t)
    if C is None:
        raise ZlinError("sub is not contained in sup")
    if C.nrows() == 0:
        return tuple([0] * t)
    d = list(invariant_factors(C))
    d += [0] * (t - len(d))
    return tuple(d)


def det(A: Matrix) -> int:
    A = mat(A)
    if A.nrows() != A.ncols():
        raise ZlinError("det of non-square matrix")
    if A.nrows() == 0:
        return 1
    return int(A.det())


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, int(x))
    return g


# ---------------------------------------------------------------------------
# Text format: header "rows cols", then one row per line.
# ---------------------------------------------------------------------------

def format_matrix(A: Matrix) -> str:
    A = mat(A)
    lines = [f"{A.nrows()} {A.ncols()}"]
    lines += [" ".join(str(x) for x in row) for row in to_rows(A)]
    return "\n".join(lines) + "\n"


def read_matrix_lines(lines: list[str], pos: int = 0) -> tuple[Matrix, int]:
    """Parse one matrix starting at ``lines[pos]``; return it and the next position."""
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines):
        raise ZlinError("expected matrix header, found end of input")
    head = lines[pos].split()
    if len(head) != 2:
        raise ZlinError(f"bad matrix header: {lines[pos]!r}")
    try:
        r, c = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ZlinError(f"bad matrix header: {lines[pos]!r}") from exc
    if r < 0 or c < 0:
        raise ZlinError("negative matrix dimension")
    pos += 1
    rows = []
    for _ in range(r):
        if pos >= len(lines):
            raise ZlinError("matrix truncated")
        try:
            row = [int(x) for x in lines[pos].split()]
        except ValueError as exc:
            raise ZlinError(f"non-integer entry in {lines[pos]!r}") from exc
        if len(row) != c:
            raise ZlinError(f"expected {c} entries, got {len(row)}")
        rows.append(row)
        pos += 1
    return (mat(rows, c) if r else flint.fmpz_mat(0, c)), pos


def parse_matrix(text: str) -> Matrix:
    lines = text.splitlines()
    A, pos = read_matrix_lines(lines)
    if any(l.strip() for l in lines[pos:]):
        raise ZlinError("trailing data after matrix")
    return A


def write_matrix(A: Matrix, fh: TextIO) -> None:
    fh.write(format_matrix(A))
