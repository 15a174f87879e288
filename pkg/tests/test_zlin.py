import io

import pytest
from hypothesis import given, settings, strategies as st

from torusrat import zlin
from oracles import bareiss_det, minor_gcd_factors, rational_rank

entries = st.integers(-9, 9)


@st.composite
def int_matrices(draw, max_dim=8):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    # sparse, scaled and low-rank shapes exercise the edge cases
    kind = draw(st.sampled_from(["dense", "sparse", "scaled", "lowrank"]))
    if kind == "lowrank":
        k = draw(st.integers(1, min(m, n)))
        L = draw(st.lists(st.lists(entries, min_size=k, max_size=k), min_size=m, max_size=m))
        R = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=k, max_size=k))
        return [[sum(L[i][t] * R[t][j] for t in range(k)) for j in range(n)] for i in range(m)]
    elem = st.sampled_from([0, 0, 0, 1, -1, 2, 3]) if kind == "sparse" else entries
    rows = draw(st.lists(st.lists(elem, min_size=n, max_size=n), min_size=m, max_size=m))
    if kind == "scaled":
        c = draw(st.sampled_from([2, 3, 6]))
        rows = [[c * x for x in r] for r in rows]
    return rows


@st.composite
def unimodular(draw, n):
    U = zlin.identity(n)
    for _ in range(draw(st.integers(0, 3 * n))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i == j:
            continue
        c = draw(st.integers(-3, 3))
        E = zlin.identity(n)
        E[i, j] = c
        U = E * U
    return U


def is_row_hnf(H):
    rows = zlin.to_rows(H)
    last = -1
    seen_zero = False
    for i, r in enumerate(rows):
        if not any(r):
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = next(j for j, x in enumerate(r) if x)
        if p <= last or r[p] <= 0:
            return False
        if any(not 0 <= rows[k][p] < r[p] for k in range(i)):
            return False
        last = p
    return True


@settings(max_examples=500, deadline=None)
@given(int_matrices())
def test_invariant_factors_match_minor_gcds(rows):
    A = zlin.mat(rows)
    assert list(zlin.invariant_factors(A)) == minor_gcd_factors(rows)
    assert zlin.rank(A) == rational_rank(rows)


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_dim=6))
def test_hnf_transform(rows):
    A = zlin.mat(rows)
    H, U = zlin.hnf(A)
    assert U * A == H
    assert abs(zlin.det(U)) == 1
    assert is_row_hnf(H)
    assert H == zlin.hnf_only(A)


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_dim=6))
def test_snf_transform(rows):
    A = zlin.mat(rows)
    S = zlin.snf(A)
    m, n = len(rows), len(rows[0])
    D = zlin.zeros(m, n)
    for i, d in enumerate(S.D):
        D[i, i] = d
    assert S.U * A * S.V == D
    assert abs(zlin.det(S.U)) == 1 and abs(zlin.det(S.V)) == 1
    assert S.D == zlin.invariant_factors(A)
    nz = [d for d in S.D if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_dim=6))
def test_kernel_is_saturated_and_complete(rows):
    A = zlin.mat(rows)
    K = zlin.kernel_saturated(A)
    assert K.nrows() == len(rows) - rational_rank(rows)
    if K.nrows():
        assert (K * A).is_zero()
        assert set(zlin.invariant_factors(K)) == {1}


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_dim=6), st.data())
def test_solve_recovers_combinations(rows, data):
    A = zlin.mat(rows)
    y = data.draw(st.lists(entries, min_size=len(rows), max_size=len(rows)))
    B = zlin.mat([y]) * A
    X = zlin.solve(A, B)
    assert X is not None and X * A == B
    assert zlin.in_lattice(A, zlin.to_rows(B)[0])


def test_solve_rejects_non_integral():
    A = zlin.mat([[2, 0], [0, 3]])
    assert zlin.solve(A, zlin.mat([[1, 0]])) is None
    assert zlin.solve(A, zlin.mat([[4, 3]])) == zlin.mat([[2, 1]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: unimodular(n)))
def test_inverse_unimodular(U):
    V = zlin.inverse_unimodular(U)
    assert U * V == zlin.identity(U.nrows())
    assert bareiss_det(zlin.to_rows(U)) in (1, -1)


def test_inverse_unimodular_rejects_det_two():
    with pytest.raises(zlin.ZlinError):
        zlin.inverse_unimodular(zlin.mat([[2, 0], [0, 1]]))


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_dim=5))
def test_det_matches_bareiss(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    assert zlin.det(zlin.mat(sq)) == bareiss_det(sq)


def test_quotient_invariants():
    sup = zlin.identity(3)
    sub = zlin.mat([[2, 0, 0], [0, 6, 0]])
    assert zlin.quotient_invariants(sub, sup) == (2, 6, 0)
    with pytest.raises(zlin.ZlinError):
        zlin.quotient_invariants(zlin.mat([[1, 1]]), zlin.mat([[2, 0], [0, 2]]))


def test_lattice_equal_ignores_basis():
    A = zlin.mat([[1, 2], [0, 3]])
    B = zlin.mat([[1, 5], [1, 2], [0, 6]])
    assert zlin.lattice_equal(A, B)
    assert not zlin.lattice_equal(A, zlin.identity(2))


def test_empty_shapes():
    E = zlin.mat([], 3)
    assert zlin.rank(E) == 0
    assert zlin.row_basis(E).nrows() == 0
    assert zlin.kernel_saturated(zlin.zeros(2, 0)) == zlin.identity(2)
    assert zlin.det(zlin.mat([], 0)) == 1


@settings(max_examples=50, deadline=None)
@given(int_matrices(max_dim=5))
def test_text_round_trip(rows):
    A = zlin.mat(rows)
    assert zlin.parse_matrix(zlin.format_matrix(A)) == A
    buf = io.StringIO()
    zlin.write_matrix(A, buf)
    assert buf.getvalue() == zlin.format_matrix(A)


@pytest.mark.parametrize("text", ["2 2\n1 0\n", "2 2\n1 0\n0 x\n", "1\n1\n", "1 1\n1\n9 9\n"])
def test_parse_matrix_errors(text):
    with pytest.raises(zlin.ZlinError):
        zlin.parse_matrix(text)
