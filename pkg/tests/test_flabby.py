import pytest
from hypothesis import HealthCheck, given, settings

from torusrat import zlin
from torusrat.flabby import (Budget, BudgetExceeded, flabby_resolution, format_resolution,
                             is_invertible_class, iterate_resolution, parse_resolution,
                             splitting_test)
from torusrat.glattice import chevalley, dual, is_flabby
from torusrat.groups import named_group, subgroup_classes

from oracles import bar_h1, minor_gcd_factors, rational_rank
from strategies import SMALL_GROUPS, lattices


def is_permutation_matrix(A):
    rows = zlin.to_rows(A)
    return all(sorted(r) == [0] * (len(r) - 1) + [1] for r in rows) and \
        all(sum(col) == 1 for col in zip(*rows))


def check_exact(R):
    """0 -> M -> P -> F -> 0 exact, checked from ranks and determinantal divisors."""
    m, p, f = R.M.rank, R.P.rank, R.F.rank
    assert p == m + f
    incl, proj = zlin.to_rows(R.incl), zlin.to_rows(R.proj)
    if m and f:
        assert (R.incl * R.proj).is_zero()
    if m:
        # injective with saturated image
        assert rational_rank(incl) == m
        assert set(minor_gcd_factors(incl)) == {1}
    if f:
        # surjective: the Smith form of proj is the identity
        assert set(minor_gcd_factors(proj)) == {1}
    for a, b, c in zip(R.M.action, R.P.action, R.F.action):
        assert a * R.incl == R.incl * b
        assert b * R.proj == R.proj * c
        assert is_permutation_matrix(b)


@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(lattices(specs=SMALL_GROUPS, max_rank=5))
def test_resolution_exact_and_flabby(M):
    R = flabby_resolution(M)
    check_exact(R)
    assert R.verify()
    G = M.group
    if R.F.rank and G.order <= 8 and R.F.rank <= 8:
        D = dual(R.F)
        gens = [zlin.to_rows(A) for A in D.action]
        for c in subgroup_classes(G):
            assert bar_h1(G, c.rep.elements, gens) == ()
    else:
        assert is_flabby(R.F)


@pytest.mark.parametrize("spec", ["sym:3", "alt:4", "dih:5", "frob:5,4"])
@pytest.mark.parametrize("strategy", ["greedy", "shape", "minimize"])
def test_chevalley_resolutions(spec, strategy):
    G = named_group(spec)
    for c in subgroup_classes(G):
        if c.order == G.order:
            continue
        R = flabby_resolution(chevalley(G, c.rep), strategy=strategy)
        assert not R.problems()


@pytest.mark.parametrize("spec,label,expected", [
    ("cyc:6", "1", True),          # cyclic groups: every flabby class is invertible
    ("sym:3", "1", True),
    ("sym:3", "C2", True),
    ("alt:4", "1", False),         # non-cyclic Sylow 2-subgroup in the Galois case
    ("dih:4", "C2", False),        # nilpotent, H != 1
    ("frob:5,4", "C4", True),      # all Sylow subgroups cyclic
])
def test_invertibility(spec, label, expected):
    G = named_group(spec)
    c = next(c for c in subgroup_classes(G) if c.label == label and c.core_mask == 1)
    J = chevalley(G, c.rep)
    assert is_invertible_class(J).invertible is expected
    assert is_invertible_class(J, chevalley_of=(G, c.rep)).invertible is expected


def test_collapse_for_s3():
    G = named_group("sym:3")
    chain = iterate_resolution(chevalley(G, G.trivial))
    assert chain.collapsed and chain.ranks[0] <= 7


def test_splitting_test_on_permutation_flabby():
    # a permutation lattice is invertible
    G = named_group("sym:3")
    R = flabby_resolution(chevalley(G, G.trivial))
    from torusrat.glattice import perm_lattice
    assert splitting_test(perm_lattice(G, subgroup_classes(G)[1].rep))
    assert splitting_test(R.F)


def test_budget_guard():
    G = named_group("alt:5")
    with pytest.raises(BudgetExceeded):
        flabby_resolution(chevalley(G, G.trivial), budget=Budget(max_rank=10))
    res = is_invertible_class(chevalley(G, G.trivial), Budget(max_rank=5))
    assert res.invertible is None and res.note


def test_resolution_text_round_trip():
    G = named_group("sym:3")
    R = flabby_resolution(chevalley(G, G.trivial))
    R2 = parse_resolution(format_resolution(R, "sym:3"), G)
    assert R2.F.rank == R.F.rank and R2.incl == R.incl and R2.proj == R.proj
    assert R2.verify()
