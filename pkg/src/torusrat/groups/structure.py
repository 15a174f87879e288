"""Structure labels in the style of GAP's ``StructureDescription``, plus the
group-theoretic predicates behind the cyclic-Sylow shortcuts.

Labels are computed from the ambient group's full subgroup lattice, so they
cost little once ``subgroup_classes`` has run.  Recognition order: abelian
invariants, a short list of named groups, direct products, split extensions
``N : Q`` (largest normal ``N`` with a complement, abelian ``N`` preferred),
and finally non-split extensions ``N . Q``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .perm import FiniteGroup, mask_to_list, popcount
from .subgroups import (Subgroup, center, coset_action, derived_subgroup, p_part,
                        prime_factors, subgroup_classes, sylow)

# whole groups whose label is their name rather than a decomposition
_KEEP_NAME = ("GL(2,4)", "GL(2,5)")


def _orders(H: Subgroup) -> list[int]:
    eo = H.group.element_orders
    return [eo[x] for x in H.elements]


def abelian_invariants(H: Subgroup) -> list[int]:
    """Invariant factors (descending) of an abelian subgroup."""
    orders = _orders(H)
    n = H.order
    per_prime: dict[int, list[int]] = {}
    for p in prime_factors(n):
        # s_k = log_p #{x : x^(p^k) = 1}; s_k - s_(k-1) counts parts >= k
        s = [0]
        k = 1
        while s[-1] < _vp(n, p):
            cnt = sum(1 for o in orders if (p ** k) % o == 0)
            s.append(_vp(cnt, p))
            k += 1
        ge = [s[i] - s[i - 1] for i in range(1, len(s))]
        parts = []
        for i, c in enumerate(ge):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            parts += [p ** (i + 1)] * (c - nxt)
        per_prime[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    out = []
    for i in range(width):
        f = 1
        for v in per_prime.values():
            if i < len(v):
                f *= v[i]
        out.append(f)
    return out


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _wrap(label: str) -> str:
    return f"({label})" if any(op in label for op in (" x ", " : ", " . ")) else label


def _subgroups_inside(H: Subgroup) -> list[int]:
    return subgroup_classes(H.group).subgroups_of(H.mask)


def _normal_inside(H: Subgroup) -> list[int]:
    G = H.group
    gens = H.generators
    return [m for m in _subgroups_inside(H) if all(G.conj_mask(m, t) == m for t in gens)]


def _is_cyclic(H: Subgroup) -> bool:
    return H.order in _orders(H)


def _label_named(H: Subgroup) -> str | None:
    n = H.order
    orders = _orders(H)
    inv = orders.count(2)
    cyc_half = (n // 2) in orders
    if n >= 6 and n % 2 == 0 and cyc_half:
        # a cyclic subgroup of index 2 with every outside element an involution
        G = H.group
        a = next(x for x in H.elements if G.element_orders[x] == n // 2)
        A = G.closure([a])
        outside = [x for x in H.elements if not (A >> x) & 1]
        if all(G.element_orders[x] == 2 for x in outside):
            return "S3" if n == 6 else f"D{n}"
        if n >= 8 and n & (n - 1) == 0:
            if inv == 1:
                return f"Q{n}"
            if n >= 16 and inv == n // 4 + 1:
                return f"QD{n}"
    if n == 12 and set(orders) <= {1, 2, 3}:
        return "A4"
    if n not in (24, 48, 60, 120, 168, 336, 360, 504, 720):
        return None
    D = derived_subgroup(H)
    Z = center(H)
    if n == 24:
        if Z.order == 1 and D.order == 12:
            return "S4"
        if D.order == 8 and not D.is_abelian() and inv == 1:
            return "SL(2,3)"
    if n == 48 and D.order == 24 and describe(D) == "SL(2,3)":
        return "C2 . S4 = SL(2,3) . C2" if inv == 1 else "GL(2,3)"
    if D.order == n:
        return {60: "A5", 120: "SL(2,5)", 168: "PSL(3,2)", 336: "SL(2,7)", 360: "A6",
                504: "PSL(2,8)"}.get(n)
    if Z.order == 1 and D.order * 2 == n and derived_subgroup(D).order == D.order:
        if n == 120:
            return "S5"
        if n == 720 and 6 in orders:
            return "S6"
    return None


def _direct_factors(H: Subgroup) -> list[Subgroup] | None:
    """Split ``H`` as A x B with A of least possible order; recurse on B."""
    G = H.group
    n = H.order
    normals = sorted(_normal_inside(H), key=lambda m: (popcount(m), mask_to_list(m)))
    for a in normals:
        oa = popcount(a)
        if oa == 1 or oa == n:
            continue
        for b in normals:
            if popcount(b) * oa == n and a & b == 1:
                B = Subgroup(G, b)
                rest = _direct_factors(B)
                return [Subgroup(G, a)] + (rest if rest else [B])
    return None


def _label_direct(H: Subgroup) -> str | None:
    factors = _direct_factors(H)
    if not factors:
        return None
    G = H.group
    ab = [F for F in factors if F.is_abelian()]
    nonab = [F for F in factors if not F.is_abelian()]
    parts = []
    if ab:
        gens = [g for F in ab for g in F.generators]
        A = Subgroup(G, G.closure(gens))
        parts.append(describe(A))
    parts += sorted((describe(F) for F in nonab), key=lambda s: (len(s), s))
    return " x ".join(_wrap(p) for p in parts)


def _label_split(H: Subgroup) -> str | None:
    n = H.order
    subs = _subgroups_inside(H)
    best = None
    for N in _normal_inside(H):
        oN = popcount(N)
        if oN == 1 or oN == n:
            continue
        if best is not None and oN < best[0]:
            continue
        Q = next((q for q in subs if popcount(q) * oN == n and q & N == 1), None)
        if Q is None:
            continue
        G = H.group
        lab = f"{_wrap(describe(Subgroup(G, N)))} : {_wrap(describe(Subgroup(G, Q)))}"
        key = (oN, Subgroup(G, N).is_abelian(), -len(lab), [-ord(c) for c in lab])
        if best is None or key > best[1]:
            best = (oN, key, lab)
    return best[2] if best else None


def quotient_group(H: Subgroup, N: Subgroup) -> FiniteGroup:
    """``H/N`` as a regular permutation group on the cosets of ``N`` in ``H``."""
    K = H.as_group()
    Nk = K.subgroup([K.index[H.group.elements[x]] for x in N.generators])
    ct = coset_action(K, Nk)
    return FiniteGroup(len(ct), list(ct.gen_perms))


def _label_nonsplit(H: Subgroup) -> str:
    Z = center(H)
    N = Z if 1 < Z.order < H.order else derived_subgroup(H)
    if N.order in (1, H.order):
        return f"<order {H.order}>"
    Q = quotient_group(H, N)
    return f"{_wrap(describe(N))} . {_wrap(describe(Q.whole))}"


def describe(H: Subgroup) -> str:
    """Structure label of the subgroup ``H`` (cached on its group)."""
    G = H.group
    key = ("label", H.mask)
    if key in G._cache:
        return G._cache[key]
    n = H.order
    if n == 1:
        lab = "1"
    elif n == G.order and G.name in _KEEP_NAME:
        lab = G.name
    elif H.is_abelian():
        lab = " x ".join(f"C{d}" for d in abelian_invariants(H))
    else:
        lab = _label_named(H) or _label_direct(H) or _label_split(H) or _label_nonsplit(H)
    G._cache[key] = lab
    return lab


def describe_group(G: FiniteGroup) -> str:
    return describe(G.whole)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructurePredicates:
    is_nilpotent: bool
    all_sylow_cyclic: bool
    em_galois_stable: bool
    em_nongalois_stable: bool


def is_nilpotent(G: FiniteGroup) -> bool:
    """All Sylow subgroups normal."""
    for p in prime_factors(G.order):
        P = sylow(G, p)
        if not P.is_normal_in(G.whole):
            return False
    return True


def all_sylow_cyclic(G: FiniteGroup) -> bool:
    eo = set(G.element_orders)
    return all(p_part(G.order, p) in eo for p in prime_factors(G.order))


def galois_stable_shape(G: FiniteGroup) -> bool:
    """``G = <s, t | s^m = t^(2^d) = 1, t s t^-1 = s^r>`` with ``m`` odd, ``r^2 = 1 mod m``."""
    n = G.order
    two = p_part(n, 2)
    m = n // two
    eo = G.element_orders
    odd = [x for x in range(n) if eo[x] % 2 == 1]
    if len(odd) != m:
        return False
    s = next((x for x in odd if eo[x] == m), None)
    if s is None:
        return False  # odd-order elements do not form a cyclic subgroup
    S = G.closure([s])
    if not Subgroup(G, S).is_normal_in(G.whole):
        return False
    t = next((x for x in range(n) if eo[x] == two), None)
    if t is None:
        return False
    # t s t^-1 = s^r
    T = G.table
    y = int(T[T[t, s], G.inverses[t]])
    r, x = 1, s
    while x != y:
        x = int(T[x, s])
        r += 1
    return (r * r - 1) % m == 0


def nongalois_stable_shape(G: FiniteGroup, H: Subgroup) -> bool:
    """``H = C2`` and ``G = C_r : H`` with ``r >= 3`` odd and a nontrivial action."""
    if H.order != 2:
        return False
    n = G.order
    r = n // 2
    if r < 3 or r % 2 == 0:
        return False
    eo = G.element_orders
    c = next((x for x in range(n) if eo[x] == r), None)
    if c is None:
        return False
    C = Subgroup(G, G.closure([c]))
    if not C.is_normal_in(G.whole):
        return False
    return not G.whole.is_abelian()


def structure_predicates(G: FiniteGroup, H: Subgroup) -> StructurePredicates:
    return StructurePredicates(
        is_nilpotent=is_nilpotent(G),
        all_sylow_cyclic=all_sylow_cyclic(G),
        em_galois_stable=galois_stable_shape(G),
        em_nongalois_stable=nongalois_stable_shape(G, H),
    )
