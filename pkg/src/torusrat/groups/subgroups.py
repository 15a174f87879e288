"""Subgroups, conjugacy classes of subgroups, cores, Sylow subgroups, cosets.

Subgroups are bitmasks over the element indices of their ambient group.  The
class table is built by repeatedly joining known subgroups with cyclic ones;
every subgroup of a finite group is reached this way because it is the join
of the cyclic subgroups it contains.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .perm import FiniteGroup, Perm, mask_to_list, popcount


class Subgroup:
    """A subgroup of ``group`` stored as a bitmask of element indices."""

    __slots__ = ("group", "mask", "_gens", "_elements")

    def __init__(self, group: FiniteGroup, mask: int, gens: tuple[int, ...] | None = None):
        self.group = group
        self.mask = mask
        self._gens = gens
        self._elements = None

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and other.mask == self.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order})"

    @property
    def order(self) -> int:
        return popcount(self.mask)

    @property
    def elements(self) -> list[int]:
        if self._elements is None:
            self._elements = mask_to_list(self.mask)
        return self._elements

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    @property
    def generators(self) -> tuple[int, ...]:
        """A canonical small generating set: greedy over elements in index order."""
        if self._gens is None:
            self._gens = canonical_generators(self.group, self.mask)
        return self._gens

    def perms(self) -> list[Perm]:
        return [self.group.elements[i] for i in self.generators]

    def as_group(self, name: str | None = None) -> FiniteGroup:
        """This subgroup as a stand-alone permutation group on the same letters."""
        key = ("as_group", self.mask)
        G = self.group
        if key not in G._cache:
            H = FiniteGroup(G.degree, self.perms(), name=name)
            H._cache["parent"] = (G, self.mask)
            G._cache[key] = H
        return G._cache[key]

    def conjugate(self, t: int) -> "Subgroup":
        return Subgroup(self.group, self.group.conj_mask(self.mask, t))

    def is_normal_in(self, other: "Subgroup") -> bool:
        G = self.group
        return all(G.conj_mask(self.mask, t) == self.mask for t in other.generators)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, self.mask & other.mask)

    def is_abelian(self) -> bool:
        T = self.group.table
        g = self.generators
        return all(T[a, b] == T[b, a] for a in g for b in g)


def canonical_generators(G: FiniteGroup, mask: int) -> tuple[int, ...]:
    key = ("gens", mask)
    if key in G._cache:
        return G._cache[key]
    gens: list[int] = []
    cur = 1
    for x in mask_to_list(mask):
        if not (cur >> x) & 1:
            gens.append(x)
            cur = G.closure(gens, start=cur)
            if cur == mask:
                break
    G._cache[key] = tuple(gens)
    return tuple(gens)


# ---------------------------------------------------------------------------
# conjugacy classes of subgroups
# ---------------------------------------------------------------------------

@dataclass
class SubgroupClass:
    index: int           # 0-based position in canonical order
    rep: Subgroup
    size: int            # number of conjugates
    order: int
    conjugates: tuple[int, ...] = field(repr=False)  # masks
    _label: str | None = field(default=None, repr=False)

    @property
    def core_mask(self) -> int:
        m = -1
        for c in self.conjugates:
            m &= c
        return m

    @property
    def label(self) -> str:
        if self._label is None:
            from .structure import describe
            self._label = describe(self.rep)
        return self._label


class SubgroupClassTable:
    def __init__(self, group: FiniteGroup, classes: list[SubgroupClass], class_of_mask: dict[int, int]):
        self.group = group
        self.classes = classes
        self.class_of_mask = class_of_mask

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i) -> SubgroupClass:
        return self.classes[i]

    def class_of(self, H: Subgroup) -> int:
        return self.class_of_mask[H.mask]

    @cached_property
    def all_masks(self) -> list[int]:
        return sorted(self.class_of_mask, key=lambda m: (popcount(m), m))

    def subgroups_of(self, mask: int) -> list[int]:
        """Masks of all subgroups contained in the subgroup ``mask``."""
        return [m for m in self.all_masks if m & ~mask == 0]


def _cyclic_reps(G: FiniteGroup) -> list[int]:
    """One generator per cyclic subgroup, the smallest index generating it."""
    seen: dict[int, int] = {}
    for x in range(1, G.order):
        m = G.closure([x])
        if m not in seen:
            seen[m] = x
    return [seen[m] for m in sorted(seen, key=lambda m: (popcount(m), mask_to_list(m)))]


def _orbit(G: FiniteGroup, mask: int):
    """Conjugacy orbit of a subgroup mask; returns {mask: conjugating element}."""
    orbit = {mask: 0}
    frontier = [mask]
    while frontier:
        nxt = []
        for m in frontier:
            t0 = orbit[m]
            for s in G.gen_indices:
                c = G.conj_mask(m, s)
                if c not in orbit:
                    orbit[c] = G.mul(t0, s)
                    nxt.append(c)
        frontier = nxt
    return orbit


def subgroup_classes(G: FiniteGroup) -> SubgroupClassTable:
    """All conjugacy classes of subgroups in canonical order (cached on ``G``)."""
    if "subgroup_classes" in G._cache:
        return G._cache["subgroup_classes"]
    cyc = _cyclic_reps(G)
    cyc_mask = {x: G.closure([x]) for x in cyc}
    known: dict[int, int] = {}        # mask -> provisional class id
    reps: list[int] = []
    orbits: list[dict[int, int]] = []

    rep_gens: list[list[int]] = []

    def add(mask, gens):
        orb = _orbit(G, mask)
        cid = len(reps)
        for m in orb:
            known[m] = cid
        reps.append(mask)
        rep_gens.append(gens)
        orbits.append(orb)

    add(1, [])
    i = 0
    while i < len(reps):
        H = reps[i]
        # normalizer of H, to skip cyclic generators conjugate under N(H)
        NH = [t for t in range(G.order) if G.conj_mask(H, t) == H] if popcount(H) > 1 else None
        done_cyc: set[int] = set()
        for x in cyc:
            cm = cyc_mask[x]
            if cm & ~H == 0 or cm in done_cyc:
                continue
            if NH is not None:
                for t in NH:
                    done_cyc.add(G.conj_mask(cm, t))
            K = G.closure(rep_gens[i] + [x], start=H)
            if K not in known:
                add(K, rep_gens[i] + [x])
        i += 1

    # canonical representatives and ordering
    entries = []
    for cid, orb in enumerate(orbits):
        best = min(orb, key=mask_to_list)
        entries.append((popcount(best), mask_to_list(best), best, cid))
    entries.sort()
    classes = []
    new_id = {}
    for pos, (order, _, best, cid) in enumerate(entries):
        new_id[cid] = pos
        conj = tuple(sorted(orbits[cid], key=mask_to_list))
        classes.append(SubgroupClass(pos, Subgroup(G, best), len(orbits[cid]), order, conj))
    class_of_mask = {m: new_id[c] for m, c in known.items()}
    table = SubgroupClassTable(G, classes, class_of_mask)
    G._cache["subgroup_classes"] = table
    return table


def core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Intersection of all conjugates of ``H``."""
    m = H.mask
    for c in _orbit(G, H.mask):
        m &= c
    return Subgroup(G, m)


def h_candidates(G: FiniteGroup) -> list[SubgroupClass]:
    """Class representatives with trivial core, in canonical order."""
    return [c for c in subgroup_classes(G) if c.core_mask == 1]


def normal_closure(G: FiniteGroup, gens, within: Subgroup | None = None) -> int:
    """Smallest subgroup normalized by ``within`` (default ``G``) containing ``gens``."""
    conjugators = within.generators if within is not None else G.gen_indices
    gens = list(gens)
    m = G.closure(gens)
    while True:
        gens = list(canonical_generators(G, m))
        new = [G.conj(x, t) for x in gens for t in conjugators]
        m2 = G.closure(gens + new, start=m)
        if m2 == m:
            return m
        m = m2


def derived_subgroup(H: Subgroup) -> Subgroup:
    G = H.group
    T = G.table
    inv = G.inverses
    gens = H.generators
    comms = []
    for a in gens:
        for b in gens:
            c = int(T[T[inv[a], inv[b]], T[a, b]])
            if c:
                comms.append(c)
    return Subgroup(G, normal_closure(G, comms, within=H) if comms else 1)


def center(H: Subgroup) -> Subgroup:
    G = H.group
    T = G.table
    gens = H.generators
    return Subgroup(G, sum(1 << x for x in H.elements if all(T[x, g] == T[g, x] for g in gens)))


def normalizer(H: Subgroup, within: Subgroup | None = None) -> Subgroup:
    G = H.group
    cand = within.elements if within is not None else range(G.order)
    return Subgroup(G, sum(1 << t for t in cand if G.conj_mask(H.mask, t) == H.mask))


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow(G: FiniteGroup, p: int, within: Subgroup | None = None) -> Subgroup:
    """A Sylow ``p``-subgroup, grown inside successive normalizers."""
    W = within if within is not None else G.whole
    target = p_part(W.order, p)
    orders = G.element_orders
    P = 1
    while popcount(P) < target:
        for t in W.elements:
            if (P >> t) & 1 or p_part(orders[t], p) != orders[t]:
                continue
            if G.conj_mask(P, t) == P:
                P = G.closure(list(canonical_generators(G, P)) + [t], start=P)
                break
        else:  # pragma: no cover - excluded by Sylow theory
            raise AssertionError("sylow growth stalled")
    return Subgroup(G, P)


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------

@dataclass
class CosetTable:
    """Right cosets ``Hx`` ordered by their smallest element."""

    base: Subgroup
    reps: tuple[int, ...]          # smallest element of each coset
    coset_of: tuple[int, ...]      # element index -> coset index
    gen_perms: tuple[tuple[int, ...], ...]  # action of each group generator

    def __len__(self):
        return len(self.reps)

    def action(self, x: int) -> tuple[int, ...]:
        """Permutation of coset indices induced by right multiplication by ``x``."""
        G = self.base.group
        T = G.table
        return tuple(self.coset_of[int(T[r, x])] for r in self.reps)


def coset_action(G: FiniteGroup, H: Subgroup) -> CosetTable:
    key = ("cosets", H.mask)
    if key in G._cache:
        return G._cache[key]
    T = G.table
    coset_of = [-1] * G.order
    reps = []
    helems = H.elements
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for h in helems:
            coset_of[int(T[h, x])] = c
    gen_perms = tuple(tuple(coset_of[int(T[r, s])] for r in reps) for s in G.gen_indices)
    ct = CosetTable(H, tuple(reps), tuple(coset_of), gen_perms)
    G._cache[key] = ct
    return ct


def is_p_group(n: int) -> bool:
    return len(prime_factors(n)) <= 1


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
