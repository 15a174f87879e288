"""Flabby resolutions and the invertibility test for flabby classes.

A coflabby base of a lattice ``D`` is a list of vectors ``v_i`` with
subgroups ``K_i`` fixing them, such that the induced map
``P = sum Z[G/K_i] -> D`` (coset ``K_i x`` to ``v_i rho(x)``) is onto on
``H``-fixed points for every subgroup ``H``.  Its kernel is then coflabby.
Applied to ``D = M`` dual and dualized, this gives ``0 -> M -> P -> F -> 0``
with ``F`` flabby.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Sequence

import flint

from . import zlin
from .glattice import (GLattice, Summand, chevalley_restricted, direct_sum, dual,
                       fixed_sublattice, hom_basis, is_flabby, is_trivial_action,
                       perm_lattice, restrict)
from .groups import FiniteGroup, ResourceError, Subgroup, coset_action, subgroup_classes
from .groups.subgroups import prime_factors, sylow


class BudgetExceeded(ResourceError):
    pass


class BaseError(ValueError):
    pass


@dataclass
class Budget:
    """Wall-clock and rank guards; ``None`` disables a guard."""

    seconds: float | None = None
    max_rank: int | None = None
    _start: float = field(default_factory=time.monotonic, repr=False)

    def check(self, rank: int = 0, what: str = "") -> None:
        if self.max_rank is not None and rank > self.max_rank:
            raise BudgetExceeded(f"rank {rank} exceeds budget {self.max_rank} ({what})")
        if self.seconds is not None and time.monotonic() - self._start > self.seconds:
            raise BudgetExceeded(f"time budget {self.seconds}s exhausted ({what})")


UNLIMITED = Budget()


# ---------------------------------------------------------------------------
# coflabby bases
# ---------------------------------------------------------------------------

@dataclass
class CoflabbyBase:
    vectors: list[list[int]]
    classes: list[int]          # stabilizer class index (canonical order) per vector

    @property
    def size(self) -> int:
        return len(self.vectors)

    def perm_rank(self, G: FiniteGroup) -> int:
        tab = subgroup_classes(G)
        return sum(G.order // tab[c].order for c in self.classes)


class _BaseContext:
    """Caches for checking bases of one lattice ``D``."""

    def __init__(self, D: GLattice):
        self.D = D
        self.G = D.group
        self.tab = subgroup_classes(self.G)
        self._fixed: dict[int, flint.fmpz_mat] = {}
        self._orbits: dict[tuple[int, int], list[list[int]]] = {}

    def fixed(self, c: int) -> flint.fmpz_mat:
        if c not in self._fixed:
            self._fixed[c] = zlin.hnf_only(fixed_sublattice(self.D, self.tab[c].rep)) \
                if self.D.rank else flint.fmpz_mat(0, 0)
        return self._fixed[c]

    def orbit_rows(self, v: Sequence[int], c: int) -> list[list[int]]:
        """``v rho(x)`` for the coset representatives ``x`` of the class-``c`` rep."""
        ct = coset_action(self.G, self.tab[c].rep)
        vm = flint.fmpz_mat([list(v)])
        return [zlin.to_rows(vm * self.D.matrix(x))[0] for x in ct.reps]

    def double_orbits(self, k: int, l: int) -> list[list[int]]:
        """Orbits of the class-``l`` rep on the cosets of the class-``k`` rep."""
        key = (k, l)
        if key not in self._orbits:
            ct = coset_action(self.G, self.tab[k].rep)
            perms = [ct.action(x) for x in self.tab[l].rep.generators]
            n = len(ct)
            seen = [False] * n
            out = []
            for y in range(n):
                if seen[y]:
                    continue
                orb = [y]
                seen[y] = True
                i = 0
                while i < len(orb):
                    for p in perms:
                        z = p[orb[i]]
                        if not seen[z]:
                            seen[z] = True
                            orb.append(z)
                    i += 1
                out.append(orb)
            self._orbits[key] = out
        return self._orbits[key]

    def image_rows(self, entries, l: int) -> list[list[int]]:
        """Images of the ``H_l``-fixed points of the induced permutation lattice."""
        r = self.D.rank
        rows = []
        for rows_k, k in entries:
            for orb in self.double_orbits(k, l):
                acc = [0] * r
                for y in orb:
                    w = rows_k[y]
                    for j in range(r):
                        acc[j] += w[j]
                rows.append(acc)
        return rows

    def surjective_at(self, entries, l: int) -> bool:
        fixed = self.fixed(l)
        if fixed.nrows() == 0:
            return True
        rows = self.image_rows(entries, l)
        if not rows:
            return False
        return zlin.lattice_equal(zlin.mat(rows, self.D.rank), fixed)


def _stabilizer_rep(ctx: _BaseContext, v: list[int], c: int) -> tuple[list[int], int]:
    """Move ``v`` (fixed by class rep ``c``) to a conjugate fixed by the rep of its full stabilizer."""
    G, D = ctx.G, ctx.D
    vm = flint.fmpz_mat([v])
    stab = 0
    for x in range(G.order):
        if vm * D.matrix(x) == vm:
            stab |= 1 << x
    k = ctx.tab.class_of_mask[stab]
    if k == c:
        return v, c
    # find t with t^-1 K t = K0, then v rho(t^-1) is fixed by K0
    K0 = ctx.tab[k].rep.mask
    for t in range(G.order):
        if G.conj_mask(stab, t) == K0:
            w = zlin.to_rows(vm * D.matrix(G.inv(t)))[0]
            return w, k
    raise AssertionError("conjugator not found")  # pragma: no cover


def search_base(D: GLattice, budget: Budget = UNLIMITED, prune: bool = True,
                full_stabilizers: bool = True) -> CoflabbyBase:
    """Greedy coflabby base for ``D``.

    Classes are scanned from largest to smallest order; at each class the
    basis rows of ``D^H`` not yet reached are added.  A pruning pass then
    drops vectors with the largest orbits first whenever the base stays valid.
    """
    ctx = _BaseContext(D)
    order = sorted(range(len(ctx.tab)), key=lambda c: (-ctx.tab[c].order, -c))
    vecs: list[list[int]] = []
    cls: list[int] = []
    entries: list[tuple[list[list[int]], int]] = []
    for l in order:
        budget.check(what="coflabby base search")
        fixed = ctx.fixed(l)
        if fixed.nrows() == 0:
            continue
        rows = ctx.image_rows(entries, l)
        for cand in zlin.to_rows(fixed):
            if rows and zlin.lattice_equal(zlin.mat(rows, D.rank), fixed):
                break
            if rows and zlin.in_lattice(zlin.mat(rows, D.rank), cand):
                continue
            v, k = (_stabilizer_rep(ctx, cand, l) if full_stabilizers else (cand, l))
            orb = ctx.orbit_rows(v, k)
            vecs.append(v)
            cls.append(k)
            entries.append((orb, k))
            rows = ctx.image_rows(entries, l)
    if prune:
        idx = sorted(range(len(vecs)), key=lambda i: (ctx.tab[cls[i]].order, -i))
        alive = set(range(len(vecs)))
        for i in idx:
            budget.check(what="coflabby base pruning")
            trial = [entries[j] for j in sorted(alive - {i})]
            if all(ctx.surjective_at(trial, l) for l in range(len(ctx.tab))):
                alive.discard(i)
        keep = sorted(alive)
        vecs = [vecs[i] for i in keep]
        cls = [cls[i] for i in keep]
    return CoflabbyBase(vecs, cls)


def _candidates(ctx: _BaseContext, window_rank: int = 3) -> list[tuple[list[int], int]]:
    """Short vectors of each ``D^K``, moved to the rep of their full stabilizer."""
    seen = set()
    out = []
    for c in range(len(ctx.tab)):
        B = zlin.to_rows(ctx.fixed(c))
        k = len(B)
        if k == 0:
            continue
        combos = []
        if k <= window_rank:
            for coeffs in _sign_reps(k):
                combos.append(coeffs)
        else:
            for i in range(k):
                combos.append([1 if j == i else 0 for j in range(k)])
        for co in combos:
            v = [sum(co[i] * B[i][j] for i in range(k)) for j in range(ctx.D.rank)]
            if zlin.gcd_list(v) != 1:
                continue
            w, kk = _stabilizer_rep(ctx, v, c)
            key = (kk, tuple(w))
            if key not in seen:
                seen.add(key)
                out.append((w, kk))
    return out


def _sign_reps(k: int) -> list[list[int]]:
    """Nonzero vectors in {-1,0,1}^k whose first nonzero entry is 1."""
    out = []
    for co in itertools.product((0, 1, -1), repeat=k):
        nz = next((x for x in co if x), 0)
        if nz == 1:
            out.append(list(co))
    return out


def minimize_base(D: GLattice, base: CoflabbyBase, max_checks: int = 3000,
                  budget: Budget = UNLIMITED) -> CoflabbyBase:
    """Depth-first search for a valid base of smaller permutation rank.

    Candidates are short vectors of the fixed sublattices.  Stops after
    ``max_checks`` validity tests and returns the best base found.
    """
    ctx = _BaseContext(D)
    G = D.group
    best_rank = base.perm_rank(G)
    best = base
    cands = _candidates(ctx)
    size = [G.order // ctx.tab[k].order for _, k in cands]
    order = sorted(range(len(cands)), key=lambda i: (size[i], i))
    cands = [cands[i] for i in order]
    size = [size[i] for i in order]
    orbit_cache: dict[int, list[list[int]]] = {}
    checks = 0
    classes_by_rank = sorted(range(len(ctx.tab)), key=lambda l: -ctx.fixed(l).nrows())

    def entry(i):
        if i not in orbit_cache:
            v, k = cands[i]
            orbit_cache[i] = ctx.orbit_rows(v, k)
        return (orbit_cache[i], cands[i][1])

    def valid(sel):
        entries = [entry(i) for i in sel]
        return all(ctx.surjective_at(entries, l) for l in classes_by_rank)

    stack = [([], 0, 0)]
    while stack:
        sel, start, rank = stack.pop()
        for i in range(len(cands) - 1, start - 1, -1):
            r = rank + size[i]
            if r >= best_rank:
                continue
            nsel = sel + [i]
            checks += 1
            if checks > max_checks:
                return best
            budget.check(what="base minimization")
            if valid(nsel):
                best_rank = r
                best = CoflabbyBase([cands[j][0] for j in nsel], [cands[j][1] for j in nsel])
            else:
                stack.append((nsel, i + 1, r))
    return best


def _shapes(ctx: _BaseContext, upper: int, max_size: int):
    """Multisets of classes with ``D.rank <= perm rank < upper``, smallest first.

    A shape is kept only if, for every subgroup ``L``, the number of
    ``L``-orbits on the induced cosets is at least ``rank D^L``.
    """
    G = ctx.G
    usable = [c for c in range(len(ctx.tab)) if ctx.fixed(c).nrows()]
    size = {c: G.order // ctx.tab[c].order for c in usable}
    need = [(l, ctx.fixed(l).nrows()) for l in range(len(ctx.tab))]
    out = []
    for n in range(1, max_size + 1):
        for shape in itertools.combinations_with_replacement(usable, n):
            r = sum(size[c] for c in shape)
            if r < ctx.D.rank or r >= upper:
                continue
            if all(sum(len(ctx.double_orbits(k, l)) for k in shape) >= m for l, m in need):
                out.append((r, shape))
    out.sort()
    return out


def shape_search(D: GLattice, upper: int, trials: int = 12, max_size: int = 3, seed: int = 0,
                 budget: Budget = UNLIMITED) -> CoflabbyBase | None:
    """Random coflabby bases of small permutation rank.

    For each feasible stabilizer shape (in order of permutation rank below
    ``upper``) draw ``trials`` bases with vectors that are random
    ``{-1, 0, 1}`` combinations of a basis of ``D^K``.  Returns the first
    valid base, or ``None``.
    """
    rng = random.Random(seed)
    ctx = _BaseContext(D)
    classes = sorted(range(len(ctx.tab)), key=lambda l: -ctx.fixed(l).nrows())
    for _, shape in _shapes(ctx, upper, max_size):
        bases = [zlin.to_rows(ctx.fixed(k)) for k in shape]
        for _ in range(trials):
            budget.check(what="base shape search")
            vecs = []
            for B in bases:
                co = [rng.randint(-1, 1) for _ in B]
                vecs.append([sum(co[i] * B[i][j] for i in range(len(B))) for j in range(D.rank)])
            if any(not any(v) for v in vecs):
                continue
            entries = [(ctx.orbit_rows(v, k), k) for v, k in zip(vecs, shape)]
            if all(ctx.surjective_at(entries, l) for l in classes):
                return CoflabbyBase(vecs, list(shape))
    return None


def good_base(D: GLattice, budget: Budget = UNLIMITED, shape_trials: int = 12) -> CoflabbyBase:
    """Greedy base, replaced by a random base of smaller shape when one turns up."""
    base = search_base(D, budget)
    if shape_trials <= 0:
        return base
    try:
        better = shape_search(D, base.perm_rank(D.group), trials=shape_trials, budget=budget)
    except BudgetExceeded:
        better = None
    return better if better is not None else base


BASE_STRATEGIES = ("greedy", "shape", "minimize")


def choose_base(D: GLattice, strategy: str = "shape", budget: Budget = UNLIMITED) -> CoflabbyBase:
    """Coflabby base of ``D`` by ``greedy`` search, ``shape`` search or DFS ``minimize``."""
    if strategy == "greedy":
        return search_base(D, budget)
    if strategy == "shape":
        return good_base(D, budget)
    if strategy == "minimize":
        return minimize_base(D, search_base(D, budget), budget=budget)
    raise ValueError(f"unknown base strategy {strategy!r}; expected one of {BASE_STRATEGIES}")


def coflabby_base(M: GLattice, budget: Budget = UNLIMITED, **kw) -> CoflabbyBase:
    """A base on the dual of ``M``, as used by ``flabby_resolution(M)``."""
    return search_base(dual(M), budget, **kw)


def check_base(D: GLattice, base: CoflabbyBase) -> bool:
    ctx = _BaseContext(D)
    entries = []
    for v, c in zip(base.vectors, base.classes):
        vm = flint.fmpz_mat([v])
        for h in ctx.tab[c].rep.generators:
            if vm * D.matrix(h) != vm:
                return False
        entries.append((ctx.orbit_rows(v, c), c))
    return all(ctx.surjective_at(entries, l) for l in range(len(ctx.tab)))


def orbit_matrix(D: GLattice, base: CoflabbyBase) -> tuple[flint.fmpz_mat, GLattice]:
    """Rows ``v_i rho(x)`` over all cosets, and the permutation lattice they index."""
    ctx = _BaseContext(D)
    rows = []
    for v, c in zip(base.vectors, base.classes):
        rows += ctx.orbit_rows(v, c)
    tab = ctx.tab
    if base.vectors:
        P = direct_sum([perm_lattice(D.group, tab[c].rep) for c in base.classes])
    else:
        P = GLattice(D.group, [flint.fmpz_mat(0, 0)] * len(D.group.generators), rank=0, summands=[])
    return zlin.mat(rows, D.rank), P


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------

@dataclass
class Resolution:
    """``0 -> M -> P -> F -> 0``; ``incl`` is rank(M) x rank(P), ``proj`` rank(P) x rank(F)."""

    M: GLattice
    P: GLattice
    F: GLattice
    incl: flint.fmpz_mat
    proj: flint.fmpz_mat
    base: CoflabbyBase

    @property
    def perm_classes(self) -> list[int]:
        return list(self.base.classes)

    def verify(self, check_flabby: bool = True) -> bool:
        return not self.problems(check_flabby)

    def problems(self, check_flabby: bool = True) -> list[str]:
        M, P, F = self.M, self.P, self.F
        out = []
        if P.rank != M.rank + F.rank:
            out.append("rank(P) != rank(M) + rank(F)")
        for a, b, c in zip(M.action, P.action, F.action):
            if a * self.incl != self.incl * b:
                out.append("incl not equivariant")
                break
            if b * self.proj != self.proj * c:
                out.append("proj not equivariant")
                break
        if M.rank and F.rank and not (self.incl * self.proj).is_zero():
            out.append("incl * proj != 0")
        if M.rank and zlin.rank(self.incl) != M.rank:
            out.append("incl not injective")
        if F.rank:
            if zlin.invariant_factors(self.proj) != tuple([1] * F.rank):
                out.append("proj not surjective")
            ker = zlin.kernel_saturated(self.proj)
            if M.rank and not zlin.lattice_equal(ker, self.incl):
                out.append("image(incl) != kernel(proj)")
        if check_flabby and F.rank and not is_flabby(F):
            out.append("F not flabby")
        return out


def flabby_resolution(M: GLattice, base: CoflabbyBase | None = None,
                      budget: Budget = UNLIMITED, strategy: str = "shape") -> Resolution:
    D = dual(M)
    if base is None:
        base = choose_base(D, strategy, budget)
    elif not check_base(D, base):
        raise BaseError("base is not a coflabby base of the dual lattice")
    Pi, P = orbit_matrix(D, base)
    budget.check(P.rank, "flabby resolution")
    if P.rank == 0:
        F = GLattice(M.group, [flint.fmpz_mat(0, 0)] * len(M.action), rank=0, name="F")
        return Resolution(M, P, F, flint.fmpz_mat(M.rank, 0), flint.fmpz_mat(0, 0), base)
    C = zlin.kernel_saturated(Pi)  # C Pi = 0
    acts = []
    for A in P.action:
        if C.nrows() == 0:
            acts.append(flint.fmpz_mat(0, 0))
            continue
        X = zlin.solve(C, C * A)
        if X is None:  # pragma: no cover - kernel of an equivariant map is stable
            raise AssertionError("kernel not invariant")
        acts.append(X)
    F_act = [zlin.inverse_unimodular(X).transpose() if X.nrows() else X for X in acts]
    F = GLattice(M.group, F_act, rank=C.nrows(), name="F")
    incl = Pi.transpose()
    proj = C.transpose() if C.nrows() else flint.fmpz_mat(P.rank, 0)
    return Resolution(M, P, F, incl, proj, base)


@dataclass
class IterationResult:
    ranks: list[int]
    collapsed: bool          # reached rank <= 1 with trivial action
    indeterminate: bool = False
    note: str = ""
    strategy: str = ""


def _collapsed(F: GLattice) -> bool:
    return F.rank == 0 or (F.rank == 1 and is_trivial_action(F))


def iterate_resolution(M: GLattice, depth: int = 4, budget: Budget = UNLIMITED,
                       strategies: Sequence[str] = BASE_STRATEGIES) -> IterationResult:
    """Ranks of ``[M]^fl``, ``[[M]^fl]^fl``, ... until a trivial rank <= 1 lattice appears.

    Each base strategy is tried in turn; the first chain that collapses wins.
    Otherwise the last chain is reported.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    last = IterationResult([], False)
    for strategy in strategies:
        ranks: list[int] = []
        cur = M
        try:
            for _ in range(depth):
                F = flabby_resolution(cur, budget=budget, strategy=strategy).F
                ranks.append(F.rank)
                if _collapsed(F):
                    return IterationResult(ranks, True, strategy=strategy)
                cur = F
        except BudgetExceeded as exc:
            return IterationResult(ranks, False, True, str(exc), strategy)
        last = IterationResult(ranks, False, strategy=strategy)
    return last


# ---------------------------------------------------------------------------
# invertibility
# ---------------------------------------------------------------------------

def splitting_test(F: GLattice, budget: Budget = UNLIMITED) -> bool:
    """Is the flabby lattice ``F`` invertible?

    Take a coflabby base of ``F``: ``Q -> F`` is onto with coflabby kernel.
    ``F`` is invertible exactly when this map splits, i.e. some
    ``s in Hom_G(F, Q)`` has ``s * Pi = id``.  Both sides are equivariant, so
    the identity is only imposed on the base vectors, which generate ``F``.
    """
    if F.rank == 0:
        return True
    base = search_base(F, budget)
    Pi, Q = orbit_matrix(F, base)
    budget.check(Q.rank, "splitting test")
    gens = zlin.mat(base.vectors, F.rank)
    cols = []
    for X in hom_basis(F, Q):
        budget.check(Q.rank, "splitting test")
        cols.append(zlin.to_rows(gens * X * Pi))
    if not cols:
        return False
    A = zlin.mat([[x for row in Y for x in row] for Y in cols])
    b = zlin.mat([[x for row in base.vectors for x in row]])
    return zlin.solve(A, b) is not None


@dataclass
class InvertibilityResult:
    invertible: bool | None           # None: budget exhausted
    witness: tuple[int, int] | None = None   # (prime, 0) for a failing Sylow, (0, 0) for the full group
    sylow: dict[int, bool] = field(default_factory=dict)
    flabby_rank: int | None = None
    note: str = ""


def invertible_over(M: GLattice, budget: Budget = UNLIMITED) -> bool:
    """Is ``[M]^fl`` invertible over the acting group of ``M``?"""
    F = flabby_resolution(M, budget=budget, strategy="greedy").F
    return splitting_test(F, budget)


def _sylow_lattice(M: GLattice, P: Subgroup, chevalley_of=None) -> GLattice:
    if chevalley_of is not None:
        G, H = chevalley_of
        return chevalley_restricted(G, H, P).lattice
    return restrict(M, P)


def sylow_invertible(M: GLattice, p: int, budget: Budget = UNLIMITED, chevalley_of=None) -> bool:
    """Is the flabby class of ``M`` restricted to a ``p``-Sylow subgroup invertible?"""
    L = _sylow_lattice(M, sylow(M.group, p), chevalley_of)
    return L.rank == 0 or invertible_over(L, budget)


def is_invertible_class(M: GLattice, budget: Budget = UNLIMITED, sylow_only: bool = False,
                        chevalley_of=None, full_rank_limit: int | None = None) -> InvertibilityResult:
    """Sylow restrictions first, then the splitting test over the whole group.

    ``chevalley_of=(G, H)`` marks ``M`` as ``J_{G/H}`` so Sylow restrictions
    can drop permutation summands first.  ``sylow_only`` stops after the
    Sylow stage and reports ``None`` when every restriction is invertible.
    """
    G = M.group
    res = InvertibilityResult(None)
    try:
        for p in prime_factors(G.order):
            P = sylow(G, p)
            if P.order == G.order:
                continue
            L = _sylow_lattice(M, P, chevalley_of)
            ok = L.rank == 0 or invertible_over(L, budget)
            res.sylow[p] = ok
            if not ok:
                res.invertible = False
                res.witness = (p, 0)
                return res
        if sylow_only and len(prime_factors(G.order)) > 1:
            res.note = "all Sylow restrictions invertible"
            return res
        R = flabby_resolution(M, budget=budget, strategy="greedy")
        res.flabby_rank = R.F.rank
        if full_rank_limit is not None and R.F.rank > full_rank_limit:
            raise BudgetExceeded(f"flabby rank {R.F.rank} above full-test limit {full_rank_limit}")
        res.invertible = splitting_test(R.F, budget)
        if not res.invertible:
            res.witness = (0, 0)
    except BudgetExceeded as exc:
        res.invertible = None
        res.note = str(exc)
    return res


# ---------------------------------------------------------------------------
# resolution files
# ---------------------------------------------------------------------------

def format_resolution(R: Resolution, group_ref: str) -> str:
    """Text dump: group, M, the classes of the permutation summands, F, incl, proj."""
    from .glattice import format_lattice
    tab = subgroup_classes(R.M.group)
    parts = [f"group {group_ref}\n", "M\n", format_lattice(R.M), f"P {len(R.perm_classes)}\n"]
    parts += [f"{c} {tab[c].label}\n" for c in R.perm_classes]
    parts += ["F\n", format_lattice(R.F), "incl\n", zlin.format_matrix(R.incl),
              "proj\n", zlin.format_matrix(R.proj)]
    return "".join(parts)


def _expect(lines: list[str], pos: int, word: str) -> int:
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines) or lines[pos].split()[0] != word:
        raise ValueError(f"expected {word!r} at line {pos + 1}")
    return pos


def parse_resolution(text: str, G: FiniteGroup) -> Resolution:
    """Rebuild a resolution; ``P`` is reassembled from its class indices, never read."""
    from .glattice import read_lattice_lines
    lines = text.splitlines()
    pos = 0
    while pos < len(lines) and (not lines[pos].strip() or lines[pos].startswith("group")):
        pos += 1
    pos = _expect(lines, pos, "M") + 1
    M, pos = read_lattice_lines(lines, pos, G)
    pos = _expect(lines, pos, "P")
    n = int(lines[pos].split()[1])
    tab = subgroup_classes(G)
    classes = []
    for i in range(n):
        c = int(lines[pos + 1 + i].split()[0])
        if not 0 <= c < len(tab):
            raise ValueError(f"class index {c} out of range")
        classes.append(c)
    pos += n + 1
    pos = _expect(lines, pos, "F") + 1
    F, pos = read_lattice_lines(lines, pos, G)
    pos = _expect(lines, pos, "incl") + 1
    incl, pos = zlin.read_matrix_lines(lines, pos)
    pos = _expect(lines, pos, "proj") + 1
    proj, pos = zlin.read_matrix_lines(lines, pos)
    if classes:
        P = direct_sum([perm_lattice(G, tab[c].rep) for c in classes])
    else:
        P = GLattice(G, [flint.fmpz_mat(0, 0)] * len(G.generators), rank=0, summands=[])
    if incl.nrows() != M.rank or incl.ncols() != P.rank or proj.nrows() != P.rank \
            or proj.ncols() != F.rank:
        raise ValueError("map shapes do not match the lattices")
    return Resolution(M, P, F, incl, proj, CoflabbyBase([], classes))
