"""G-lattices given by one integer matrix per group generator.

Row-vector convention: ``v`` maps to ``v * rho(g)`` and ``rho(gh) = rho(g) rho(h)``
for the left-to-right product of the group.  An equivariant map ``X`` from
``M1`` to ``M2`` satisfies ``rho1(g) X = X rho2(g)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import flint

from . import zlin
from .groups import FiniteGroup, Subgroup, coset_action, subgroup_classes
from .groups.subgroups import SubgroupClass


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    """Block of a direct sum.  ``sub`` is a subgroup mask for ``Z[G/H]`` blocks."""

    rank: int
    offset: int
    sub: int | None = None
    tag: str = ""

    @property
    def is_perm(self) -> bool:
        return self.sub is not None


def _as_subgroup(G: FiniteGroup, sub) -> Subgroup:
    if isinstance(sub, SubgroupClass):
        return sub.rep
    if isinstance(sub, Subgroup):
        if sub.group is not G:
            raise LatticeError("subgroup belongs to a different group")
        return sub
    if sub is None:
        return G.whole
    raise LatticeError(f"not a subgroup: {sub!r}")


class GLattice:
    def __init__(self, group: FiniteGroup, action: Sequence, rank: int | None = None,
                 summands: Sequence[Summand] | None = None, name: str = ""):
        self.group = group
        mats = tuple(zlin.mat(a) for a in action)
        if len(mats) != len(group.generators):
            raise LatticeError(f"need {len(group.generators)} action matrices, got {len(mats)}")
        if rank is None:
            if not mats:
                raise LatticeError("rank required for a group without generators")
            rank = mats[0].nrows()
        for A in mats:
            if A.nrows() != rank or A.ncols() != rank:
                raise LatticeError("action matrix has the wrong shape")
        self.action = mats
        self.rank = rank
        self.summands = tuple(summands) if summands else (Summand(rank, 0),)
        self.name = name
        self._rho: dict[int, flint.fmpz_mat] = {}

    def __repr__(self):
        return f"GLattice({self.name or '?'}, rank={self.rank}, group={self.group.label})"

    def check(self) -> None:
        for A in self.action:
            if abs(zlin.det(A)) != 1:
                raise LatticeError("action matrix is not unimodular")

    # -- element-level action ------------------------------------------------

    def matrix(self, x: int) -> flint.fmpz_mat:
        """``rho`` of the group element with index ``x`` (evaluated along its word)."""
        if x == 0:
            return zlin.identity(self.rank)
        cached = self._rho.get(x)
        if cached is not None:
            return cached
        parent, pos = self.group.words[x]
        out = self.matrix(parent) * self.action[pos] if parent else self.action[pos]
        if self.rank * self.rank * (len(self._rho) + 1) <= 4_000_000:
            self._rho[x] = out
        return out

    def elements_matrices(self, H: Subgroup) -> dict[int, flint.fmpz_mat]:
        """``rho(h)`` for every ``h`` in ``H``, by BFS over the generators of ``H``."""
        G = self.group
        T = G.table
        out = {0: zlin.identity(self.rank)}
        gens = [(s, self.matrix(s)) for s in H.generators]
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, A in gens:
                    y = int(T[x, s])
                    if y not in out:
                        out[y] = out[x] * A
                        nxt.append(y)
            frontier = nxt
        return out

    def norm(self, H: Subgroup) -> flint.fmpz_mat:
        acc = zlin.zeros(self.rank, self.rank)
        for A in self.elements_matrices(H).values():
            acc += A
        return acc


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def _perm_matrix(perm: Sequence[int]) -> flint.fmpz_mat:
    n = len(perm)
    A = flint.fmpz_mat(n, n)
    for y, z in enumerate(perm):
        A[y, z] = 1
    return A


def perm_lattice(G: FiniteGroup, sub=None) -> GLattice:
    """``Z[G/H]`` on right cosets in canonical order: ``P[y, sigma(y)] = 1``."""
    H = _as_subgroup(G, sub)
    ct = coset_action(G, H)
    mats = [_perm_matrix(p) for p in ct.gen_perms]
    n = len(ct)
    return GLattice(G, mats, rank=n, summands=[Summand(n, 0, H.mask)], name=f"Z[G/H{H.order}]")


def trivial_lattice(G: FiniteGroup) -> GLattice:
    return perm_lattice(G, G.whole)


def chevalley_from_perms(G: FiniteGroup, perms: Sequence[Sequence[int]], name: str = "J") -> GLattice:
    """``Z[X] / Z * (sum of X)`` for the G-set ``X`` given by generator permutations.

    Basis: images of the first ``d-1`` points; the last point maps to minus
    their sum, so row ``y`` of ``rho(g)`` is ``l[sigma_g(y)]``.
    """
    d = len(perms[0]) if perms else 1
    r = d - 1
    mats = []
    for sigma in perms:
        A = flint.fmpz_mat(r, r)
        for y in range(r):
            z = sigma[y]
            if z < r:
                A[y, z] = 1
            else:
                for j in range(r):
                    A[y, j] = -1
        mats.append(A)
    return GLattice(G, mats, rank=r, name=name)


def chevalley(G: FiniteGroup, sub) -> GLattice:
    """Chevalley module ``J_{G/H}`` of rank ``[G:H] - 1``."""
    H = _as_subgroup(G, sub)
    ct = coset_action(G, H)
    if not G.generators:
        return GLattice(G, [], rank=len(ct) - 1, name="J")
    return chevalley_from_perms(G, ct.gen_perms, name=f"J[G/H{H.order}]")


def dual(M: GLattice) -> GLattice:
    mats = [zlin.inverse_unimodular(A).transpose() for A in M.action]
    summands = [Summand(s.rank, s.offset, s.sub, s.tag) for s in M.summands]
    return GLattice(M.group, mats, rank=M.rank, summands=summands,
                    name=f"dual({M.name})" if M.name else "")


def direct_sum(Ms: Sequence[GLattice]) -> GLattice:
    if not Ms:
        raise LatticeError("empty direct sum")
    G = Ms[0].group
    for M in Ms:
        if M.group is not G:
            raise LatticeError("direct sum over different groups")
    mats = [zlin.block_diag([M.action[i] for M in Ms]) for i in range(len(G.generators))]
    summands = []
    off = 0
    for M in Ms:
        for s in M.summands:
            summands.append(Summand(s.rank, off + s.offset, s.sub, s.tag))
        off += M.rank
    return GLattice(G, mats, rank=off, summands=summands, name=" + ".join(M.name for M in Ms))


def restrict(M: GLattice, sub) -> GLattice:
    """Restriction to a subgroup, as a lattice over ``sub.as_group()``."""
    H = _as_subgroup(M.group, sub)
    K = H.as_group()
    mats = [M.matrix(x) for x in H.generators]
    return GLattice(K, mats, rank=M.rank, name=f"{M.name}|H{H.order}")


def transport(M: GLattice, X: flint.fmpz_mat, name: str = "") -> GLattice:
    """The lattice with action ``X^-1 rho(g) X`` (``X`` unimodular)."""
    Xi = zlin.inverse_unimodular(X)
    return GLattice(M.group, [Xi * A * X for A in M.action], rank=M.rank, name=name)


# ---------------------------------------------------------------------------
# fixed points, cohomology, flabbiness
# ---------------------------------------------------------------------------

def fixed_sublattice(M: GLattice, sub=None) -> flint.fmpz_mat:
    """Saturated basis (rows) of ``{v : v rho(h) = v for h in H}``."""
    H = _as_subgroup(M.group, sub)
    if M.rank == 0:
        return flint.fmpz_mat(0, 0)
    gens = H.generators
    if not gens:
        return zlin.identity(M.rank)
    I = zlin.identity(M.rank)
    return zlin.kernel_saturated(zlin.hstack([M.matrix(h) - I for h in gens]))


def coinvariant_columns(M: GLattice, sub=None) -> flint.fmpz_mat:
    """Rows ``c`` with ``rho(h) c^T = c^T`` for ``h`` in ``H`` (fixed points of the dual)."""
    H = _as_subgroup(M.group, sub)
    if M.rank == 0:
        return flint.fmpz_mat(0, 0)
    gens = H.generators
    if not gens:
        return zlin.identity(M.rank)
    I = zlin.identity(M.rank)
    return zlin.kernel_saturated(zlin.hstack([(M.matrix(h) - I).transpose() for h in gens]))


TateGroup = tuple  # invariant factors > 1 of a finite abelian group; () is trivial


def _finite(invs: Sequence[int]) -> tuple[int, ...]:
    if any(d == 0 for d in invs):
        raise LatticeError("cohomology group is not finite")
    return tuple(d for d in invs if d != 1)


def tate_h0(M: GLattice, sub=None) -> TateGroup:
    """``M^H / N_H M``."""
    H = _as_subgroup(M.group, sub)
    fixed = fixed_sublattice(M, H)
    if fixed.nrows() == 0:
        return ()
    image = M.norm(H)
    return _finite(zlin.quotient_invariants(image, fixed))


def augmentation_image(M: GLattice, H: Subgroup) -> flint.fmpz_mat:
    """Rows spanning ``I_H M = sum over generators h of M (rho(h) - I)``."""
    I = zlin.identity(M.rank)
    blocks = [M.matrix(h) - I for h in H.generators]
    if not blocks:
        return flint.fmpz_mat(0, M.rank)
    return zlin.vstack(blocks, M.rank)


def tate_hminus1(M: GLattice, sub=None) -> TateGroup:
    """``ker N_H / I_H M``."""
    H = _as_subgroup(M.group, sub)
    if M.rank == 0:
        return ()
    kern = zlin.kernel_saturated(M.norm(H))
    if kern.nrows() == 0:
        return ()
    return _finite(zlin.quotient_invariants(augmentation_image(M, H), kern))


def is_flabby(M: GLattice, witness: bool = False):
    """``H^-1(H, M) = 0`` for every subgroup class ``H``."""
    for c in subgroup_classes(M.group):
        if c.order == 1:
            continue
        if tate_hminus1(M, c.rep):
            return (False, c.index) if witness else False
    return (True, None) if witness else True


def is_coflabby(M: GLattice) -> bool:
    return is_flabby(dual(M))


def is_trivial_action(M: GLattice) -> bool:
    return all(A == zlin.identity(M.rank) for A in M.action)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def character(M: GLattice) -> tuple[int, ...]:
    """Traces of ``rho`` at the representatives (minimal elements) of the conjugacy classes."""
    out = []
    for cl in M.group.conjugacy_classes:
        A = M.matrix(cl[0])
        out.append(sum(int(A[i, i]) for i in range(M.rank)))
    return tuple(out)


def perm_character(G: FiniteGroup, sub) -> tuple[int, ...]:
    """Fixed-coset counts, without building matrices."""
    H = _as_subgroup(G, sub)
    ct = coset_action(G, H)
    T = G.table
    out = []
    for cl in G.conjugacy_classes:
        g = cl[0]
        out.append(sum(1 for r in ct.reps if ct.coset_of[int(T[r, g])] == ct.coset_of[r]))
    return tuple(out)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

def _block(M: GLattice, s: Summand) -> GLattice:
    if s.offset == 0 and s.rank == M.rank:
        return M
    idx = range(s.offset, s.offset + s.rank)
    return GLattice(M.group, [zlin.submatrix(A, idx, idx) for A in M.action], rank=s.rank)


def _hom_into_perm(A: GLattice, sub: int) -> list[flint.fmpz_mat]:
    G = A.group
    K = Subgroup(G, sub)
    ct = coset_action(G, K)
    C = coinvariant_columns(A, K)
    out = []
    cols = [A.matrix(G.inv(x)) for x in ct.reps]
    for c in zlin.to_rows(C):
        cv = flint.fmpz_mat([[x] for x in c]) if A.rank else flint.fmpz_mat(0, 1)
        X = flint.fmpz_mat(A.rank, len(ct))
        for j, R in enumerate(cols):
            col = R * cv
            for i in range(A.rank):
                X[i, j] = col[i, 0]
        out.append(X)
    return out


def _hom_from_perm(sub: int, B: GLattice) -> list[flint.fmpz_mat]:
    G = B.group
    K = Subgroup(G, sub)
    ct = coset_action(G, K)
    U = fixed_sublattice(B, K)
    out = []
    mats = [B.matrix(x) for x in ct.reps]
    for u in zlin.to_rows(U):
        uv = flint.fmpz_mat([u])
        out.append(zlin.vstack([uv * R for R in mats], B.rank))
    return out


HOM_VECTOR_LIMIT = 4_000


def _hom_general(A: GLattice, B: GLattice) -> list[flint.fmpz_mat]:
    n1, n2 = A.rank, B.rank
    if n1 * n2 > HOM_VECTOR_LIMIT:
        raise LatticeError(f"vectorized Hom too large ({n1}x{n2})")
    blocks = []
    for a, b in zip(A.action, B.action):
        ra, rb = zlin.to_rows(a), zlin.to_rows(b)
        # L^T where L vec(X) = vec(a X - X b) for row-major vec
        L = [[0] * (n1 * n2) for _ in range(n1 * n2)]
        for i in range(n1):
            for j in range(n2):
                r = i * n2 + j
                for k in range(n1):
                    if ra[i][k]:
                        L[r][k * n2 + j] += ra[i][k]
                for k in range(n2):
                    if rb[k][j]:
                        L[r][i * n2 + k] -= rb[k][j]
        blocks.append(zlin.mat(L).transpose())
    if not blocks:
        K = zlin.identity(n1 * n2)
    else:
        K = zlin.kernel_saturated(zlin.hstack(blocks))
    out = []
    for row in zlin.to_rows(K):
        out.append(zlin.mat([row[i * n2:(i + 1) * n2] for i in range(n1)], n2))
    return out


def hom_basis(M1: GLattice, M2: GLattice) -> list[flint.fmpz_mat]:
    """Saturated Z-basis of ``Hom_G(M1, M2)``, ordered by (M1 block, M2 block).

    Blocks that are permutation summands use Frobenius reciprocity:
    ``Hom(A, Z[G/K])`` is the ``K``-fixed part of the dual of ``A`` and
    ``Hom(Z[G/K], B)`` is ``B^K``.  Other block pairs use the vectorized
    intertwining equations.
    """
    if M1.group is not M2.group:
        raise LatticeError("Hom between lattices over different groups")
    out = []
    for s in M1.summands:
        A = _block(M1, s)
        for t in M2.summands:
            B = _block(M2, t)
            if t.is_perm:
                pieces = _hom_into_perm(A, t.sub)
            elif s.is_perm:
                pieces = _hom_from_perm(s.sub, B)
            else:
                pieces = _hom_general(A, B)
            for X in pieces:
                full = flint.fmpz_mat(M1.rank, M2.rank)
                for i in range(s.rank):
                    for j in range(t.rank):
                        v = X[i, j]
                        if v:
                            full[s.offset + i, t.offset + j] = v
                out.append(full)
    return out


def is_equivariant(M1: GLattice, M2: GLattice, X: flint.fmpz_mat) -> bool:
    return all(a * X == X * b for a, b in zip(M1.action, M2.action))


def check_iso(M1: GLattice, M2: GLattice, X) -> bool:
    """``rho1(g) X = X rho2(g)`` on generators and ``|det X| = 1``."""
    X = zlin.mat(X)
    if M1.group is not M2.group:
        raise LatticeError("lattices over different groups")
    if X.nrows() != M1.rank or X.ncols() != M2.rank or M1.rank != M2.rank:
        raise LatticeError("dimension mismatch")
    if abs(zlin.det(X)) != 1:
        return False
    return is_equivariant(M1, M2, X)


# ---------------------------------------------------------------------------
# Sylow restriction of a Chevalley module
# ---------------------------------------------------------------------------

@dataclass
class OrbitReduction:
    lattice: GLattice          # reduced lattice over P.as_group()
    orbits: list[list[int]]    # P-orbits on G/H (coset indices)
    kept: list[int]            # orbit positions kept
    stabilizer_orders: list[int] = field(default_factory=list)


def chevalley_restricted(G: FiniteGroup, sub, P: Subgroup) -> OrbitReduction:
    """``J_{G/H}`` restricted to ``P``, modulo permutation summands.

    With ``X = G/H`` split into ``P``-orbits ``P/K_i``, an orbit whose
    stabilizer is subconjugate to the stabilizer of another orbit splits off as
    a permutation summand: ``J_X = J_X' + Z[X \\ X']``.  The reduced lattice has
    the same flabby class as the full restriction.
    """
    H = _as_subgroup(G, sub)
    ct = coset_action(G, H)
    Q = P.as_group()
    perms = [ct.action(x) for x in P.generators]
    n = len(ct)
    seen = [False] * n
    orbits = []
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
        orbits.append(sorted(orb))
    # stabilizer in Q of the first point of each orbit
    qtab = subgroup_classes(Q)
    stab_class = []
    stab_masks = []
    for orb in orbits:
        y = orb[0]
        r = ct.reps[y]
        m = 0
        for idx, g in enumerate(Q.elements):
            gi = G.index[g]
            if ct.coset_of[int(G.table[r, gi])] == y:
                m |= 1 << idx
        stab_masks.append(m)
        stab_class.append(qtab.class_of_mask[m])

    def subconj(i, j):
        return any(c & ~stab_masks[j] == 0 for c in qtab[stab_class[i]].conjugates)

    kept = list(range(len(orbits)))
    changed = True
    while changed:
        changed = False
        for i in kept:
            if any(j != i and subconj(i, j) for j in kept):
                kept.remove(i)
                changed = True
                break
    pts = [y for i in kept for y in orbits[i]]
    pos = {y: k for k, y in enumerate(pts)}
    new_perms = [[pos[p[y]] for y in pts] for p in perms]
    if Q.generators:
        L = chevalley_from_perms(Q, new_perms, name=f"J|P{P.order}")
    else:
        L = GLattice(Q, [], rank=len(pts) - 1, name=f"J|P{P.order}")
    return OrbitReduction(L, orbits, kept, [popcount_(m) for m in stab_masks])


def popcount_(m: int) -> int:
    return bin(m).count("1")


# ---------------------------------------------------------------------------
# lattice file format
# ---------------------------------------------------------------------------

def format_lattice(M: GLattice, group_ref: str | None = None) -> str:
    parts = []
    if group_ref:
        parts.append(f"group {group_ref}\n")
    parts.append(f"rank {M.rank} gens {len(M.action)}\n")
    for A in M.action:
        parts.append(zlin.format_matrix(A))
    return "".join(parts)


def read_lattice_lines(lines: list[str], pos: int, G: FiniteGroup) -> tuple[GLattice, int]:
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    head = lines[pos].split() if pos < len(lines) else []
    if len(head) != 4 or head[0] != "rank" or head[2] != "gens":
        raise LatticeError(f"expected 'rank r gens g', got {lines[pos] if pos < len(lines) else 'EOF'!r}")
    r, g = int(head[1]), int(head[3])
    pos += 1
    mats = []
    for _ in range(g):
        A, pos = zlin.read_matrix_lines(lines, pos)
        if A.nrows() != r or A.ncols() != r:
            raise LatticeError("action matrix has the wrong shape")
        mats.append(A)
    return GLattice(G, mats, rank=r), pos
