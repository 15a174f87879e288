"""Stably permutation tests for a flabby lattice ``F``.

A relation ``sum c_i Z[G/H_i] + c_F F = 0`` (one coefficient per subgroup
class, then ``c_F``) is possible only if the characters agree.  The
solutions form a lattice; if every solution has ``c_F`` divisible by some
``d > 1`` then ``F`` is not stably permutation.  Otherwise a relation with
``c_F = -1`` is turned into two lattices ``N`` (containing ``F``) and ``P``,
and an equivariant unimodular ``X: N -> P`` is searched for in ``Hom_G(N, P)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import flint
import numpy as np

from . import zlin
from .flabby import Budget, BudgetExceeded, Resolution, UNLIMITED, format_resolution, parse_resolution
from .glattice import (GLattice, LatticeError, character, check_iso, direct_sum, format_lattice,
                       hom_basis, is_flabby, perm_character, perm_lattice, read_lattice_lines,
                       tate_h0)
from .groups import FiniteGroup, named_group, subgroup_classes
from .groups.subgroups import coset_action, prime_factors

DEFAULT_WINDOW = (-1, 2)
DEFAULT_RANDOM_TRIALS = 200_000
DEFAULT_DESCENT_EVALS = 400_000


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class RelationVector:
    """Coefficients per subgroup class (canonical order) followed by ``c_F``."""

    coeffs: tuple[int, ...]

    @property
    def c_F(self) -> int:
        return self.coeffs[-1]

    @property
    def classes(self) -> tuple[int, ...]:
        return self.coeffs[:-1]

    def __neg__(self):
        return RelationVector(tuple(-x for x in self.coeffs))

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.coeffs) + "]"


# ---------------------------------------------------------------------------
# possibility vectors
# ---------------------------------------------------------------------------

def _primary_parts(invs: Sequence[int]) -> dict[int, int]:
    """Multiplicity of each prime-power cyclic factor of ``prod Z/n``."""
    out: dict[int, int] = {}
    for n in invs:
        for p in prime_factors(n):
            q = 1
            while n % (q * p) == 0:
                q *= p
            out[q] = out.get(q, 0) + 1
    return out


def _perm_h0(G: FiniteGroup, K, H) -> list[int]:
    """Orders of the cyclic summands of ``H^0(H, Z[G/K])``: one per ``H``-orbit."""
    ct = coset_action(G, K)
    perms = [ct.action(h) for h in H.generators]
    seen = [False] * len(ct)
    out = []
    for y in range(len(ct)):
        if seen[y]:
            continue
        seen[y] = True
        orb = [y]
        for z in orb:
            for p in perms:
                if not seen[p[z]]:
                    seen[p[z]] = True
                    orb.append(p[z])
        out.append(H.order // len(orb))
    return [n for n in out if n > 1]


def relation_system(F: GLattice, tate: bool = False) -> flint.fmpz_mat:
    """Rows: one per subgroup class, then ``F``; columns: the constraints.

    Characters at the element classes always; with ``tate`` also the number
    of ``Z/q`` primary summands of ``H^0(H, -)`` for every class ``H``.
    """
    G = F.group
    tab = subgroup_classes(G)
    rows = [list(perm_character(G, c.rep)) for c in tab]
    rows.append(list(character(F)))
    if tate:
        for H in (c.rep for c in tab if c.order > 1):
            parts = [_primary_parts(_perm_h0(G, c.rep, H)) for c in tab]
            parts.append(_primary_parts(tate_h0(F, H)))
            keys = sorted(set().union(*parts))
            for i, row in enumerate(rows):
                row.extend(parts[i].get(q, 0) for q in keys)
    return zlin.mat(rows)


def possibility_vectors(M: GLattice | None, F: GLattice, tate: bool = False) -> list[RelationVector]:
    """HNF basis of the integer relations allowed by the constraint system."""
    if M is not None and M.group is not F.group:
        raise LatticeError("M and F live over different groups")
    A = relation_system(F, tate)
    K = zlin.kernel_saturated(A)
    if K.nrows() == 0:
        return []
    H = zlin.hnf_only(K)
    return [RelationVector(tuple(r)) for r in zlin.to_rows(H) if any(r)]


def annihilates(F: GLattice, v: RelationVector, tate: bool = False) -> bool:
    A = relation_system(F, tate)
    return (zlin.mat([list(v.coeffs)]) * A).is_zero()


def in_relation_lattice(vectors: Sequence[RelationVector], v: Sequence[int]) -> bool:
    if not vectors:
        return not any(v)
    return zlin.in_lattice(zlin.mat([list(x.coeffs) for x in vectors]), list(v))


@dataclass
class Obstruction:
    d: int

    @property
    def refuted(self) -> bool:
        return self.d != 1


def refute_stable(vectors: Sequence[RelationVector]) -> Obstruction:
    """``d = gcd`` of the ``c_F`` coordinates; ``d != 1`` rules out ``c_F = +-1``."""
    return Obstruction(zlin.gcd_list(v.c_F for v in vectors))


# ---------------------------------------------------------------------------
# sides of a relation
# ---------------------------------------------------------------------------

F_SLOT = -1   # marks F in a side list


def split_relation(rel: RelationVector, padding: Sequence[int] = ()) -> tuple[list[int], list[int]]:
    """``(N, P)`` with ``F`` on ``N``; class indices ascending with multiplicity, ``F`` last.

    ``padding`` adds the same classes to both sides.
    """
    if abs(rel.c_F) != 1:
        raise CertificateError(f"relation needs c_F = +-1, got {rel.c_F}")
    if rel.c_F == 1:
        rel = -rel
    pad = {}
    for c in padding:
        pad[c] = pad.get(c, 0) + 1
    N, P = [], []
    for c, x in enumerate(rel.classes):
        N += [c] * (max(-x, 0) + pad.get(c, 0))
        P += [c] * (max(x, 0) + pad.get(c, 0))
    N.append(F_SLOT)
    return N, P


def assemble(G: FiniteGroup, side: Sequence[int], F: GLattice | None = None) -> GLattice:
    tab = subgroup_classes(G)
    parts = []
    for c in side:
        if c == F_SLOT:
            if F is None:
                raise CertificateError("side contains F but no F was given")
            parts.append(F)
        else:
            parts.append(perm_lattice(G, tab[c].rep))
    if not parts:
        return GLattice(G, [flint.fmpz_mat(0, 0)] * len(G.generators), rank=0, summands=[])
    return direct_sum(parts)


def side_rank(G: FiniteGroup, side: Sequence[int], F: GLattice) -> int:
    tab = subgroup_classes(G)
    return sum(F.rank if c == F_SLOT else G.order // tab[c].order for c in side)


def usable_relations(vectors: Sequence[RelationVector], G: FiniteGroup, F: GLattice,
                     coeff_range: int = 2, limit: int = 8) -> list[RelationVector]:
    """Relations with ``c_F = -1`` from small combinations of the basis, by side rank."""
    found: dict[tuple[int, ...], int] = {}
    k = len(vectors)
    if k == 0:
        return []
    rng = range(-coeff_range, coeff_range + 1)
    combos = itertools.product(rng, repeat=k) if k <= 6 else (
        tuple(1 if j == i else 0 for j in range(k)) for i in range(k))
    for co in combos:
        v = [sum(c * x.coeffs[j] for c, x in zip(co, vectors)) for j in range(len(vectors[0].coeffs))]
        if v[-1] == 1:
            v = [-x for x in v]
        if v[-1] != -1:
            continue
        rel = RelationVector(tuple(v))
        N, _ = split_relation(rel)
        found[rel.coeffs] = side_rank(G, N, F)
    ordered = sorted(found, key=lambda c: (found[c], [abs(x) for x in c], c))
    return [RelationVector(c) for c in ordered[:limit]]


# ---------------------------------------------------------------------------
# block decomposition
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class BlockDecomposition:
    bp_blocks: list[list[int]]
    row_blocks: list[list[int]]


def _support_rows(X: flint.fmpz_mat) -> list[int]:
    return [i for i in range(X.nrows()) if any(X[i, j] for j in range(X.ncols()))]


def row_blocks(bp: Sequence[flint.fmpz_mat]) -> BlockDecomposition:
    """Connected components of "basis element touches row"; indices ascending."""
    if not bp:
        raise CertificateError("empty Hom basis")
    n = bp[0].nrows()
    uf = _UnionFind(n)
    supports = [_support_rows(X) for X in bp]
    for rows in supports:
        for r in rows[1:]:
            uf.union(rows[0], r)
    rows_of: dict[int, list[int]] = {}
    for r in range(n):
        rows_of.setdefault(uf.find(r), []).append(r)
    elems_of: dict[int, list[int]] = {}
    for i, rows in enumerate(supports):
        if rows:
            elems_of.setdefault(uf.find(rows[0]), []).append(i)
    roots = sorted(rows_of, key=lambda k: rows_of[k][0])
    return BlockDecomposition([elems_of.get(k, []) for k in roots], [rows_of[k] for k in roots])


# ---------------------------------------------------------------------------
# certificate search
# ---------------------------------------------------------------------------

@dataclass
class SearchReport:
    found: bool
    matrix: flint.fmpz_mat | None = None
    coefficients: list[int] | None = None
    strategy: str = ""
    seed: int = 0
    tried: int = 0
    stats: dict = field(default_factory=dict)


def _as_array(bp: Sequence[flint.fmpz_mat]) -> np.ndarray:
    return np.array([zlin.to_rows(X) for X in bp], dtype=np.float64)


def _unimodular_floats(X: np.ndarray) -> np.ndarray:
    sign, logdet = np.linalg.slogdet(X)
    return (sign != 0) & (np.abs(logdet) < 1e-6)


def _combine(bp: Sequence[flint.fmpz_mat], coeffs: Sequence[int]) -> flint.fmpz_mat:
    n, m = bp[0].nrows(), bp[0].ncols()
    X = flint.fmpz_mat(n, m)
    for c, B in zip(coeffs, bp):
        if c:
            X += c * B
    return X


def _block_candidates(bp, elems, rows, window, max_nonzero, limit, budget):
    values = [v for v in range(window[0], window[1] + 1) if v != 0]
    subs = [zlin.submatrix(bp[e], rows) for e in elems]
    want = tuple([1] * len(rows))
    out = []
    seen = set()
    for k in range(1, min(max_nonzero, len(elems)) + 1):
        for support in itertools.combinations(range(len(elems)), k):
            for vals in itertools.product(values, repeat=k):
                budget.check(what="block candidate filter")
                co = [0] * len(elems)
                for s, v in zip(support, vals):
                    co[s] = v
                if tuple(-x for x in co) in seen:
                    continue
                S = flint.fmpz_mat(len(rows), subs[0].ncols())
                for s, v in zip(support, vals):
                    S += v * subs[s]
                if zlin.invariant_factors(S) == want:
                    seen.add(tuple(co))
                    out.append(co)
                    if len(out) >= limit:
                        return out
    return out


def block_search(bp, blocks: BlockDecomposition, window=DEFAULT_WINDOW, max_nonzero: int = 3,
                 candidate_limit: int = 2000, merge_limit: int = 500_000,
                 budget: Budget = UNLIMITED) -> SearchReport:
    """Primitive row pieces per block, merged in lexicographic order until ``|det| = 1``."""
    n = bp[0].nrows()
    if bp[0].ncols() != n:
        return SearchReport(False, strategy="block", stats={"reason": "not square"})
    A = _as_array(bp)
    per_block = []
    for elems, rows in zip(blocks.bp_blocks, blocks.row_blocks):
        if not elems:
            return SearchReport(False, strategy="block", stats={"reason": f"rows {rows} unreachable"})
        cands = _block_candidates(bp, elems, rows, window, max_nonzero, candidate_limit, budget)
        if not cands:
            return SearchReport(False, strategy="block", stats={"reason": f"no primitive piece on rows {rows}"})
        co = np.array(cands, dtype=np.float64)
        pieces = np.einsum("cb,bij->cij", co, A[elems][:, rows, :])
        per_block.append((elems, rows, cands, pieces))
    sizes = [len(p[2]) for p in per_block]
    stats = {"candidates": sizes}
    chunk = max(1, int(2e7 // (n * n * 8)))
    total = math.prod(sizes)
    tried = 0
    it = itertools.product(*[range(s) for s in sizes])
    while tried < min(total, merge_limit):
        budget.check(what="block merge")
        idx = list(itertools.islice(it, min(chunk, merge_limit - tried)))
        if not idx:
            break
        X = np.zeros((len(idx), n, n))
        arr = np.array(idx)
        for b, (_, rows, _, pieces) in enumerate(per_block):
            X[:, rows, :] = pieces[arr[:, b]]
        hits = np.nonzero(_unimodular_floats(X))[0]
        for h in hits:
            coeffs = [0] * len(bp)
            for b, (elems, _, cands, _) in enumerate(per_block):
                for e, c in zip(elems, cands[idx[h][b]]):
                    coeffs[e] = c
            Xm = _combine(bp, coeffs)
            if abs(zlin.det(Xm)) == 1:
                return SearchReport(True, Xm, coeffs, "block", 0, tried + int(h) + 1, stats)
        tried += len(idx)
    stats["merged"] = tried
    return SearchReport(False, strategy="block", tried=tried, stats=stats)


def random_search(bp, window=DEFAULT_WINDOW, trials: int = DEFAULT_RANDOM_TRIALS, seed: int = 0,
                  budget: Budget = UNLIMITED) -> SearchReport:
    """Uniform coefficients in ``window`` (PCG64 stream ``seed``); first unimodular hit wins."""
    n = bp[0].nrows()
    if bp[0].ncols() != n:
        return SearchReport(False, strategy="random", seed=seed, stats={"reason": "not square"})
    rng = np.random.Generator(np.random.PCG64(seed))
    A = _as_array(bp)
    chunk = max(1, int(2e7 // (n * n * 8)))
    done = 0
    while done < trials:
        budget.check(what="random certificate search")
        m = min(chunk, trials - done)
        co = rng.integers(window[0], window[1] + 1, size=(m, len(bp)))
        X = np.einsum("cb,bij->cij", co.astype(np.float64), A)
        for h in np.nonzero(_unimodular_floats(X))[0]:
            coeffs = [int(x) for x in co[h]]
            Xm = _combine(bp, coeffs)
            if abs(zlin.det(Xm)) == 1:
                return SearchReport(True, Xm, coeffs, "random", seed, done + int(h) + 1)
        done += m
    return SearchReport(False, strategy="random", seed=seed, tried=done)


def descent_search(bp, window=DEFAULT_WINDOW, restarts: int = 20_000, steps: int = 400, seed: int = 0,
                   budget: Budget = UNLIMITED, max_evals: int = DEFAULT_DESCENT_EVALS) -> SearchReport:
    """Greedy descent on ``log |det|`` over unit steps of one coefficient.

    Starts from uniform coefficients in ``window`` (PCG64 stream ``seed``) and
    restarts when no single step lowers ``|det|``.  Stops after ``max_evals``
    determinant evaluations.
    """
    n = bp[0].nrows()
    if bp[0].ncols() != n:
        return SearchReport(False, strategy="descent", seed=seed, stats={"reason": "not square"})
    rng = np.random.Generator(np.random.PCG64(seed))
    A = _as_array(bp)
    moves = [(b, d) for b in range(len(bp)) for d in (-1, 1)]
    evaluated = 0
    for r in range(restarts):
        budget.check(what="descent certificate search")
        if evaluated >= max_evals:
            restarts = r
            break
        c = rng.integers(window[0], window[1] + 1, size=len(bp))
        X = np.tensordot(c.astype(np.float64), A, 1)
        sign, cur = np.linalg.slogdet(X)
        cur = cur if sign != 0 else np.inf
        for _ in range(steps):
            if cur < 1e-6:
                coeffs = [int(x) for x in c]
                Xm = _combine(bp, coeffs)
                if abs(zlin.det(Xm)) == 1:
                    return SearchReport(True, Xm, coeffs, "descent", seed, evaluated,
                                        {"restarts": r + 1})
                break
            Xs = X[None, :, :] + np.array([d * A[b] for b, d in moves])
            signs, lds = np.linalg.slogdet(Xs)
            lds = np.where(signs != 0, lds, np.inf)
            evaluated += len(moves)
            j = int(np.argmin(lds))
            if not lds[j] < cur - 1e-9:
                break
            b, d = moves[j]
            c[b] += d
            X, cur = Xs[j], lds[j]
    return SearchReport(False, strategy="descent", seed=seed, tried=evaluated,
                        stats={"restarts": restarts})


def search_certificate(M1: GLattice, M2: GLattice, bp=None, blocks=None, budget: Budget = UNLIMITED,
                       seed: int = 0, window=DEFAULT_WINDOW, trials: int = DEFAULT_RANDOM_TRIALS,
                       strategies: Sequence[str] = ("descent", "block", "random"), max_nonzero: int = 3) -> SearchReport:
    """Look for ``X`` in ``Hom_G(M1, M2)`` with ``|det X| = 1``; re-checked with ``check_iso``."""
    if M1.rank != M2.rank:
        return SearchReport(False, stats={"reason": "rank mismatch"})
    if M1.rank == 0:
        return SearchReport(True, flint.fmpz_mat(0, 0), [], "empty")
    if character(M1) != character(M2):
        return SearchReport(False, stats={"reason": "characters differ"})
    if bp is None:
        bp = hom_basis(M1, M2)
    if not bp:
        return SearchReport(False, stats={"reason": "Hom is zero"})
    reports = []
    try:
        for s in strategies:
            if s == "block":
                blocks = blocks or row_blocks(bp)
                rep = block_search(bp, blocks, window, max_nonzero, budget=budget)
            elif s == "random":
                rep = random_search(bp, window, trials, seed, budget)
            elif s == "descent":
                rep = descent_search(bp, window, seed=seed, budget=budget)
            else:
                raise ValueError(f"unknown strategy {s!r}")
            if rep.found:
                if not check_iso(M1, M2, rep.matrix):  # pragma: no cover - Hom basis is equivariant
                    raise AssertionError("search returned a non-equivariant matrix")
                return rep
            reports.append(rep)
    except BudgetExceeded as exc:
        return SearchReport(False, strategy="budget", stats={"reason": str(exc),
                                                              "partial": [r.stats for r in reports]})
    return SearchReport(False, strategy="+".join(strategies), seed=seed,
                        tried=sum(r.tried for r in reports), stats={"reports": [r.stats for r in reports]})


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class IsoCertificate:
    """``X: N -> P`` realizing ``relation``; ``F`` is stored so the file is self-contained."""

    group_ref: str
    relation: RelationVector
    F: GLattice
    matrix: flint.fmpz_mat
    padding: tuple[int, ...] = ()
    subgroup: int | None = None       # class of H when F comes from J_{G/H}
    strategy: str = ""
    seed: int | None = None
    resolution: Resolution | None = None

    def sides(self) -> tuple[list[int], list[int]]:
        return split_relation(self.relation, self.padding)


def certificate_problems(cert: IsoCertificate, G: FiniteGroup | None = None) -> list[str]:
    """Everything wrong with ``cert``; empty means it verifies."""
    from .glattice import chevalley
    G = G or cert.F.group
    out = []
    try:
        N, P = cert.sides()
    except CertificateError as exc:
        return [str(exc)]
    M1, M2 = assemble(G, N, cert.F), assemble(G, P)
    if M1.rank != M2.rank or cert.matrix.nrows() != M1.rank or cert.matrix.ncols() != M2.rank:
        return [f"matrix is {cert.matrix.nrows()}x{cert.matrix.ncols()}, sides have ranks "
                f"{M1.rank} and {M2.rank}"]
    if abs(zlin.det(cert.matrix)) != 1:
        out.append("matrix is not unimodular")
    if not all(a * cert.matrix == cert.matrix * b for a, b in zip(M1.action, M2.action)):
        out.append("matrix is not equivariant")
    if cert.F.rank and not is_flabby(cert.F):
        out.append("F is not flabby")
    R = cert.resolution
    if R is not None:
        out += ["resolution: " + p for p in R.problems(check_flabby=False)]
        if R.F.rank != cert.F.rank or any(a != b for a, b in zip(R.F.action, cert.F.action)):
            out.append("resolution F differs from certificate F")
        if cert.subgroup is not None:
            J = chevalley(G, subgroup_classes(G)[cert.subgroup].rep)
            if J.rank != R.M.rank or any(a != b for a, b in zip(J.action, R.M.action)):
                out.append("resolved lattice is not the Chevalley module of the subgroup")
    return out


def verify_certificate(cert: IsoCertificate, G: FiniteGroup | None = None) -> bool:
    return not certificate_problems(cert, G)


def certificate_from_matrix(G: FiniteGroup, group_ref: str, relation: RelationVector, X,
                            padding: Sequence[int] = (), subgroup: int | None = None) -> IsoCertificate:
    """Recover ``F`` from a bare matrix ``X: N -> P`` whose lattice ``F`` is not given.

    The action ``X rho_P X^-1`` must be block diagonal with the permutation
    part of ``N`` first, equal to ours, and ``F`` flabby; else CertificateError.
    """
    X = zlin.mat(X)
    N, P = split_relation(relation, padding)
    MP = assemble(G, P)
    if X.nrows() != MP.rank or X.ncols() != MP.rank:
        raise CertificateError(f"matrix is {X.nrows()}x{X.ncols()}, P side has rank {MP.rank}")
    if abs(zlin.det(X)) != 1:
        raise CertificateError("matrix is not unimodular")
    Xi = zlin.inverse_unimodular(X)
    action = [X * A * Xi for A in MP.action]
    Q = assemble(G, [c for c in N if c != F_SLOT])
    q, n = Q.rank, MP.rank
    head, tail = list(range(q)), list(range(q, n))
    for A, B in zip(action, Q.action):
        if not (zlin.submatrix(A, head, tail).is_zero() and zlin.submatrix(A, tail, head).is_zero()):
            raise CertificateError("transported action does not split as permutation part + F")
        if zlin.submatrix(A, head, head) != B:
            raise CertificateError("permutation part differs from the canonical coset lattice")
    F = GLattice(G, [zlin.submatrix(A, tail, tail) for A in action], rank=n - q, name="F")
    if F.rank and not is_flabby(F):
        raise CertificateError("recovered F is not flabby")
    return IsoCertificate(group_ref, relation, F, X, tuple(padding), subgroup, "given")


def format_certificate(cert: IsoCertificate) -> str:
    G = cert.F.group
    tab = subgroup_classes(G)
    lines = ["certificate 1", f"group {cert.group_ref}"]
    if cert.subgroup is not None:
        lines.append(f"subgroup {cert.subgroup} {tab[cert.subgroup].label}")
    lines.append(f"relation {len(tab)}")
    lines += [f"{i} {x} {tab[i].label}" for i, x in enumerate(cert.relation.classes)]
    lines.append(f"cF {cert.relation.c_F}")
    lines.append("padding " + " ".join(str(c) for c in (len(cert.padding),) + tuple(cert.padding)))
    lines.append(f"strategy {cert.strategy or '-'} seed {cert.seed if cert.seed is not None else '-'}")
    text = "\n".join(lines) + "\nF\n" + format_lattice(cert.F) + "matrix\n" + zlin.format_matrix(cert.matrix)
    if cert.resolution is not None:
        text += "resolution\n" + format_resolution(cert.resolution, cert.group_ref)
    return text


def parse_certificate(text: str, G: FiniteGroup | None = None) -> IsoCertificate:
    lines = text.splitlines()
    try:
        return _parse_certificate(lines, G)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CertificateError):
            raise
        raise CertificateError(f"malformed certificate: {exc}") from exc


def _parse_certificate(lines: list[str], G: FiniteGroup | None) -> IsoCertificate:
    pos = 0

    def nxt() -> list[str]:
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise CertificateError("unexpected end of certificate")
        pos += 1
        return lines[pos - 1].split()

    head = nxt()
    if head[:1] != ["certificate"]:
        raise CertificateError("missing 'certificate' header")
    words = nxt()
    if words[0] != "group":
        raise CertificateError("missing group line")
    group_ref = " ".join(words[1:])
    G = G or named_group(group_ref)
    tab = subgroup_classes(G)
    words = nxt()
    subgroup = None
    if words[0] == "subgroup":
        subgroup = int(words[1])
        words = nxt()
    if words[0] != "relation" or int(words[1]) != len(tab):
        raise CertificateError(f"relation must list all {len(tab)} subgroup classes")
    coeffs = []
    for i in range(len(tab)):
        w = nxt()
        if int(w[0]) != i:
            raise CertificateError(f"relation line for class {i} out of order")
        label = " ".join(w[2:])
        if label != tab[i].label:
            raise CertificateError(f"class {i} is {tab[i].label!r}, file says {label!r}")
        coeffs.append(int(w[1]))
    w = nxt()
    if w[0] != "cF":
        raise CertificateError("missing cF line")
    coeffs.append(int(w[1]))
    w = nxt()
    if w[0] != "padding" or len(w) != 2 + int(w[1]):
        raise CertificateError("bad padding line")
    padding = tuple(int(x) for x in w[2:])
    w = nxt()
    if w[0] != "strategy":
        raise CertificateError("missing strategy line")
    strategy = "" if w[1] == "-" else w[1]
    seed = None if len(w) < 4 or w[3] == "-" else int(w[3])
    if nxt() != ["F"]:
        raise CertificateError("missing F section")
    F, pos = read_lattice_lines(lines, pos, G)
    if nxt() != ["matrix"]:
        raise CertificateError("missing matrix section")
    X, pos = zlin.read_matrix_lines(lines, pos)
    resolution = None
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos < len(lines):
        if lines[pos].strip() != "resolution":
            raise CertificateError(f"unexpected trailing data {lines[pos]!r}")
        resolution = parse_resolution("\n".join(lines[pos + 1:]), G)
    return IsoCertificate(group_ref, RelationVector(tuple(coeffs)), F, X, padding, subgroup,
                          strategy, seed, resolution)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

@dataclass
class StableResult:
    vectors: list[RelationVector]
    obstruction: Obstruction
    certificate: IsoCertificate | None = None
    tried: list[tuple[RelationVector, SearchReport]] = field(default_factory=list)
    note: str = ""


def decide_stable(R: Resolution, group_ref: str, subgroup: int | None = None,
                  budget: Budget = UNLIMITED, seed: int = 0, relations: int = 3,
                  trials: int = DEFAULT_RANDOM_TRIALS, window=DEFAULT_WINDOW) -> StableResult:
    """Refute by the ``c_F`` gcd, else search certificates for the smallest relations."""
    F = R.F
    G = F.group
    vectors = possibility_vectors(R.M, F)
    obs = refute_stable(vectors)
    res = StableResult(vectors, obs)
    if obs.refuted:
        return res
    # the finer system discards relations that cannot hold
    fine = possibility_vectors(R.M, F, tate=True)
    if refute_stable(fine).refuted:
        res.obstruction = refute_stable(fine)
        res.note = "refuted by the Tate constraints"
        return res
    for rel in usable_relations(fine, G, F, limit=relations):
        N, P = split_relation(rel)
        M1, M2 = assemble(G, N, F), assemble(G, P)
        try:
            rep = search_certificate(M1, M2, budget=budget, seed=seed, window=window, trials=trials)
        except LatticeError as exc:
            res.note = str(exc)
            break
        res.tried.append((rel, rep))
        if rep.found:
            res.certificate = IsoCertificate(group_ref, rel, F, rep.matrix, (), subgroup,
                                             rep.strategy, rep.seed, R)
            return res
        if rep.strategy == "budget":
            res.note = rep.stats.get("reason", "budget exhausted")
            break
    return res
