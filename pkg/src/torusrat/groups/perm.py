"""Permutation groups with full element enumeration.

Elements are stored as 0-based image tuples and indexed in lexicographic
order of those tuples.  Composition is left to right, as in GAP:
``(g*h)(i) = h(g(i))``.  At the file and CLI boundary letters are 1-based.
"""
from __future__ import annotations

import re
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Perm = tuple[int, ...]

ORDER_GUARD = 100_000
TABLE_LIMIT = 5_000


class GroupError(ValueError):
    pass


class ResourceError(RuntimeError):
    """A desk-scale guard (order, rank, time) was exceeded."""


def perm_mul(a: Perm, b: Perm) -> Perm:
    """Product ``a*b``: apply ``a`` first, then ``b``."""
    return tuple(b[x] for x in a)


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_from_images(images: Sequence[int], degree: int | None = None) -> Perm:
    """Convert 1-based images to an internal 0-based permutation."""
    p = tuple(int(x) - 1 for x in images)
    n = len(p) if degree is None else degree
    if len(p) != n or sorted(p) != list(range(n)):
        raise GroupError(f"not a permutation of 1..{n}: {list(images)}")
    return p


def perm_from_cycles(text: str, degree: int) -> Perm:
    """Parse GAP-style cycle notation such as ``(1,2,3)(4,5)``."""
    img = list(range(degree))
    text = text.strip()
    if text in ("", "()"):
        return tuple(img)
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(x) - 1 for x in re.split(r"[,\s]+", cyc.strip()) if x]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not (0 <= a < degree):
                raise GroupError(f"letter {a + 1} out of range")
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise GroupError(f"bad cycle notation {text!r}")
    return tuple(img)


def perm_to_cycles(p: Perm) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + ",".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "()"


class FiniteGroup:
    """A permutation group given by generators, enumerated on demand."""

    def __init__(self, degree: int, generators: Iterable[Perm], name: str | None = None,
                 spec: str | None = None):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise GroupError("generator is not a permutation of the right degree")
            gens.append(g)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.name = name
        self.spec = spec
        self._cache: dict = {}

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"

    @property
    def label(self) -> str:
        return self.name or self.spec or f"<{len(self.generators)} gens on {self.degree}>"

    # -- enumeration -------------------------------------------------------

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        e = tuple(range(self.degree))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for s in self.generators:
                    y = perm_mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > ORDER_GUARD:
                            raise ResourceError(f"group order exceeds guard {ORDER_GUARD}")
            frontier = nxt
        return tuple(sorted(seen))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @property
    def identity(self) -> int:
        return 0  # the identity tuple sorts first

    @cached_property
    def gen_indices(self) -> tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    @cached_property
    def _array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.degree)

    def _lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        n = self.degree
        if n ** n < 2 ** 62:
            w = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
            keys = self._array @ w  # sorted because elements are lexicographic
            q = rows @ w
            return np.searchsorted(keys, q)
        return np.array([self.index[tuple(r)] for r in rows.tolist()], dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table ``table[i, j] = index(e_i * e_j)``."""
        N = self.order
        if N > TABLE_LIMIT:
            raise ResourceError("multiplication table too large")
        E = self._array
        out = np.empty((N, N), dtype=np.int32)
        for i in range(N):
            # e_i * e_j has images e_j[e_i[k]]
            out[i] = self._lookup_rows(E[:, E[i]])
        return out

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @cached_property
    def inverses(self) -> np.ndarray:
        T = self.table
        return np.argmin(T, axis=1).astype(np.int32)  # identity has index 0

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def conj(self, x: int, t: int) -> int:
        """``t^-1 x t``."""
        T = self.table
        return int(T[T[self.inverses[t], x], t])

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        T = self.table
        out = []
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = int(T[x, i])
                k += 1
            out.append(k)
        return tuple(out)

    # -- words ---------------------------------------------------------------

    @cached_property
    def words(self) -> tuple[tuple[int, int], ...]:
        """BFS tree over generators: ``words[x] = (parent, generator position)``.

        ``x = parent * generators[pos]``; the identity maps to ``(-1, -1)``.
        """
        T = self.table
        gi = self.gen_indices
        parent = [(-2, -2)] * self.order
        parent[0] = (-1, -1)
        dq = deque([0])
        while dq:
            x = dq.popleft()
            for pos, s in enumerate(gi):
                y = int(T[x, s])
                if parent[y][0] == -2:
                    parent[y] = (x, pos)
                    dq.append(y)
        return tuple(parent)

    def word(self, x: int) -> list[int]:
        """Generator positions whose left-to-right product is element ``x``."""
        out = []
        w = self.words
        while x != 0:
            p, pos = w[x]
            out.append(pos)
            x = p
        out.reverse()
        return out

    # -- conjugacy -----------------------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Element classes as sorted index tuples, ordered by their minimum."""
        seen = np.zeros(self.order, dtype=bool)
        out = []
        for x in range(self.order):
            if seen[x]:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for s in self.gen_indices:
                        z = self.conj(y, s)
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            for y in orbit:
                seen[y] = True
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * self.order
        for c, cl in enumerate(self.conjugacy_classes):
            for x in cl:
                out[x] = c
        return tuple(out)

    # -- subgroups -------------------------------------------------------------

    def closure(self, gens: Iterable[int], start: int = 0) -> int:
        """Bitmask of the subgroup generated by element indices ``gens``.

        ``start`` may hold a bitmask of a subgroup of ``<gens>`` to seed the search.
        """
        gens = [g for g in gens if g != 0]
        T = self.table
        if start:
            elems = mask_to_list(start)
        else:
            elems = [0]
        mask = start | 1
        frontier = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                row = T[x]
                for s in gens:
                    y = int(row[s])
                    if not (mask >> y) & 1:
                        mask |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return mask

    def subgroup(self, gens: Iterable[int]) -> "Subgroup":
        from .subgroups import Subgroup
        gens = tuple(gens)
        return Subgroup(self, self.closure(gens), gens)

    @property
    def whole(self) -> "Subgroup":
        from .subgroups import Subgroup
        return Subgroup(self, (1 << self.order) - 1, self.gen_indices)

    @property
    def trivial(self) -> "Subgroup":
        from .subgroups import Subgroup
        return Subgroup(self, 1, ())

    def conj_mask(self, mask: int, t: int) -> int:
        """Bitmask of ``t^-1 H t``."""
        T = self.table
        ti = int(self.inverses[t])
        out = 0
        for x in mask_to_list(mask):
            out |= 1 << int(T[T[ti, x], t])
        return out

    def normalizes(self, t: int, mask: int) -> bool:
        return self.conj_mask(mask, t) == mask


def mask_to_list(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        low = mask & -mask
        b = low.bit_length() - 1
        out.append(b)
        mask ^= low
    return out


def list_to_mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << int(x)
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def parse_group_text(text: str, name: str | None = None) -> FiniteGroup:
    """Parse the group file format: ``degree n`` then one generator per line."""
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines:
        raise GroupError("empty group file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree":
        raise GroupError(f"expected 'degree n', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise GroupError("degree is not an integer") from exc
    if n < 1:
        raise GroupError("degree must be positive")
    gens = []
    for l in lines[1:]:
        if l.startswith("("):
            gens.append(perm_from_cycles(l, n))
            continue
        try:
            imgs = [int(x) for x in l.split()]
        except ValueError as exc:
            raise GroupError(f"bad generator line {l!r}") from exc
        gens.append(perm_from_images(imgs, n))
    return FiniteGroup(n, gens, name=name)


def format_group_text(G: FiniteGroup) -> str:
    lines = [f"degree {G.degree}"]
    for g in G.generators:
        lines.append(" ".join(str(x + 1) for x in g))
    return "\n".join(lines) + "\n"
