"""Built-in groups, addressed by spec strings such as ``sym:5`` or ``psl:2,8``.

The matrix groups are shipped as explicit permutation generators.  GL(2,q) and
SL(2,q) act on the nonzero row vectors of F_q^2, listed in lexicographic
order (F_4 elements encoded as bit vectors over F_2).  GL generators are
``diag(a,1)`` with ``a`` primitive and ``[[-1,1],[-1,0]]``; SL generators are
``[[1,1],[0,1]]`` and ``[[0,1],[-1,0]]``.  PSL(2,7) and PSL(2,8) use the
degree-8 and degree-9 generators from the reference computation.
"""
from __future__ import annotations

from pathlib import Path

from .perm import FiniteGroup, GroupError, perm_from_cycles, perm_from_images, parse_group_text

_TABLES: dict[str, tuple[str, int, list[list[int]]]] = {
    "gl:2,3": ("GL(2,3)", 8, [
        [1, 2, 6, 7, 8, 3, 4, 5],
        [6, 3, 7, 4, 1, 5, 2, 8]]),
    "sl:2,3": ("SL(2,3)", 8, [
        [1, 2, 4, 5, 3, 8, 6, 7],
        [6, 3, 1, 7, 4, 2, 8, 5]]),
    "gl:2,4": ("GL(2,4)", 15, [
        [1, 2, 3, 8, 9, 10, 11, 12, 13, 14, 15, 4, 5, 6, 7],
        [4, 8, 12, 5, 1, 13, 9, 10, 14, 2, 6, 15, 11, 7, 3]]),
    "gl:2,5": ("GL(2,5)", 24, [
        [1, 2, 3, 4, 10, 11, 12, 13, 14, 20, 21, 22, 23, 24, 5, 6, 7, 8, 9, 15, 16, 17, 18, 19],
        [20, 15, 10, 5, 21, 16, 11, 6, 1, 17, 12, 7, 2, 22, 13, 8, 3, 23, 18, 9, 4, 24, 19, 14]]),
    "sl:2,5": ("SL(2,5)", 24, [
        [1, 2, 3, 4, 6, 7, 8, 9, 5, 12, 13, 14, 10, 11, 18, 19, 15, 16, 17, 24, 20, 21, 22, 23],
        [20, 15, 10, 5, 1, 21, 16, 11, 6, 2, 22, 17, 12, 7, 3, 23, 18, 13, 8, 4, 24, 19, 14, 9]]),
    "sl:2,7": ("SL(2,7)", 48, [
        [1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13, 7, 16, 17, 18, 19, 20, 14, 15, 24, 25, 26, 27,
         21, 22, 23, 32, 33, 34, 28, 29, 30, 31, 40, 41, 35, 36, 37, 38, 39, 48, 42, 43, 44, 45, 46, 47],
        [42, 35, 28, 21, 14, 7, 1, 43, 36, 29, 22, 15, 8, 2, 44, 37, 30, 23, 16, 9, 3, 45, 38, 31,
         24, 17, 10, 4, 46, 39, 32, 25, 18, 11, 5, 47, 40, 33, 26, 19, 12, 6, 48, 41, 34, 27, 20, 13]]),
}

_CYCLE_TABLES: dict[str, tuple[str, int, list[str]]] = {
    "psl:2,7": ("PSL(2,7)", 8, ["(3,7,5)(4,8,6)", "(1,2,6)(3,4,8)"]),
    "psl:2,8": ("PSL(2,8)", 9, ["(3,8,6,4,9,7,5)", "(1,2,3)(4,7,5)(6,9,8)"]),
}

# small isomorphisms, so every PSL/PGL/SL/GL(2,q) spec in range resolves
_ALIASES = {
    "psl:2,2": "sym:3", "pgl:2,2": "sym:3", "gl:2,2": "sym:3", "sl:2,2": "sym:3",
    "psl:2,3": "alt:4", "pgl:2,3": "sym:4",
    "psl:2,4": "alt:5", "psl:2,5": "alt:5", "pgl:2,4": "alt:5", "sl:2,4": "alt:5",
    "pgl:2,5": "sym:5", "psl:2,9": "alt:6", "psl:3,2": "psl:2,7",
    "sl:2,8": "psl:2,8", "pgl:2,8": "psl:2,8",
}

_NAMES = {"sym:3": "S3", "alt:4": "A4", "sym:4": "S4", "alt:5": "A5", "sym:5": "S5",
          "alt:6": "A6", "sym:6": "S6"}


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    gens = []
    if n >= 2:
        gens = [tuple(list(range(1, n)) + [0]), perm_from_cycles("(1,2)", n)]
    return FiniteGroup(n, gens, name=_NAMES.get(f"sym:{n}", f"S{n}"), spec=f"sym:{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    gens = []
    if n >= 3:
        top = range(1, n + 1) if n % 2 else range(2, n + 1)
        gens = [perm_from_cycles("(" + ",".join(map(str, top)) + ")", n)]
        gens.append(perm_from_cycles("(1,2,3)", n) if n % 2 == 0 else perm_from_cycles(f"({n - 2},{n - 1},{n})", n))
    return FiniteGroup(n, gens, name=_NAMES.get(f"alt:{n}", f"A{n}"), spec=f"alt:{n}")


def cyclic(n: int) -> FiniteGroup:
    gens = [tuple(list(range(1, n)) + [0])] if n > 1 else []
    return FiniteGroup(max(n, 1), gens, name=f"C{n}", spec=f"cyc:{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` acting on ``n`` points (``n >= 3``)."""
    if n < 3:
        raise GroupError("dihedral degree must be at least 3")
    rot = tuple(list(range(1, n)) + [0])
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, [rot, ref], name="S3" if n == 3 else f"D{2 * n}", spec=f"dih:{n}")


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group Q_{4n} = <a, b | a^{2n}, b^2 = a^n, b^-1 a b = a^-1>, regular action."""
    if n < 2:
        raise GroupError("dicyclic parameter must be at least 2")
    m = 2 * n
    # element a^i b^j encoded as i + m*j
    def mul(x, y):
        i, j = x % m, x // m
        k, l = y % m, y // m
        if j == 0:
            return ((i + k) % m) + m * l
        # a^i b a^k b^l = a^(i-k) b^(1+l); b^2 = a^n
        if l == 0:
            return ((i - k) % m) + m
        return ((i - k + n) % m)
    a, b = 1, m
    gens = [tuple(mul(x, a) for x in range(2 * m)), tuple(mul(x, b) for x in range(2 * m))]
    return FiniteGroup(2 * m, gens, name=f"Q{4 * n}", spec=f"dic:{n}")


def frobenius(p: int, l: int) -> FiniteGroup:
    """C_p : C_l acting on F_p by affine maps ``x -> u x + c`` (``l | p-1``)."""
    if (p - 1) % l:
        raise GroupError("l must divide p-1")
    g = next(x for x in range(1, p) if all(pow(x, (p - 1) // q, p) != 1 for q in _primes(p - 1)))
    u = pow(g, (p - 1) // l, p)
    trans = tuple((x + 1) % p for x in range(p))
    mult = tuple((u * x) % p for x in range(p))
    gens = [trans] + ([mult] if l > 1 else [])
    return FiniteGroup(p, gens, name=f"F{p * l}", spec=f"frob:{p},{l}")


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


SPEC_HELP = ("sym:n, alt:n, cyc:n, dih:n (order 2n), dic:n (order 4n), frob:p,l, "
             "gl:2,q, sl:2,q, psl:2,q, pgl:2,q for the tabulated q, or a group file path")


def named_group(spec: str) -> FiniteGroup:
    """Resolve a spec string (or a path to a group file)."""
    key = spec.strip().lower().replace(" ", "")
    if key in _ALIASES:
        G = named_group(_ALIASES[key])
        G.spec = key
        return G
    if key in _TABLES:
        name, deg, gens = _TABLES[key]
        return FiniteGroup(deg, [perm_from_images(g, deg) for g in gens], name=name, spec=key)
    if key in _CYCLE_TABLES:
        name, deg, gens = _CYCLE_TABLES[key]
        return FiniteGroup(deg, [perm_from_cycles(g, deg) for g in gens], name=name, spec=key)
    kind, _, arg = key.partition(":")
    try:
        nums = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        nums = None
    if nums:
        if kind == "sym" and len(nums) == 1:
            return symmetric(nums[0])
        if kind == "alt" and len(nums) == 1:
            return alternating(nums[0])
        if kind == "cyc" and len(nums) == 1:
            return cyclic(nums[0])
        if kind == "dih" and len(nums) == 1:
            return dihedral(nums[0])
        if kind == "dic" and len(nums) == 1:
            return dicyclic(nums[0])
        if kind == "frob" and len(nums) == 2:
            return frobenius(*nums)
    path = Path(spec)
    if path.is_file():
        return parse_group_text(path.read_text(), name=path.stem)
    raise GroupError(f"unknown group spec {spec!r}; expected {SPEC_HELP}")


# the groups of the reference session, in its order
SESSION_GROUPS = ["sym:3", "alt:4", "sym:4", "alt:5", "sym:5", "alt:6", "sym:6", "gl:2,3",
                  "gl:2,4", "gl:2,5", "sl:2,3", "sl:2,5", "sl:2,7", "psl:2,7", "psl:2,8"]
