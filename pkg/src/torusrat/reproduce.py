"""Reference-session reproduction suites.

Each suite yields ``Check`` rows (``passed`` is ``None`` when gated or unreferenced) in
canonical order: session group order, then class index.
"""
from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import classify as cl
from . import fixtures as fx
from . import stably_perm as sp
from .flabby import flabby_resolution, is_invertible_class, iterate_resolution, sylow_invertible
from .glattice import chevalley, hom_basis
from .groups import (SESSION_GROUPS, FiniteGroup, h_candidates, named_group, normalizer,
                     subgroup_classes, sylow)

SUITES = ("thm1.1", "thm1.3", "conj1.4-d1", "conj1.4-d2", "conj1.4-d3", "session")

# thm1.3 cases: name -> (group, label, stretch-gated)
THM13_CASES = {
    "s3-trivial": ("sym:3", "1", False),
    "s3-c2": ("sym:3", "C2", False),
    "a5-v4": ("alt:5", "C2 x C2", False),
    "a5-a4": ("alt:5", "A4", False),
    "psl28-v8": ("psl:2,8", "C2 x C2 x C2", True),
    "psl28-v8c7": ("psl:2,8", "(C2 x C2 x C2) : C7", True),
}

CONJ_GROUPS = {1: "sym:3", 2: "alt:5", 3: "psl:2,8"}


@dataclass
class Check:
    suite: str
    case: str
    name: str
    passed: bool | None
    detail: str = ""

    def line(self) -> str:
        mark = {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]
        return f"{mark:5s} {self.suite} {self.case} {self.name} {self.detail}".rstrip()


def workers() -> int:
    try:
        return max(1, int(os.environ.get("TORUSRAT_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    n = min(workers(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(n) as ex:
        return list(ex.map(fn, items))


def _find(G: FiniteGroup, label: str):
    return next(c for c in h_candidates(G) if c.label == label)


def _gated(groups, stretch):
    return [g for g in groups if stretch or g not in fx.STRETCH_GROUPS]


# ---------------------------------------------------------------------------
# thm1.1: verdict of every candidate
# ---------------------------------------------------------------------------

def _classify_group(spec: str) -> list[Check]:
    G = named_group(spec)
    out = []
    for c in h_candidates(G):
        r = cl.full_classify(G, c.index, group_ref=spec)
        want = fx.expected_verdict(spec, r.label, r.index, r.derived_label)
        out.append(Check("thm1.1", f"{spec}#{c.index}", f"{r.label}[{r.index}]",
                         r.verdict.status == want,
                         f"{r.verdict.status} ({r.verdict.evidence}) expected {want}"))
    return out


def suite_thm11(groups=None, stretch=False) -> list[Check]:
    groups = groups or SESSION_GROUPS
    run = _gated(groups, stretch)
    results = dict(zip(run, _pmap(_classify_group, run)))
    out = []
    for g in groups:
        out += results[g] if g in results else [Check("thm1.1", g, "all", None, "needs --stretch")]
    return out


# ---------------------------------------------------------------------------
# thm1.3: ranks, possibility vectors, certificates
# ---------------------------------------------------------------------------

def _thm13_case(name: str, seed: int = 0) -> list[Check]:
    spec, label, _ = THM13_CASES[name]
    key = (spec, label)
    G = named_group(spec)
    c = _find(G, label)
    J = chevalley(G, c.rep)
    out = []
    R = flabby_resolution(J)
    want = fx.FLABBY_RANKS[key]
    out.append(Check("thm1.3", name, "flabby-rank", R.F.rank == want, f"{R.F.rank} expected {want}"))
    vectors = sp.possibility_vectors(J, R.F, tate=True)
    for v in fx.RELATION_VECTORS[key]:
        out.append(Check("thm1.3", name, f"relation {v}", sp.in_relation_lattice(vectors, v)))
    t = time.monotonic()
    pad = ()
    if key in fx.PADDING:
        pad = (next(x.index for x in subgroup_classes(G) if x.label == fx.PADDING[key]),)
    rel = sp.RelationVector(tuple(fx.RELATION_VECTORS[key][-1]))
    N, P = sp.split_relation(rel, pad)
    M1, M2 = sp.assemble(G, N, R.F), sp.assemble(G, P)
    rep = sp.search_certificate(M1, M2, seed=seed)
    ok = rep.found
    if ok:
        cert = sp.IsoCertificate(spec, rel, R.F, rep.matrix, pad, c.index, rep.strategy, rep.seed, R)
        ok = sp.verify_certificate(sp.parse_certificate(sp.format_certificate(cert)))
    out.append(Check("thm1.3", name, "certificate", ok,
                     f"rank {M1.rank} {rep.strategy} {time.monotonic() - t:.1f}s"))
    if key in fx.PRINTED_CERTIFICATES:
        coeffs, X, det = fx.PRINTED_CERTIFICATES[key]
        rel = sp.RelationVector(coeffs)
        if key in fx.TRANSPORTABLE:
            try:
                cert = sp.certificate_from_matrix(G, spec, rel, X, subgroup=c.index)
                problems = sp.certificate_problems(cert)
            except sp.CertificateError as exc:
                problems = [str(exc)]
            out.append(Check("thm1.3", name, "printed-matrix", not problems, "; ".join(problems)))
        else:
            from . import zlin
            d = zlin.det(zlin.mat(X))
            out.append(Check("thm1.3", name, "printed-matrix-det", d == det, f"det {d}"))
    if key in fx.BLOCK_SHAPES and not THM13_CASES[name][2]:
        bp = hom_basis(M1, M2)
        blocks = sp.row_blocks(bp)
        got = ([len(b) for b in blocks.bp_blocks], [len(r) for r in blocks.row_blocks])
        out.append(Check("thm1.3", name, "row-blocks", got == fx.BLOCK_SHAPES[key], str(got)))
    return out


def suite_thm13(cases=None, stretch=False) -> list[Check]:
    cases = cases or list(THM13_CASES)
    out = []
    for name in cases:
        if name not in THM13_CASES:
            raise ValueError(f"unknown case {name!r}; known: {', '.join(THM13_CASES)}")
        if THM13_CASES[name][2] and not stretch:
            out.append(Check("thm1.3", name, "all", None, "needs --stretch"))
            continue
        out += _thm13_case(name)
    return out


# ---------------------------------------------------------------------------
# conjecture cases: PSL(2, 2^d) with Sy_2 <= H <= N(Sy_2)
# ---------------------------------------------------------------------------

def borel_range(G: FiniteGroup) -> list[int]:
    """Classes with a conjugate between a 2-Sylow subgroup and its normalizer."""
    P = sylow(G, 2)
    N = normalizer(P)
    out = []
    for c in subgroup_classes(G):
        if any(m & P.mask == P.mask and m & N.mask == m for m in c.conjugates):
            out.append(c.index)
    return out


def suite_conj(d: int, stretch=False) -> list[Check]:
    spec = CONJ_GROUPS[d]
    suite = f"conj1.4-d{d}"
    if spec in fx.STRETCH_GROUPS and not stretch:
        return [Check(suite, spec, "all", None, "needs --stretch")]
    G = named_group(spec)
    tab = subgroup_classes(G)
    out = []
    for i in borel_range(G):
        r = cl.full_classify(G, i, group_ref=spec)
        out.append(Check(suite, f"{spec}#{i}", f"{tab[i].label}[{r.index}]",
                         r.verdict.status == cl.STABLY, f"{r.verdict.status} ({r.verdict.evidence})"))
    return out


# ---------------------------------------------------------------------------
# session: census and invertibility patterns
# ---------------------------------------------------------------------------

def _session_group(args) -> list[Check]:
    spec, stretch, sylow_only = args
    G = named_group(spec)
    tab = subgroup_classes(G)
    cands = h_candidates(G)
    want = fx.CENSUS[spec]
    out = [Check("session", spec, "census", (len(tab), len(cands)) == want,
                 f"{len(tab)}/{len(cands)} expected {want[0]}/{want[1]}")]
    if spec == "sym:6" and not stretch:
        return out + [Check("session", spec, "invertibility", None, "needs --stretch")]
    if spec in fx.SYLOW2_INVERTIBLE or sylow_only:
        hits = []
        for c in cands:
            J = chevalley(G, c.rep)
            if sylow_invertible(J, 2, chevalley_of=(G, c.rep)):
                hits.append(c)
        got = Counter(c.label for c in hits)
        if spec in fx.SYLOW2_INVERTIBLE:
            out.append(Check("session", spec, "sylow2-invertible", got == fx.SYLOW2_INVERTIBLE[spec],
                             str(sorted(got.elements()))))
        for c in hits if spec in fx.SYLOW3_AFTER_2 else []:
            ref = fx.SYLOW3_AFTER_2[spec]
            want = ref.get((c.label, cl.derived_label(G, c.rep)), ref.get(c.label))
            J = chevalley(G, c.rep)
            ok3 = sylow_invertible(J, 3, chevalley_of=(G, c.rep))
            out.append(Check("session", spec, f"sylow3 {c.label}#{c.index}",
                             None if want is None else ok3 == want,
                             str(ok3) if want is not None else f"{ok3} (no reference value)"))
        if spec == "gl:2,4":
            c = next(c for c in hits if c.label == "A4" and cl.derived_label(G, c.rep) == "A4")
            inv = is_invertible_class(chevalley(G, c.rep), chevalley_of=(G, c.rep))
            out.append(Check("session", spec, f"invertible {c.label}#{c.index}", inv.invertible is True))
            chain = iterate_resolution(chevalley(G, c.rep), depth=4)
            out.append(Check("session", spec, "flabby-chain", chain.collapsed,
                             f"{chain.ranks} reference {fx.GL24_CHAIN}"))
    if spec in fx.INVERTIBLE and not sylow_only:
        bad = []
        for c in cands:
            J = chevalley(G, c.rep)
            got = is_invertible_class(J, chevalley_of=(G, c.rep)).invertible
            expect = fx.expected_invertible(spec, c.label, G.order // c.order, cl.derived_label(G, c.rep))
            if got != expect:
                bad.append(f"{c.label}#{c.index}={got}")
        out.append(Check("session", spec, "invertible", not bad, ", ".join(bad)))
    return out


def suite_session(groups=None, stretch=False, sylow_only=False) -> list[Check]:
    groups = groups or SESSION_GROUPS
    return [x for part in _pmap(_session_group, [(g, stretch, sylow_only) for g in groups]) for x in part]


def run_suite(name: str, groups=None, cases=None, stretch=False, sylow_only=False) -> list[Check]:
    if name == "thm1.1":
        return suite_thm11(groups, stretch)
    if name == "thm1.3":
        return suite_thm13(cases, stretch)
    if name.startswith("conj1.4-d") and name[-1] in "123":
        return suite_conj(int(name[-1]), stretch)
    if name == "session":
        return suite_session(groups, stretch, sylow_only)
    raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
