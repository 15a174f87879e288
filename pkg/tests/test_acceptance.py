"""Acceptance criteria 1-8, one summary line each (see the terminal summary).

Heavy groups (PSL(2,8), S6) run only with ``TORUSRAT_STRETCH=1``.
"""
import math
import time
from collections import Counter

import pytest

from torusrat import classify as cl
from torusrat import fixtures as fx
from torusrat import reproduce as rp
from torusrat import stably_perm as sp
from torusrat.flabby import flabby_resolution, iterate_resolution
from torusrat.glattice import chevalley
from torusrat.groups import SESSION_GROUPS, h_candidates, named_group, subgroup_classes

from conftest import ACCEPTANCE, STRETCH
from strategies import TINY_GROUPS

pytestmark = pytest.mark.slow

_resolutions = {}
_flabby = {}
_state = {}


def record(k, passed, detail=""):
    ACCEPTANCE[k] = (passed, detail)
    mark = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
    print(f"criterion {k}: {mark} {detail}".rstrip())
    assert passed is not False, detail


def resolution(spec, label, index=None):
    key = (spec, label, index)
    if key not in _resolutions:
        G = named_group(spec)
        c = next(c for c in h_candidates(G)
                 if c.label == label and (index is None or G.order // c.order == index))
        J = chevalley(G, c.rep)
        _resolutions[key] = (G, c, J, flabby_resolution(J))
    return _resolutions[key]


def flabby_of(G, c):
    key = (G.spec, c.index)
    if key not in _flabby:
        J = chevalley(G, c.rep)
        _flabby[key] = (J, flabby_resolution(J).F)
    return _flabby[key]


def failures(checks):
    return [c.line() for c in checks if c.passed is False]


# ---------------------------------------------------------------------------

def test_criterion_1_census():
    t = time.monotonic()
    bad = []
    for spec in SESSION_GROUPS:
        G = named_group(spec)
        got = (len(subgroup_classes(G)), len(h_candidates(G)))
        if got != fx.CENSUS[spec]:
            bad.append(f"{spec} {got} expected {fx.CENSUS[spec]}")
    dt = time.monotonic() - t
    record(1, not bad and dt < 600, "; ".join(bad) or f"15 groups in {dt:.1f}s")


def test_criterion_2_invertibility():
    t = time.monotonic()
    groups = [g for g in SESSION_GROUPS if STRETCH or g not in fx.STRETCH_GROUPS]
    checks = rp.suite_session(groups, stretch=STRETCH)
    checks = [c for c in checks if c.name != "census" and c.name != "flabby-chain"]
    bad = failures(checks)
    # whole-group invertibility booleans, as opposed to the Sylow-restricted patterns
    _state["whole_group_ok"] = not failures(c for c in checks if c.name.startswith("invertible"))
    dt = time.monotonic() - t
    gated = [g for g in SESSION_GROUPS if g not in groups]
    detail = f"{sum(c.passed is True for c in checks)} checks in {dt:.0f}s"
    if gated:
        detail += f", gated: {', '.join(gated)}"
    record(2, not bad and dt < 1800, "; ".join(bad) or detail)


def test_criterion_4_possibility_and_obstruction():
    bad = []
    cases = [("sym:3", "1"), ("sym:3", "C2"), ("alt:5", "C2 x C2"), ("alt:5", "A4")]
    if STRETCH:
        cases += [("psl:2,8", "C2 x C2 x C2"), ("psl:2,8", "(C2 x C2 x C2) : C7")]
    for spec, label in cases:
        G, c, J, R = resolution(spec, label)
        vecs = sp.possibility_vectors(J, R.F, tate=True)
        for v in fx.RELATION_VECTORS[(spec, label)]:
            if not sp.in_relation_lattice(vecs, v):
                bad.append(f"{spec} {label}: {v} not in lattice")
    # non-stable verdicts: d = 2, matching the gcd of the published c_F lists
    obstructed = [("sym:5", "C2 x C2", 30), ("sym:5", "D8", None), ("sym:5", "A4", None),
                  ("sym:5", "S4", None), ("psl:2,7", "D8", None), ("psl:2,7", "S4", 7)]
    n = 0
    for spec, label, index in obstructed:
        G = named_group(spec)
        targets = [c for c in h_candidates(G) if c.label == label
                   and (index is None or G.order // c.order == index)
                   and fx.expected_verdict(spec, c.label, G.order // c.order,
                                           cl.derived_label(G, c.rep)) == fx.RETRACT]
        want = math.gcd(*fx.OBSTRUCTION_CF[(spec, label)])
        for c in targets:
            J, F = flabby_of(G, c)
            d = sp.refute_stable(sp.possibility_vectors(J, F, tate=True)).d
            n += 1
            if d != want:
                bad.append(f"{spec} {label}#{c.index}: d={d} expected {want}")
    if n != 7:
        bad.append(f"found {n} obstructed classes, expected 4 in S5 and 3 in PSL(2,7)")
    detail = f"{len(cases)} membership cases, {n} obstruction classes with d=2"
    if not STRETCH:
        detail += ", PSL(2,8) gated"
    record(4, not bad, "; ".join(bad) or detail)


def test_criterion_5_certificates():
    bad = []
    G3, G5 = named_group("sym:3"), named_group("alt:5")
    for G, spec, label in ((G3, "sym:3", "1"), (G5, "alt:5", "C2 x C2")):
        coeffs, X, det = fx.PRINTED_CERTIFICATES[(spec, label)]
        c = next(c for c in h_candidates(G) if c.label == label)
        try:
            cert = sp.certificate_from_matrix(G, spec, sp.RelationVector(coeffs), X, subgroup=c.index)
            probs = sp.certificate_problems(cert)
            if not probs and (cert.matrix.nrows(), sp.zlin.det(cert.matrix)) != (len(X), det):
                probs = ["size or determinant differs"]
        except sp.CertificateError as exc:
            probs = [str(exc)]
        bad += [f"printed {spec} {label}: {p}" for p in probs]
    checks = rp.suite_thm13(["s3-trivial", "s3-c2", "a5-v4", "a5-a4"])
    found = [c for c in checks if c.name == "certificate"]
    bad += [c.line() for c in found if not c.passed]
    detail = f"printed 8x8 and 22x22 verify; fresh: {', '.join(c.case + ' ' + c.detail for c in found)}"
    if STRETCH:
        big = rp.suite_thm13(["psl28-v8", "psl28-v8c7"], stretch=True)
        bad += failures(big)
    else:
        detail += "; PSL(2,8) ranks 158/260 gated (needs about 16 GB)"
    record(5, not bad, "; ".join(bad) or detail)


def test_criterion_6_theorem_verdicts():
    t = time.monotonic()
    checks = rp.suite_thm11(stretch=STRETCH)
    bad = failures(checks)
    ran = [c for c in checks if c.passed is not None]
    gated = [c.case for c in checks if c.passed is None]
    detail = f"{len(ran)} candidates, 0 mismatches, {time.monotonic() - t:.0f}s"
    if gated:
        detail += f", gated: {', '.join(gated)}"
    record(6, not bad, "; ".join(bad) or detail)


def test_criterion_7_property_suites():
    import test_flabby
    import test_glattice
    import test_stably_perm
    import test_zlin

    bad = []
    runs = [
        ("zlin normal forms (500)", test_zlin.test_invariant_factors_match_minor_gcds),
        ("resolution exactness (50)", test_flabby.test_resolution_exact_and_flabby),
        ("bar-resolution Tate groups", test_glattice.test_tate_groups_match_bar_complex),
    ]
    for name, fn in runs:
        try:
            fn()
        except Exception as exc:  # report and continue with the other suites
            bad.append(f"{name}: {exc!r}")
    for spec in TINY_GROUPS:
        try:
            test_glattice.test_permutation_lattices_flabby_and_coflabby(spec)
        except AssertionError as exc:
            bad.append(f"permutation lattices over {spec}: {exc!r}")
    # refute soundness and certificate soundness on the stably rational S3 cases
    for spec, label in (("sym:3", "1"), ("frob:5,4", "1"), ("frob:11,5", "C5")):
        for tate in (False, True):
            try:
                test_stably_perm.test_refute_matches_smith_projection(spec, label, tate)
            except AssertionError as exc:
                bad.append(f"refute {spec} {label}: {exc!r}")
    for label in ("1", "C2"):
        G, c, J, R = resolution("sym:3", label)
        res = sp.decide_stable(R, "sym:3", c.index)
        cert = res.certificate
        if cert is None or not sp.verify_certificate(sp.parse_certificate(sp.format_certificate(cert))):
            bad.append(f"certificate sym:3 {label} does not re-verify")
    record(7, not bad, "; ".join(bad) or "all property suites pass")


FAMILIES = ([f"cyc:{n}" for n in range(1, 31)] + [f"dih:{n}" for n in range(3, 13)]
            + ["frob:5,4", "frob:7,3", "frob:7,6", "frob:11,5"] + [f"dic:{n}" for n in range(2, 6)])


def test_criterion_8_fast_path_agreement():
    bad = []
    compared = declined = 0
    for spec in FAMILIES:
        G = named_group(spec)
        for c in h_candidates(G):
            if spec.startswith("dih") and c.label not in ("1", "C2"):
                continue
            fast = cl.fast_path(G, c.rep)
            if fast is None:
                declined += 1
                continue
            full = cl.full_classify(G, c.index, group_ref=spec, use_fast_path=False)
            compared += 1
            if full.verdict.status != fast.status:
                bad.append(f"{spec} {c.label}#{c.index}: fast {fast.status}, full "
                           f"{full.verdict.status} ({full.verdict.evidence})")
    record(8, not bad, "; ".join(bad) or f"{compared} cases agree, {declined} outside the shortcuts")


def test_criterion_3_flabby_ranks():
    """Exact where the low-rank base reproduces the reference; other ranks are reported."""
    exact, deviations, bad = [], [], []
    must_match = [("sym:3", "1"), ("sym:3", "C2"), ("alt:5", "C2 x C2"), ("alt:5", "A4")]
    if STRETCH:
        must_match += [("psl:2,8", "C2 x C2 x C2"), ("psl:2,8", "(C2 x C2 x C2) : C7")]
    for key in must_match:
        r = resolution(*key)[3].F.rank
        (exact if r == fx.FLABBY_RANKS[key] else bad).append(f"{key[0]} {key[1]} {r}")
    ours = Counter()
    for spec, label in (("sym:5", "C2 x C2"), ("sym:5", "D8"), ("sym:5", "A4"), ("sym:5", "S4"),
                        ("psl:2,7", "D8"), ("psl:2,7", "S4")):
        G = named_group(spec)
        for c in h_candidates(G):
            if c.label != label or fx.expected_verdict(
                    spec, c.label, G.order // c.order, cl.derived_label(G, c.rep)) != fx.RETRACT:
                continue
            r = flabby_of(G, c)[1].rank
            ours[(spec, label, r)] += 1
            if r != fx.FLABBY_RANKS[(spec, label)]:
                deviations.append(f"{spec} {label}#{c.index} {r} (ref {fx.FLABBY_RANKS[(spec, label)]})")
    G = named_group("gl:2,4")
    c = next(c for c in h_candidates(G) if c.label == "A4"
             and fx.expected_verdict("gl:2,4", "A4", G.order // c.order, cl.derived_label(G, c.rep)) == fx.STABLY)
    chain = iterate_resolution(chevalley(G, c.rep), depth=4)
    if chain.ranks[:2] != fx.GL24_CHAIN[:2] or not chain.collapsed:
        bad.append(f"gl:2,4 chain {chain.ranks}")
    if chain.ranks != fx.GL24_CHAIN:
        deviations.append(f"gl:2,4 chain {chain.ranks} (ref {fx.GL24_CHAIN})")
    # deviations are acceptable only while the rank-independent verdicts hold;
    # for criterion 2 that means the whole-group invertibility booleans
    others = {k: ACCEPTANCE.get(k, (None, ""))[0] for k in (4, 5, 6)}
    others[2] = _state.get("whole_group_ok")
    if deviations and not all(v is True for v in others.values()):
        bad.append(f"rank deviations while rank-independent checks fail: {others}")
    detail = "exact: " + ", ".join(exact)
    if deviations:
        detail += "; deviations: " + ", ".join(deviations)
    record(3, not bad, "; ".join(bad) + ("; " if bad else "") + detail)
