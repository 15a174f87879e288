"""Verdicts for norm-one tori: group-theoretic shortcuts, then the lattice pipeline.

Status meanings:

* ``stably_rational``: ``[J_{G/H}]^fl = 0``, witnessed by a certificate or a
  collapsing chain of flabby resolutions;
* ``retract_not_stably``: the flabby class is invertible and the ``c_F`` gcd
  of the possibility lattice is not 1;
* ``not_retract``: some Sylow restriction (or ``G`` itself) has a
  non-invertible flabby class;
* ``retract_stable_unknown``: invertible, but neither a proof nor a refutation
  of stable rationality was found within budget;
* ``indeterminate``: the invertibility test itself ran out of budget.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import stably_perm as sp
from .flabby import Budget, BudgetExceeded, flabby_resolution, is_invertible_class, iterate_resolution
from .glattice import chevalley
from .groups import FiniteGroup, Subgroup, derived_subgroup, describe, subgroup_classes
from .groups.structure import (all_sylow_cyclic, galois_stable_shape, is_nilpotent,
                               nongalois_stable_shape)

STABLY = "stably_rational"
RETRACT_NOT_STABLY = "retract_not_stably"
NOT_RETRACT = "not_retract"
UNKNOWN = "retract_stable_unknown"
INDETERMINATE = "indeterminate"
STATUSES = (STABLY, RETRACT_NOT_STABLY, NOT_RETRACT, UNKNOWN, INDETERMINATE)

EVIDENCE_KINDS = ("theorem", "non_invertible", "obstruction", "certificate", "collapse", "budget")

# shortcut theorem ids
GALOIS_NONCYCLIC_SYLOW = "galois-noncyclic-sylow"
GALOIS_METACYCLIC = "galois-metacyclic"
GALOIS_CYCLIC_SYLOW = "galois-cyclic-sylow"
NONGALOIS_NILPOTENT = "nongalois-nilpotent"
NONGALOIS_DIHEDRAL = "nongalois-dihedral"
NONGALOIS_CYCLIC_SYLOW = "nongalois-cyclic-sylow"


@dataclass
class Evidence:
    kind: str
    ref: str
    data: dict = field(default_factory=dict)

    def __str__(self):
        return f"{self.kind}:{self.ref}"


@dataclass
class Verdict:
    status: str
    evidence: Evidence

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.evidence.kind not in EVIDENCE_KINDS:
            raise ValueError(f"unknown evidence kind {self.evidence.kind!r}")


@dataclass
class Budgets:
    seconds: float | None = None       # wall clock per case
    max_rank: int | None = None
    full_rank_limit: int | None = None  # skip the whole-group splitting test above this flabby rank
    sylow_only: bool = False
    collapse_depth: int = 4
    relations: int = 3
    trials: int = sp.DEFAULT_RANDOM_TRIALS
    seed: int = 0
    want_certificate: bool = False

    def fresh(self) -> Budget:
        return Budget(self.seconds, self.max_rank)


@dataclass
class CaseReport:
    group: str
    subgroup: int            # class index in canonical order
    label: str
    derived_label: str       # structure of H meet D(G)
    order: int
    index: int
    verdict: Verdict
    timings: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    certificate: sp.IsoCertificate | None = None

    def record(self, timings: bool = False) -> dict:
        """Machine-readable summary; timings are left out unless asked for."""
        out = {"group": self.group, "class": self.subgroup, "label": self.label,
               "derived": self.derived_label, "order": self.order, "index": self.index,
               "status": self.verdict.status, "evidence": self.verdict.evidence.kind,
               "ref": self.verdict.evidence.ref}
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out


def derived_label(G: FiniteGroup, H: Subgroup) -> str:
    D = derived_subgroup(G.whole)
    return describe(Subgroup(G, D.mask & H.mask))


# ---------------------------------------------------------------------------
# group-theoretic shortcuts
# ---------------------------------------------------------------------------

def fast_path(G: FiniteGroup, H: Subgroup) -> Verdict | None:
    """Verdict from the structure of ``(G, H)`` alone, or ``None``."""
    if H.order == 1:
        if not all_sylow_cyclic(G):
            return Verdict(NOT_RETRACT, Evidence("theorem", GALOIS_NONCYCLIC_SYLOW))
        if galois_stable_shape(G):
            return Verdict(STABLY, Evidence("theorem", GALOIS_METACYCLIC))
        return Verdict(RETRACT_NOT_STABLY, Evidence("theorem", GALOIS_CYCLIC_SYLOW))
    if is_nilpotent(G):
        return Verdict(NOT_RETRACT, Evidence("theorem", NONGALOIS_NILPOTENT))
    if all_sylow_cyclic(G):
        if nongalois_stable_shape(G, H):
            return Verdict(STABLY, Evidence("theorem", NONGALOIS_DIHEDRAL))
        return Verdict(RETRACT_NOT_STABLY, Evidence("theorem", NONGALOIS_CYCLIC_SYLOW))
    return None


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------

def _stable_part(G, H, J, group_ref, cls, budgets, budget, timings, stats):
    """Invertible case: refute, then collapse, then certificate search."""
    t = time.monotonic()
    R = flabby_resolution(J, budget=budget)
    stats["flabby_rank"] = R.F.rank
    vectors = sp.possibility_vectors(J, R.F)
    obs = sp.refute_stable(vectors)
    note = "characters"
    if not obs.refuted:
        vectors = sp.possibility_vectors(J, R.F, tate=True)
        obs = sp.refute_stable(vectors)
        note = "characters+tate"
    timings["refute"] = time.monotonic() - t
    stats["d"] = obs.d
    if obs.refuted:
        return Verdict(RETRACT_NOT_STABLY, Evidence("obstruction", f"d={obs.d}",
                                                    {"constraints": note})), None

    t = time.monotonic()
    chain = iterate_resolution(J, depth=budgets.collapse_depth, budget=budget)
    timings["collapse"] = time.monotonic() - t
    stats["chain"] = chain.ranks
    collapse = None
    if chain.collapsed:
        collapse = Verdict(STABLY, Evidence("collapse", "->".join(str(r) for r in chain.ranks),
                                            {"strategy": chain.strategy}))
        if not budgets.want_certificate:
            return collapse, None

    t = time.monotonic()
    res = sp.decide_stable(R, group_ref, cls, budget=budget, seed=budgets.seed,
                           relations=budgets.relations, trials=budgets.trials)
    timings["certificate"] = time.monotonic() - t
    stats["relations_tried"] = [str(rel) for rel, _ in res.tried]
    if res.certificate is not None:
        ref = f"{res.certificate.relation} via {res.certificate.strategy}"
        return Verdict(STABLY, Evidence("certificate", ref)), res.certificate
    if collapse is not None:
        return collapse, None
    return Verdict(UNKNOWN, Evidence("budget", res.note or "no certificate found")), None


def full_classify(G: FiniteGroup, H: Subgroup | int, budgets: Budgets | None = None,
                  group_ref: str | None = None, use_fast_path: bool = True) -> CaseReport:
    """Classify the torus for ``(G, H)``; ``H`` may be a canonical class index."""
    budgets = budgets or Budgets()
    tab = subgroup_classes(G)
    if isinstance(H, int):
        cls = H
        H = tab[cls].rep
    else:
        cls = tab.class_of(H)
    group_ref = group_ref or G.spec or G.label
    report = CaseReport(group_ref, cls, tab[cls].label, derived_label(G, H), H.order,
                        G.order // H.order, Verdict(INDETERMINATE, Evidence("budget", "not run")))
    timings, stats = report.timings, report.stats
    start = time.monotonic()
    if use_fast_path:
        v = fast_path(G, H)
        if v is not None:
            report.verdict = v
            timings["total"] = time.monotonic() - start
            return report

    budget = budgets.fresh()
    invertible = None
    try:
        t = time.monotonic()
        J = chevalley(G, H)
        inv = is_invertible_class(J, budget, sylow_only=budgets.sylow_only, chevalley_of=(G, H),
                                  full_rank_limit=budgets.full_rank_limit)
        timings["invertibility"] = time.monotonic() - t
        stats["sylow"] = dict(inv.sylow)
        invertible = inv.invertible
        if invertible is False:
            p = inv.witness[0]
            ref = f"sylow-{p}" if p else "whole-group"
            report.verdict = Verdict(NOT_RETRACT, Evidence("non_invertible", ref))
        elif invertible is None:
            report.verdict = Verdict(INDETERMINATE, Evidence("budget", inv.note or "budget exhausted"))
        else:
            report.verdict, report.certificate = _stable_part(G, H, J, group_ref, cls, budgets,
                                                              budget, timings, stats)
    except BudgetExceeded as exc:
        status = UNKNOWN if invertible else INDETERMINATE
        report.verdict = Verdict(status, Evidence("budget", str(exc)))
    timings["total"] = time.monotonic() - start
    return report


def classify_group(G: FiniteGroup, budgets: Budgets | None = None, group_ref: str | None = None,
                   use_fast_path: bool = True) -> list[CaseReport]:
    from .groups import h_candidates
    return [full_classify(G, c.index, budgets, group_ref, use_fast_path) for c in h_candidates(G)]


def format_table(reports: list[CaseReport]) -> str:
    rows = [("class", "H", "H^D(G)", "|H|", "[G:H]", "status", "evidence")]
    for r in reports:
        rows.append((str(r.subgroup), r.label, r.derived_label, str(r.order), str(r.index),
                     r.verdict.status, str(r.verdict.evidence)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows)
