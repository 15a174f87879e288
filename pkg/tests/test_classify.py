import pytest

from torusrat import classify as cl
from torusrat.groups import h_candidates, named_group, subgroup_classes


def cls_of(G, label, index=None):
    return next(c for c in h_candidates(G)
                if c.label == label and (index is None or G.order // c.order == index))


@pytest.mark.parametrize("spec,label,status,ref", [
    ("cyc:12", "1", cl.STABLY, cl.GALOIS_METACYCLIC),
    ("dih:5", "1", cl.STABLY, cl.GALOIS_METACYCLIC),
    ("dih:4", "1", cl.NOT_RETRACT, cl.GALOIS_NONCYCLIC_SYLOW),
    ("frob:7,3", "1", cl.RETRACT_NOT_STABLY, cl.GALOIS_CYCLIC_SYLOW),
    ("dih:4", "C2", cl.NOT_RETRACT, cl.NONGALOIS_NILPOTENT),
    ("dih:5", "C2", cl.STABLY, cl.NONGALOIS_DIHEDRAL),
    ("frob:5,4", "C4", cl.RETRACT_NOT_STABLY, cl.NONGALOIS_CYCLIC_SYLOW),
])
def test_fast_path(spec, label, status, ref):
    G = named_group(spec)
    v = cl.fast_path(G, cls_of(G, label).rep)
    assert v.status == status and v.evidence.ref == ref and v.evidence.kind == "theorem"


def test_fast_path_declines_nonsolvable():
    G = named_group("alt:5")
    assert all(cl.fast_path(G, c.rep) is None for c in h_candidates(G) if c.order > 1)


@pytest.mark.parametrize("spec,label", [("dih:5", "1"), ("dih:5", "C2"), ("frob:5,4", "C2"),
                                        ("dic:2", "1"), ("cyc:8", "1")])
def test_fast_path_agrees_with_pipeline(spec, label):
    G = named_group(spec)
    c = cls_of(G, label)
    fast = cl.full_classify(G, c.index)
    full = cl.full_classify(G, c.index, use_fast_path=False)
    assert fast.verdict.evidence.kind == "theorem"
    assert fast.verdict.status == full.verdict.status


@pytest.mark.parametrize("spec,label,index,status,kind", [
    ("sym:3", "1", 6, cl.STABLY, "collapse"),
    ("alt:4", "C3", 4, cl.NOT_RETRACT, "non_invertible"),
    ("alt:5", "C2 x C2", 15, cl.STABLY, "collapse"),
    ("alt:5", "C3", 20, cl.NOT_RETRACT, "non_invertible"),
])
def test_full_pipeline(spec, label, index, status, kind):
    G = named_group(spec)
    r = cl.full_classify(G, cls_of(G, label, index).index, use_fast_path=False)
    assert (r.verdict.status, r.verdict.evidence.kind) == (status, kind)
    assert r.index == index and r.label == label


def test_certificate_requested():
    G = named_group("sym:3")
    b = cl.Budgets(want_certificate=True)
    r = cl.full_classify(G, cls_of(G, "C2").index, b, use_fast_path=False)
    assert r.verdict.evidence.kind == "certificate"
    assert r.certificate is not None


def test_sylow_only_leaves_question_open():
    G = named_group("alt:5")
    r = cl.full_classify(G, cls_of(G, "C2 x C2").index, cl.Budgets(sylow_only=True))
    assert r.verdict.status == cl.INDETERMINATE


def test_tiny_budget():
    G = named_group("alt:5")
    r = cl.full_classify(G, cls_of(G, "1").index, cl.Budgets(max_rank=5), use_fast_path=False)
    assert r.verdict.status == cl.INDETERMINATE and r.verdict.evidence.kind == "budget"


def test_record_and_table():
    G = named_group("sym:3")
    reports = cl.classify_group(G, group_ref="sym:3")
    assert [r.subgroup for r in reports] == [c.index for c in h_candidates(G)]
    rec = reports[0].record()
    assert "timings" not in rec and rec["status"] == cl.STABLY
    assert "timings" in reports[0].record(timings=True)
    table = cl.format_table(reports)
    assert table.splitlines()[0].split()[:2] == ["class", "H"]
    assert len(table.splitlines()) == len(reports) + 1


def test_derived_label():
    G = named_group("sym:4")
    V = [c for c in subgroup_classes(G) if c.label == "C2 x C2"]
    assert sorted(cl.derived_label(G, c.rep) for c in V) == ["C2", "C2 x C2"]


def test_verdict_validation():
    with pytest.raises(ValueError):
        cl.Verdict("maybe", cl.Evidence("theorem", "x"))
    with pytest.raises(ValueError):
        cl.Verdict(cl.STABLY, cl.Evidence("hunch", "x"))
