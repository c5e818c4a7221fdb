import csv
import io
import json
from pathlib import Path

import pytest

from nodal_sextics import classifier as C
from nodal_sextics.schemes import RealScheme, counts, parse_viro, render_viro

ROOT = Path(__file__).resolve().parents[1]


def cls(m, text, divtype, r=None):
    return C.RigidIsotopyClass(m, parse_viro(text), divtype, r)


@pytest.fixture(scope="module")
def classes():
    return C.default_classes()


def test_rigid_isotopy_class_validation():
    with pytest.raises(ValueError):
        cls(1, "⟨9⟩", "I")
    with pytest.raises(ValueError):
        cls(1, "⟨9⟩", "II", 0)
    with pytest.raises(ValueError):
        cls(1, "⟨9⟩", "I", 2)
    with pytest.raises(ValueError):
        cls(1, "⟨9⟩", "III")


def test_nonsingular_table():
    table = C.NonsingularTable.default()
    assert len(table.of_type("I")) == 14
    # the figures list 50 non-dividing schemes; 56 counts distinct schemes over both types
    assert len(table.of_type("II")) == 50
    assert len({s for s, _ in table.entries}) == 56
    assert (RealScheme(), "II") in table
    assert (RealScheme(), "I") not in table


def test_topological_conditions_examples():
    assert C.topological_conditions(cls(1, "⟨9⟩", "I", 0)).ok
    rep = C.topological_conditions(cls(2, "⟨1⟨1⟨1⟩⟩⟩", "I", 2))
    assert not rep.ok and rep.failed() == ["1"]
    assert C.topological_conditions(cls(5, "⟨1⟩", "I", 4)).ok


def test_exists_class_examples():
    assert C.exists_class(cls(1, "⟨1⟨8⟩⟩", "I", 0))
    assert not C.exists_class(cls(1, "⟨9⟩", "I", 1))
    arith = C.arithmetic_report(cls(1, "⟨9⟩", "I", 1))
    assert not arith.ok and "iv" in arith.failed()
    topo = C.topological_conditions(cls(1, "⟨9⟩", "I", 1))
    assert not topo["3"]
    for text, d, r in [("⟨1⟩", "I", 4), ("⟨9⟩", "I", 0), ("⟨3⟩", "II", None), ("∅", "II", None)]:
        assert not C.exists_class(cls(6, text, d, r))


def test_exists_class_m0_uses_table():
    assert C.exists_class(cls(0, "⟨5 ⊔ 1⟨5⟩⟩", "I", 0))
    assert not C.exists_class(cls(0, "⟨5 ⊔ 1⟨5⟩⟩", "II"))
    assert C.exists_class(cls(0, "⟨10⟩", "II"))
    assert C.arithmetic_report(cls(0, "⟨10⟩", "II")) is None


def test_empty_scheme_is_never_dividing():
    for m in range(6):
        for r in range(m + 1):
            assert not C.exists_class(cls(m, "∅", "I", r))


def test_path_disagreement_tripwire(monkeypatch):
    monkeypatch.setattr(C, "arithmetic_report", lambda c: None)
    with pytest.raises(C.PathDisagreement):
        C.exists_class(cls(1, "⟨9⟩", "I", 0))


def test_enumerate_examples(classes):
    dividing = [c for c in classes if c.divtype == "I"]
    assert len(dividing) == 78
    top_i = [(render_viro(c.scheme), c.r) for c in classes if c.m == 5 and c.divtype == "I"]
    top_ii = [render_viro(c.scheme) for c in classes if c.m == 5 and c.divtype == "II"]
    assert top_i == [("⟨1⟩", 4)] and top_ii == ["∅"]
    assert not any(counts(c.scheme).l == 11 and c.m >= 1 for c in classes)
    assert classes == sorted(classes, key=C.RigidIsotopyClass.sort_key)


def test_figure_tables_examples(classes):
    fig1, fig2 = C.figure_tables(classes)
    row1 = {render_viro(r.scheme): (r.r_set, r.m_max) for r in fig1}
    row2 = {render_viro(r.scheme): r.m_max for r in fig2}
    assert row1["⟨1 ⊔ 1⟨1⟩⟩"] == ((2, 4), 4)
    assert row1["⟨3 ⊔ 1⟨3⟩⟩"] == ((0, 2), 2)
    assert row1["⟨9⟩"] == ((0,), 1)
    assert row1["⟨5⟩"] == ((2,), 3)
    assert row1["⟨1⟨1⟨1⟩⟩⟩"] == ((0,), 4)
    assert row1["⟨1⟩"] == ((4,), 5)
    assert row2["⟨8⟩"] == 1
    assert row2["∅"] == 5


def test_golden_match_and_copies(classes):
    golden = C.load_golden()
    assert C.compare_with_golden(C.figures_json(classes), golden) == []
    root_copy = json.loads((ROOT / "figures.json").read_text(encoding="utf-8"))
    assert root_copy == golden
    assert C.load_golden(str(ROOT / "figures.json")) == golden


def test_compare_reports_differences(classes):
    golden = C.load_golden()
    broken = json.loads(json.dumps(golden))
    broken["figure1"][0]["m_max"] = 3
    broken["figure2"].pop()
    problems = C.compare_with_golden(C.figures_json(classes), broken)
    assert any("has" in p for p in problems) and any("unexpected ∅" in p for p in problems)


def test_injectivity(classes):
    ok, collisions = C.injectivity_check(classes)
    assert ok and not collisions
    a = cls(4, "⟨1⟨1⟨1⟩⟩⟩", "I", 0).invariants()
    b = cls(4, "⟨1 ⊔ 1⟨1⟩⟩", "I", 2).invariants()
    assert a == (8, 9, 0, 0) and b == (8, 9, 0, 2)
    x = cls(0, "⟨1⟨3⟩⟩", "II").invariants()
    y = cls(0, "⟨4⟩", "II").invariants()
    assert x[0] == y[0] and x[1] != y[1]


def test_injectivity_detects_collisions():
    dup = [cls(1, "⟨9⟩", "I", 0), C.RigidIsotopyClass(1, parse_viro("⟨9⟩"), "I", 0)]
    assert C.injectivity_check(dup)[0]
    clash = [cls(1, "⟨1⟨8⟩⟩", "II"), cls(1, "⟨7 ⊔ 1⟨1⟩⟩", "II")]
    # different schemes with l = 9 differ in t
    assert C.injectivity_check(clash)[0]


def test_dual_path_agreement():
    compared, bad = C.dual_path_disagreements()
    assert compared > 1000 and bad == []


def test_m_max_laws(classes):
    fig1, fig2 = C.figure_tables(classes)
    for row in fig1:
        assert row.m_max == (11 - counts(row.scheme).l) // 2
    for row in fig2:
        a = 10 if row.scheme.is_empty() else 11 - counts(row.scheme).l
        expected = a // 2 if row.scheme.is_empty() else (a - 1) // 2
        assert row.m_max == expected


def test_m0_classes_equal_table(classes):
    found = {(c.scheme, c.divtype) for c in classes if c.m == 0}
    assert found == set(C.NonsingularTable.default().entries)


def test_records(classes):
    recs = json.loads(C.records_json(classes))
    assert len(recs) == len(classes) == 203
    assert set(recs[0]) == set(C.RECORD_FIELDS)
    rows = list(csv.DictReader(io.StringIO(C.records_csv(classes))))
    assert len(rows) == len(classes)
    assert C.records_json(classes) == C.records_json(C.enumerate_classes())


def test_totals(classes):
    assert C.class_counts(classes) == {"I": 78, "II": 125}
    empty = [c for c in classes if c.scheme.is_empty()]
    assert len(empty) == 6
