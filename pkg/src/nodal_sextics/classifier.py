"""Rigid isotopy classes of real irreducible sextics with non-real nodes.

Existence is decided two ways: topologically, by conditions on the real
scheme, dividing type and crossing count, and arithmetically, by the
conditions on (a, t, delta, r). For m >= 1 the two verdicts must agree.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional

from .involutions import ConditionReport, arithmetic_conditions
from .schemes import (
    RealScheme,
    arnold_congruence,
    counts,
    enumerate_schemes,
    harnack_check,
    no_injective_pairs_rule,
    parse_viro,
    render_viro,
    scheme_to_invariants,
)

M_MAX_GLOBAL = 5


class PathDisagreement(AssertionError):
    """The topological and arithmetic verdicts differ where they must agree."""


@dataclass(frozen=True)
class RigidIsotopyClass:
    m: int
    scheme: RealScheme
    divtype: str
    r: Optional[int] = None

    def __post_init__(self):
        if self.divtype not in ("I", "II"):
            raise ValueError("divtype must be 'I' or 'II'")
        if (self.r is None) != (self.divtype == "II"):
            raise ValueError("r is present exactly for dividing classes")
        if self.m < 0 or (self.r is not None and not 0 <= self.r <= self.m):
            raise ValueError("need 0 <= r <= m")

    def sort_key(self) -> tuple:
        return (self.m, render_viro(self.scheme), self.divtype, -1 if self.r is None else self.r)

    def invariants(self) -> tuple:
        r = self.r
        if self.scheme.is_empty() and self.divtype == "II":
            r = 0
        return scheme_to_invariants(self.scheme, self.divtype, r)

    def to_record(self) -> dict:
        a, t, delta, r = self.invariants()
        return {
            "m": self.m,
            "scheme": render_viro(self.scheme),
            "divtype": self.divtype,
            "r": self.r,
            "l": counts(self.scheme).l,
            "a": a,
            "t": t,
            "delta": delta,
        }


# Nonsingular sextics: the m = 0 columns of the two tables.
_NONSINGULAR_I = (
    "⟨9 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨9⟩⟩",
    "⟨1⟨8⟩⟩", "⟨6 ⊔ 1⟨2⟩⟩", "⟨4 ⊔ 1⟨4⟩⟩", "⟨2 ⊔ 1⟨6⟩⟩", "⟨9⟩",
    "⟨5 ⊔ 1⟨1⟩⟩", "⟨3 ⊔ 1⟨3⟩⟩", "⟨1 ⊔ 1⟨5⟩⟩",
    "⟨1⟨4⟩⟩", "⟨2 ⊔ 1⟨2⟩⟩",
    "⟨1⟨1⟨1⟩⟩⟩",
)

_NONSINGULAR_II = (
    "⟨1⟨9⟩⟩", "⟨8 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨4⟩⟩", "⟨4 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨8⟩⟩", "⟨10⟩",
    "⟨1⟨8⟩⟩", "⟨7 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨3⟩⟩", "⟨4 ⊔ 1⟨4⟩⟩", "⟨3 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨7⟩⟩", "⟨9⟩",
    "⟨1⟨7⟩⟩", "⟨6 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨2⟩⟩", "⟨4 ⊔ 1⟨3⟩⟩", "⟨3 ⊔ 1⟨4⟩⟩", "⟨2 ⊔ 1⟨5⟩⟩",
    "⟨1 ⊔ 1⟨6⟩⟩", "⟨8⟩",
    "⟨1⟨6⟩⟩", "⟨5 ⊔ 1⟨1⟩⟩", "⟨4 ⊔ 1⟨2⟩⟩", "⟨3 ⊔ 1⟨3⟩⟩", "⟨2 ⊔ 1⟨4⟩⟩", "⟨1 ⊔ 1⟨5⟩⟩", "⟨7⟩",
    "⟨1⟨5⟩⟩", "⟨4 ⊔ 1⟨1⟩⟩", "⟨3 ⊔ 1⟨2⟩⟩", "⟨2 ⊔ 1⟨3⟩⟩", "⟨1 ⊔ 1⟨4⟩⟩", "⟨6⟩",
    "⟨1⟨4⟩⟩", "⟨3 ⊔ 1⟨1⟩⟩", "⟨2 ⊔ 1⟨2⟩⟩", "⟨1 ⊔ 1⟨3⟩⟩", "⟨5⟩",
    "⟨1⟨3⟩⟩", "⟨2 ⊔ 1⟨1⟩⟩", "⟨1 ⊔ 1⟨2⟩⟩", "⟨4⟩",
    "⟨1⟨2⟩⟩", "⟨1 ⊔ 1⟨1⟩⟩", "⟨3⟩",
    "⟨1⟨1⟩⟩", "⟨2⟩",
    "⟨1⟩",
    "∅",
)


@dataclass(frozen=True)
class NonsingularTable:
    entries: frozenset  # of (RealScheme, divtype)

    @classmethod
    def default(cls) -> "NonsingularTable":
        return _default_table()

    def __contains__(self, item) -> bool:
        return item in self.entries

    def of_type(self, divtype: str) -> list[RealScheme]:
        return sorted((s for s, d in self.entries if d == divtype), key=render_viro)


@lru_cache(maxsize=None)
def _default_table() -> NonsingularTable:
    entries = {(parse_viro(s), "I") for s in _NONSINGULAR_I}
    entries |= {(parse_viro(s), "II") for s in _NONSINGULAR_II}
    return NonsingularTable(frozenset(entries))


def topological_conditions(c: RigidIsotopyClass, table: Optional[NonsingularTable] = None) -> ConditionReport:
    table = table or NonsingularTable.default()
    if c.divtype == "I" and c.r == 0:
        cond1 = (c.scheme, "I") in table
    else:
        cond1 = (c.scheme, "II") in table
    l = counts(c.scheme).l
    results = [("1", cond1), ("2", harnack_check(l, c.m, c.divtype))]
    if c.divtype == "I":
        results += [("3", arnold_congruence(c.scheme, c.r)),
                    ("4", no_injective_pairs_rule(c.scheme, c.r))]
    return ConditionReport(tuple(results))


def arithmetic_report(c: RigidIsotopyClass) -> Optional[ConditionReport]:
    """Conditions (i)-(v) on the translated invariants; None if there is no translation."""
    if c.m < 1:
        return None
    try:
        a, t, delta, r = c.invariants()
    except ValueError:
        return None
    return arithmetic_conditions(c.m, a, t, delta, r)


def exists_class(c: RigidIsotopyClass, table: Optional[NonsingularTable] = None) -> bool:
    table = table or NonsingularTable.default()
    if c.m == 0:
        if c.divtype == "I" and c.r != 0:
            return False
        return (c.scheme, c.divtype) in table
    if c.m > M_MAX_GLOBAL:
        return False
    topo = topological_conditions(c, table)
    if topo["1"]:
        arith = arithmetic_report(c)
        arith_ok = arith is not None and arith.ok
        if arith_ok != topo.ok:
            raise PathDisagreement(f"{render_viro(c.scheme)} {c.divtype} m={c.m} r={c.r}: "
                                   f"topological {topo.ok}, arithmetic {arith_ok}")
    return topo.ok


def candidate_classes(m_max_global: int = M_MAX_GLOBAL) -> Iterable[RigidIsotopyClass]:
    for s in enumerate_schemes(11, 3):
        for m in range(m_max_global + 1):
            for r in range(m + 1):
                if not s.is_empty():
                    yield RigidIsotopyClass(m, s, "I", r)
            yield RigidIsotopyClass(m, s, "II", None)


def enumerate_classes(m_max_global: int = M_MAX_GLOBAL,
                      table: Optional[NonsingularTable] = None) -> list[RigidIsotopyClass]:
    table = table or NonsingularTable.default()
    found = [c for c in candidate_classes(m_max_global) if exists_class(c, table)]
    return sorted(found, key=RigidIsotopyClass.sort_key)


@lru_cache(maxsize=None)
def _default_classes() -> tuple[RigidIsotopyClass, ...]:
    return tuple(enumerate_classes())


def default_classes() -> list[RigidIsotopyClass]:
    """enumerate_classes() with default arguments, computed once."""
    return list(_default_classes())


def dual_path_disagreements(m_max_global: int = M_MAX_GLOBAL,
                            table: Optional[NonsingularTable] = None) -> tuple[int, list[str]]:
    """(number of combinations compared, descriptions of disagreements)."""
    table = table or NonsingularTable.default()
    compared = 0
    bad = []
    for c in candidate_classes(m_max_global):
        if c.m < 1:
            continue
        topo = topological_conditions(c, table)
        if not topo["1"]:
            continue
        compared += 1
        arith = arithmetic_report(c)
        arith_ok = arith is not None and arith.ok
        if arith_ok != topo.ok:
            bad.append(f"{render_viro(c.scheme)} {c.divtype} m={c.m} r={c.r}")
    return compared, bad


@dataclass(frozen=True)
class Figure1Row:
    scheme: RealScheme
    r_set: tuple[int, ...]
    m_max: int

    def to_json(self) -> dict:
        return {"scheme": render_viro(self.scheme), "r_set": list(self.r_set), "m_max": self.m_max}


@dataclass(frozen=True)
class Figure2Row:
    scheme: RealScheme
    m_max: int

    def to_json(self) -> dict:
        return {"scheme": render_viro(self.scheme), "m_max": self.m_max}


def _row_key(scheme: RealScheme, m_max: int) -> tuple:
    return (m_max, -counts(scheme).l, render_viro(scheme))


def figure_tables(classes: Iterable[RigidIsotopyClass]) -> tuple[list[Figure1Row], list[Figure2Row]]:
    r_sets: dict[RealScheme, set[int]] = {}
    m1: dict[RealScheme, int] = {}
    m2: dict[RealScheme, int] = {}
    for c in classes:
        if c.divtype == "I":
            r_sets.setdefault(c.scheme, set()).add(c.r)
            m1[c.scheme] = max(m1.get(c.scheme, 0), c.m)
        else:
            m2[c.scheme] = max(m2.get(c.scheme, 0), c.m)
    fig1 = [Figure1Row(s, tuple(sorted(r_sets[s])), m1[s]) for s in m1]
    fig2 = [Figure2Row(s, m2[s]) for s in m2]
    fig1.sort(key=lambda row: _row_key(row.scheme, row.m_max))
    fig2.sort(key=lambda row: _row_key(row.scheme, row.m_max))
    return fig1, fig2


def figures_json(classes: Iterable[RigidIsotopyClass]) -> dict:
    fig1, fig2 = figure_tables(classes)
    return {"figure1": [r.to_json() for r in fig1], "figure2": [r.to_json() for r in fig2]}


def injectivity_check(classes: Iterable[RigidIsotopyClass]) -> tuple[bool, list[tuple]]:
    """Is (scheme, divtype, r) -> (a, t, delta, r) injective? Returns collisions too."""
    seen: dict[tuple, tuple] = {}
    collisions = []
    for c in classes:
        src = (c.scheme, c.divtype, c.r)
        key = c.invariants()
        prev = seen.setdefault(key, src)
        if prev != src:
            collisions.append((key, prev, src))
    return not collisions, collisions


def load_golden(path: Optional[str] = None) -> dict:
    if path is None:
        text = resources.files("nodal_sextics").joinpath("data/figures.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def compare_with_golden(produced: dict, golden: dict) -> list[str]:
    """Differences between two figure dictionaries, keyed by canonical scheme."""
    problems = []
    for fig in ("figure1", "figure2"):
        def index(rows):
            out = {}
            for row in rows:
                key = render_viro(parse_viro(row["scheme"]))
                out[key] = {k: v for k, v in row.items() if k != "scheme"}
            return out
        got, want = index(produced.get(fig, [])), index(golden.get(fig, []))
        for key in sorted(want.keys() - got.keys()):
            problems.append(f"{fig}: missing {key}")
        for key in sorted(got.keys() - want.keys()):
            problems.append(f"{fig}: unexpected {key}")
        for key in sorted(got.keys() & want.keys()):
            if got[key] != want[key]:
                problems.append(f"{fig}: {key} has {got[key]}, expected {want[key]}")
    return problems


def class_counts(classes: Iterable[RigidIsotopyClass]) -> dict[str, int]:
    out = {"I": 0, "II": 0}
    for c in classes:
        out[c.divtype] += 1
    return out


RECORD_FIELDS = ("m", "scheme", "divtype", "r", "l", "a", "t", "delta")


def records_json(classes: Iterable[RigidIsotopyClass]) -> str:
    return json.dumps([c.to_record() for c in classes], ensure_ascii=False, indent=1) + "\n"


def records_csv(classes: Iterable[RigidIsotopyClass]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n")
    w.writeheader()
    for c in classes:
        rec = c.to_record()
        w.writerow({k: "" if rec[k] is None else rec[k] for k in RECORD_FIELDS})
    return buf.getvalue()
