"""Property suites behind `nodal-sextics verify`.

Each check returns (ok, detail). `run_all` evaluates every registered check
and never stops at the first failure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Callable

from . import classifier, forms, involutions, lattice, schemes
from .forms import FiniteQuadraticForm

_CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = []


def check(name: str):
    def deco(fn):
        _CHECKS.append((name, fn))
        return fn
    return deco


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


@lru_cache(maxsize=None)
def load_catalog() -> dict:
    text = resources.files("nodal_sextics").joinpath("data/catalog.json").read_text(encoding="utf-8")
    return json.loads(text)


def catalog_lattices() -> list[lattice.IntLattice]:
    return [lattice.IntLattice(e["gram"], e["label"]) for e in load_catalog()["lattices"]]


def catalog_models() -> list[dict]:
    return load_catalog()["models"]


def region_euler_oracle(s: schemes.RealScheme) -> int:
    """chi(B) as 1 - chi(orientable half), listing the regions explicitly."""
    regions = []  # (region depth, number of boundary circles)

    def visit(forest, depth):
        for oval in forest:
            regions.append((depth + 1, 1 + len(oval)))
            visit(oval, depth + 1)

    visit(s.forest, 0)
    # a region bounded by k circles inside a disk is a disk with k - 1 holes
    chi_w = sum(2 - k for d, k in regions if d % 2 == 1)
    return 1 - chi_w


def _order(x) -> int:
    k = 1
    while any((k * c).denominator != 1 for c in x):
        k += 1
    return k


def order_statistics(elements) -> dict[int, int]:
    """How many elements have each order; this fixes a finite abelian group."""
    out: dict[int, int] = {}
    for x in elements:
        o = _order(x)
        out[o] = out.get(o, 0) + 1
    return out


def brute_discriminant_elements(l: lattice.IntLattice) -> set:
    """L*/L as rational coordinate vectors mod 1, by enumerating combinations of the dual basis."""
    det = abs(l.determinant)
    n = l.rank
    inv = lattice.linalg.rational_inverse(l.gram)
    cols = [tuple(inv[i][j] for i in range(n)) for j in range(n)]
    seen = set()
    for coeffs in itertools.product(range(det), repeat=n):
        v = (sum((c * col[i] for c, col in zip(coeffs, cols)), Fraction(0)) for i in range(n))
        seen.add(tuple(x - (x.numerator // x.denominator) for x in v))
    return seen


def cyclic_product_elements(orders: list[int]) -> list[tuple]:
    return [tuple(Fraction(k, d) for k, d in zip(ks, orders))
            for ks in itertools.product(*(range(d) for d in orders))]


# --- lattice-core --------------------------------------------------------

@check("lattice: K3 is even unimodular of signature (3,19)")
def _k3():
    k3 = lattice.make_standard("K3")
    ok = k3.rank == 22 and lattice.is_even(k3) and abs(k3.determinant) == 1 and lattice.signature(k3) == (3, 19)
    return ok, f"rank {k3.rank}, signature {lattice.signature(k3)}, det {k3.determinant}"


@check("lattice: signature sums to rank and |det| is the discriminant order")
def _sig_det():
    bad = []
    for l in catalog_lattices():
        p, n = lattice.signature(l)
        prod = 1
        for d in lattice.discriminant_group(l):
            prod *= d
        if p + n != l.rank or prod != abs(l.determinant):
            bad.append(l.label)
    return not bad, ", ".join(bad) or f"{len(catalog_lattices())} lattices"


@check("lattice: discriminant group matches brute-force dual enumeration")
def _disc_brute():
    bad = []
    tested = 0
    for l in catalog_lattices():
        if l.rank > 3 or abs(l.determinant) > 16:
            continue
        tested += 1
        snf = lattice.discriminant_group(l)
        brute = order_statistics(brute_discriminant_elements(l))
        if order_statistics(cyclic_product_elements(snf)) != brute:
            bad.append(f"{l.label}: {snf} vs {brute}")
    return not bad, "; ".join(bad) or f"{tested} lattices"


def polarization_holds(f: FiniteQuadraticForm) -> bool:
    """q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2 over all pairs, in integer arithmetic."""
    den = 1
    for v in [*f.q, *(x for row in f.b for x in row)]:
        den = den * v.denominator // gcd(den, v.denominator)
    two = 2 * den
    n = len(f.orders)
    bmat = [[int(x * den) for x in row] for row in f.b]
    elems = list(f.elements())
    index = {x: i for i, x in enumerate(elems)}
    q = [int(f.value(x) * den) for x in elems]
    # row vectors x^T B, so that b(x, y) = <xB, y> / den
    xb = [[sum(x[i] * bmat[i][j] for i in range(n)) for j in range(n)] for x in elems]
    for i, x in enumerate(elems):
        row = xb[i]
        for k, y in enumerate(elems):
            lhs = q[index[f.add(x, y)]] - q[i] - q[k]
            if (lhs - 2 * sum(a * c for a, c in zip(row, y))) % two:
                return False
    return True


@check("lattice: q(x+y) - q(x) - q(y) = 2 b(x,y) on discriminant forms")
def _polarization():
    forms_to_test = [lattice.discriminant_form(l) for l in catalog_lattices()]
    forms_to_test.append(involutions.s_minus_form(4))  # order 512
    for f in forms_to_test:
        if not polarization_holds(f):
            return False, f"failure on {f}"
    return True, f"{len(forms_to_test)} forms, largest order 512"


@check("lattice: orthogonal complements are primitive")
def _complements():
    k3 = lattice.make_standard("K3")
    bad = 0
    for model in catalog_models():
        mi = involutions.build_model_involution(model)
        s = lattice.Sublattice(mi.lattice, (mi.h, *mi.sigma))
        perp = lattice.orthogonal_complement(mi.lattice, s)
        if not lattice.is_primitive_sublattice(mi.lattice, perp):
            bad += 1
        if perp.rank != k3.rank - s.rank:
            bad += 1
    return bad == 0, f"{len(catalog_models())} models"


@check("lattice: fixed parts of an involution are orthogonal with complementary ranks")
def _fixed_parts():
    for model in catalog_models():
        mi = involutions.build_model_involution(model)
        plus = lattice.fixed_sublattice(mi.lattice, mi.phi, 1)
        minus = lattice.fixed_sublattice(mi.lattice, mi.phi, -1)
        if plus.rank + minus.rank != mi.lattice.rank:
            return False, model["label"]
        if any(mi.lattice.dot(x, y) for x in plus.vectors for y in minus.vectors):
            return False, model["label"]
    return True, f"{len(catalog_models())} models"


@check("lattice: twisted characteristic vectors satisfy the defining congruence")
def _twisted():
    for model in catalog_models():
        mi = involutions.build_model_involution(model)
        lattice.twisted_characteristic_vector(mi.lattice, mi.phi)  # raises on failure
    return True, f"{len(catalog_models())} models"


# --- finite-forms ------------------------------------------------------------

@check("forms: Milgram formula on catalog lattices")
def _milgram():
    bad = []
    n = 0
    for l in catalog_lattices():
        if l.rank > 4 or abs(l.determinant) > 64:
            continue
        n += 1
        p, q = lattice.signature(l)
        if forms.gauss_signature(lattice.discriminant_form(l)) != (p - q) % 8:
            bad.append(l.label)
    return not bad, ", ".join(bad) or f"{n} lattices"


@check("forms: glue is independent of generator ordering")
def _glue_order():
    for m in (1, 2, 3):
        sp, sm = involutions.s_plus_form(m), involutions.s_minus_form(m)
        base = involutions.q_r_form(m)
        for perm in itertools.permutations(range(m)):
            gp = forms.subform(sp, [tuple(2 * int(i == j) for j in range(m)) for i in perm])
            gm = forms.subform(sm, [tuple(2 * int(i == j) for j in range(m)) + (0,) for i in perm])
            ident = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
            out = forms.glue(gp, gm, forms.SubgroupAntiIsometry(ident, ident))
            if not forms.is_isomorphic(out, base):
                return False, f"m={m} perm={perm}"
    return True, "m = 1..3, all orderings"


def _period_two_forms(max_k: int):
    half = [Fraction(k, 2) for k in range(4)]
    for k in range(1, max_k + 1):
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        for qs in itertools.product(half, repeat=k):
            for bs in itertools.product((Fraction(0), Fraction(1, 2)), repeat=len(pairs)):
                b = [[qs[i] % 1 if i == j else Fraction(0) for j in range(k)] for i in range(k)]
                for (i, j), v in zip(pairs, bs):
                    b[i][j] = b[j][i] = v
                f = FiniteQuadraticForm((2,) * k, qs, b)
                if not f.is_degenerate():
                    yield f


@check("forms: period-2 forms are determined by (length, parity, Gauss signature)")
def _period_two():
    classes: dict[tuple, list[FiniteQuadraticForm]] = {}
    for f in _period_two_forms(3):
        pr = forms.profile(f)
        key = (pr.length, pr.parity, forms.gauss_signature(f))
        reps = classes.setdefault(key, [])
        if not reps:
            reps.append(f)
        elif not forms.is_isomorphic(reps[0], f):
            return False, f"{f} not isomorphic to {reps[0]}"
    return True, f"{len(classes)} classes up to order 8"


@check("forms: 2-adic square class is invariant under odd squares")
def _square_class():
    for u in range(-31, 32, 2):
        for v in (1, 3, 5, 7, 9, 11):
            for w in (1, 3, 5):
                x = Fraction(u, w)
                if forms.two_adic_unit_square_class(x * Fraction(v, w) ** 2) != forms.two_adic_unit_square_class(x):
                    return False, f"u={x} v={v}/{w}"
    return True, "odd u in [-31, 31]"


# --- involution-invariants ------------------------------------------------

@check("involutions: 4 eps + c_v + 2r = 0 mod 8 and eps from the discriminant")
def _lemma_eps():
    for r in range(21):
        if not involutions.lemma_epsilon_identity(r):
            return False, f"identity fails at r={r}"
        for m in range(max(r, 1), 11) if r <= 10 else ():
            if involutions.epsilon_via_discriminant(m, r) != involutions.epsilon_v_plus(r):
                return False, f"discriminant route fails at m={m}, r={r}"
    return True, "r = 0..20"


@check("involutions: boundary condition BC1 matches 2r = a - 2 mod 8")
def _bc1():
    for a in range(21):
        for r in range(11):
            t = a - 1
            if involutions.boundary_condition_bc1(a, t, r) != ((2 * r - (a - 2)) % 8 == 0):
                return False, f"a={a}, r={r}"
    return True, "a = 0..20, r = 0..10"


@check("involutions: catalog models give their expected invariants")
def _catalog_invariants():
    bad = []
    for model in catalog_models():
        exp = model["expected"]
        mi = involutions.build_model_involution(model)
        rep = involutions.validate_marking(mi)
        if "rejected" in exp:
            if exp["rejected"] not in rep.violations:
                bad.append(model["label"])
            continue
        inv = involutions.invariants(mi)
        if (inv.m, inv.a, inv.t, inv.delta, inv.r) != (exp["m"], exp["a"], exp["t"], exp["delta"], exp["r"]):
            bad.append(model["label"])
            continue
        if model.get("scheme"):
            r = 0 if model["divtype"] == "II" and model["scheme"] == "∅" else exp["r"]
            tr = schemes.scheme_to_invariants(schemes.parse_viro(model["scheme"]), model["divtype"], r)
            if tr != (exp["a"], exp["t"], exp["delta"], exp["r"]):
                bad.append(model["label"] + " (translation)")
        if inv.delta == 0:
            coeffs = involutions.characteristic_decomposition(mi)
            if coeffs is None or coeffs[0]:
                bad.append(model["label"] + " (h component)")
    return not bad, ", ".join(bad) or f"{len(catalog_models())} models"


@check("involutions: invariants are stable under reordering and swapping nodes")
def _stability():
    for model in catalog_models():
        if model["expected"].get("m", 0) < 2:
            continue
        mi = involutions.build_model_involution(model)
        base = involutions.invariants(mi)
        for perm in itertools.permutations(mi.sigma_pairs):
            for flips in itertools.product((False, True), repeat=len(perm)):
                pairs = tuple((b, a) if f else (a, b) for (a, b), f in zip(perm, flips))
                other = involutions.MarkedInvolution(mi.lattice, mi.h, pairs, mi.phi)
                if involutions.invariants(other) != base:
                    return False, model["label"]
    return True, "all reorderings and swaps"


# --- real-schemes ------------------------------------------------------------

@check("schemes: parse and render are inverse on all schemes with <= 11 ovals")
def _roundtrip():
    all_s = schemes.enumerate_schemes(11, 3)
    for s in all_s:
        for ascii_ in (False, True):
            text = schemes.render_viro(s, ascii=ascii_)
            if schemes.parse_viro(text) != s or schemes.render_viro(schemes.parse_viro(text), ascii=ascii_) != text:
                return False, text
    return True, f"{len(all_s)} schemes"


@check("schemes: count identities and the region Euler characteristic oracle")
def _scheme_counts():
    for s in schemes.enumerate_schemes(11, 3):
        c = schemes.counts(s)
        if c.o_even + c.o_odd != c.l or c.injective_pairs > c.l * (c.l - 1) // 2:
            return False, schemes.render_viro(s)
        if s.is_empty():
            continue
        a = schemes.scheme_to_invariants(s, "II")[0]
        if a + c.l != 11:
            return False, schemes.render_viro(s)
        if schemes.euler_char_nonorientable_half(s) != region_euler_oracle(s):
            return False, schemes.render_viro(s)
    return True, "all schemes with <= 11 ovals"


@check("schemes: nest-free schemes force r = 4, 3, 2, 1, 0")
def _nest_free():
    for l, want in zip((1, 3, 5, 7, 9), (4, 3, 2, 1, 0)):
        s = schemes.RealScheme.flat(l)
        ok = [r for r in range(11) if schemes.no_injective_pairs_rule(s, r)]
        if ok != [want]:
            return False, f"<{l}>: {ok}"
    return True, "<1>, <3>, <5>, <7>, <9>"


# --- classifier -----------------------------------------------------------

@check("classifier: topological and arithmetic verdicts agree")
def _dual_path():
    compared, bad = classifier.dual_path_disagreements()
    return not bad, "; ".join(bad[:5]) or f"{compared} combinations, 0 disagreements"


@check("classifier: figures reproduce the golden data")
def _figures():
    classes = classifier.default_classes()
    problems = classifier.compare_with_golden(classifier.figures_json(classes), classifier.load_golden())
    return not problems, "; ".join(problems[:5]) or "exact match"


@check("classifier: class totals (78 dividing, 125 non-dividing)")
def _totals():
    counts = classifier.class_counts(classifier.default_classes())
    return counts == {"I": 78, "II": 125}, f"{counts['I']} dividing, {counts['II']} non-dividing"


@check("classifier: m_max laws floor(a/2) and floor((a-1)/2)")
def _m_max_laws():
    fig1, fig2 = classifier.figure_tables(classifier.default_classes())
    for row in fig1:
        a = 11 - schemes.counts(row.scheme).l
        if row.m_max != a // 2:
            return False, schemes.render_viro(row.scheme)
    for row in fig2:
        if row.scheme.is_empty():
            if row.m_max != 5:
                return False, "∅"
            continue
        a = 11 - schemes.counts(row.scheme).l
        if row.m_max != (a - 1) // 2:
            return False, schemes.render_viro(row.scheme)
    return True, f"{len(fig1)} + {len(fig2)} rows"


@check("classifier: m = 0 classes coincide with the nonsingular table")
def _m0():
    table = classifier.NonsingularTable.default()
    found = {(c.scheme, c.divtype) for c in classifier.default_classes() if c.m == 0}
    return found == set(table.entries), f"{len(found)} classes"


@check("classifier: the invariant map is injective")
def _injective():
    ok, coll = classifier.injectivity_check(classifier.default_classes())
    return ok, f"{len(coll)} collisions"


def run_all() -> list[CheckResult]:
    out = []
    for name, fn in _CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out


def check_names() -> list[str]:
    return [n for n, _ in _CHECKS]
