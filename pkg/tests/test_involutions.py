import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodal_sextics import forms
from nodal_sextics import involutions as inv
from nodal_sextics import lattice as L
from nodal_sextics.schemes import parse_viro, scheme_to_invariants
from nodal_sextics.verify import catalog_models


def model(label):
    return next(m for m in catalog_models() if m["label"] == label)


def build(label):
    return inv.build_model_involution(model(label))


@pytest.fixture(scope="module")
def hm1():
    return build("HM1")


def test_hm1_validates(hm1):
    rep = inv.validate_marking(hm1)
    assert rep.ok and rep.first is None


def test_hm1_invariants_and_invariant_lattice(hm1):
    assert inv.invariants(hm1) == inv.HomInvariants(1, 8, 9, 0, 0)
    plus = L.fixed_sublattice(hm1.lattice, hm1.phi, 1).lattice()
    assert plus.rank == 10 and L.signature(plus) == (1, 9)
    assert L.discriminant_group(plus) == [2] * 8
    alpha = L.twisted_characteristic_vector(hm1.lattice, hm1.phi)
    assert not any(alpha)


def test_hm1_complement_rank(hm1):
    s = L.Sublattice(hm1.lattice, (hm1.h, *hm1.sigma))
    assert L.orthogonal_complement(hm1.lattice, s).rank == 19


@pytest.mark.parametrize("label", [m["label"] for m in catalog_models()])
def test_catalog_expectations(label):
    spec = model(label)
    exp = spec["expected"]
    mi = inv.build_model_involution(spec)
    rep = inv.validate_marking(mi)
    if "rejected" in exp:
        assert exp["rejected"] in rep.violations
        with pytest.raises(inv.InvalidMarkingError):
            inv.invariants(mi)
        return
    assert rep.ok
    got = inv.invariants(mi)
    assert (got.m, got.a, got.t, got.delta, got.r) == (exp["m"], exp["a"], exp["t"], exp["delta"], exp["r"])
    if spec.get("scheme"):
        s = parse_viro(spec["scheme"])
        assert scheme_to_invariants(s, spec["divtype"], exp["r"]) == (exp["a"], exp["t"], exp["delta"], exp["r"])
    if got.delta == 0:
        coeffs = inv.characteristic_decomposition(mi)
        assert coeffs is not None and coeffs[0] == 0


def test_two_positive_squares_error():
    with pytest.raises(inv.InvalidMarkingError, match="one positive square"):
        inv.invariants(build("HM1-two-positive"))


def test_orthogonality_violation(hm1):
    s1, _ = hm1.sigma_pairs[0]
    bad = inv.MarkedInvolution(hm1.lattice, hm1.h, ((s1, s1),), hm1.phi)
    rep = inv.validate_marking(bad)
    assert "orthogonality" in rep.violations
    with pytest.raises(inv.InvalidMarkingError):
        inv.invariants(bad)


def test_primitivity_violation():
    # h = e + f and s' = e - f in the same U summand: (h + s')/2 = e
    rep = inv.validate_marking(build("HM1-real-node"))
    assert rep.first == "primitivity"
    assert "real_node" in rep.violations


def test_report_lists_every_violation(hm1):
    s1, s2 = hm1.sigma_pairs[0]
    bad = inv.MarkedInvolution(hm1.lattice, tuple(2 * x for x in hm1.h), ((s1, s2),), hm1.phi)
    assert "polarization" in inv.validate_marking(bad).violations


@pytest.mark.parametrize("label", ["HM1-m2"])
def test_stable_under_reordering_and_swaps(label):
    mi = build(label)
    base = inv.invariants(mi)
    for perm in itertools.permutations(mi.sigma_pairs):
        for flips in itertools.product((False, True), repeat=len(perm)):
            pairs = tuple((b, a) if f else (a, b) for (a, b), f in zip(perm, flips))
            assert inv.invariants(inv.MarkedInvolution(mi.lattice, mi.h, pairs, mi.phi)) == base


def test_marked_involution_json_round_trip(hm1, tmp_path):
    obj = hm1.to_json()
    assert set(obj) == {"lattice", "h", "sigma", "phi"}
    again = inv.MarkedInvolution.from_json(obj)
    assert inv.invariants(again) == inv.invariants(hm1)
    import json
    p = tmp_path / "hm1.json"
    p.write_text(json.dumps(obj))
    assert inv.invariants(inv.marked_involution_from_file(str(p))) == inv.invariants(hm1)


def test_build_rejects_non_k3_blocks():
    with pytest.raises(ValueError, match="tile"):
        inv.build_model_involution({"blocks": [{"name": "U", "action": "-1"}], "h": [[0, [1, 1]]], "sigma": []})
    with pytest.raises(ValueError):
        inv.build_model_involution({"blocks": [{"name": "U", "action": "rotate"}], "h": [], "sigma": []})


def test_hom_invariants_validation():
    with pytest.raises(ValueError):
        inv.HomInvariants(1, 8, 9, 0, None)
    with pytest.raises(ValueError):
        inv.HomInvariants(1, 8, 9, 1, 0)
    with pytest.raises(ValueError):
        inv.HomInvariants(1, 8, 9, 0, 2)


def test_s_forms():
    assert inv.s_plus_form(1) == forms.FiniteQuadraticForm.cyclic(4, F(-1, 4))
    minus = inv.s_minus_form(1)
    assert minus.orders == (4, 2) and minus.q == (F(7, 4), F(1, 2))
    assert forms.profile(inv.s_plus_form(2)) == forms.Profile(2, 4, "odd")
    with pytest.raises(ValueError):
        inv.s_plus_form(0)
    with pytest.raises(ValueError):
        inv.s_minus_form(0)


def test_s_plus_form_matches_lattice():
    # p_i = s'_i - s''_i spans <-4>^m
    for m in range(1, 4):
        disc = L.discriminant_form(L.direct_sum(*[L.make_standard("minus_four")] * m))
        assert forms.is_isomorphic(disc, inv.s_plus_form(m))


def test_q_r_form():
    q1 = inv.q_r_form(1)
    assert q1.orders == (2,) and q1.q == (F(1),)
    assert inv.q_r_form(2).size == 4
    for m in range(1, 6):
        f = inv.q_r_form(m)
        assert f.size == 2 ** m
        assert forms.profile(f).period <= 2
    with pytest.raises(ValueError):
        inv.q_r_form(0)


def test_q_r_characteristic_element_sum_of_crossing_generators():
    # with q = 1 and b = 0 on every generator, q(sum of r generators) = r mod 2
    for m in range(1, 4):
        f = inv.q_r_form(m)
        for r in range(m + 1):
            v = tuple(int(i < r) for i in range(m))
            assert f.value(v) == F(r % 2)


def test_c_v_and_epsilon_examples():
    assert [inv.c_v(r) for r in (0, 1, 6)] == [0, 2, 0]
    assert [inv.epsilon_v_plus(r) for r in (0, 1, 3)] == [0, 1, 0]
    assert inv.epsilon_via_discriminant(3, 2) == 1
    assert inv.epsilon_via_discriminant(5, 0) == 0
    assert inv.epsilon_via_discriminant(4, 4) == 0
    with pytest.raises(ValueError):
        inv.epsilon_via_discriminant(2, 3)


def test_lemma_epsilon_examples():
    assert inv.lemma_epsilon_identity(0)
    assert inv.lemma_epsilon_identity(1)
    assert inv.lemma_epsilon_identity(4)


@given(st.integers(0, 60))
def test_lemma_epsilon_identity_property(r):
    assert inv.lemma_epsilon_identity(r)
    for m in range(max(r, 1), r + 4):
        assert inv.epsilon_via_discriminant(m, r) == inv.epsilon_v_plus(r)


def test_epsilon_counts_factors_of_five():
    # the odd part of the discriminant is 5^k times a square, k = #{odd i <= r} = ceil(r/2)
    for m in range(1, 7):
        for r in range(m + 1):
            fives = sum(1 for i in range(1, r + 1) if i % 2)
            assert fives == (r + 1) // 2
            assert inv.epsilon_via_discriminant(m, r) == fives % 2


def test_bc1_examples():
    assert inv.boundary_condition_bc1(2, 1, 0)
    assert inv.boundary_condition_bc1(10, 9, 0)
    assert not inv.boundary_condition_bc1(10, 9, 1)
    assert inv.boundary_condition_bc1(4, 9, 3)  # only constrains a = 1 + t


def test_bc1_equivalence_exhaustive():
    for a in range(21):
        for r in range(11):
            assert inv.boundary_condition_bc1(a, a - 1, r) == ((2 * r - (a - 2)) % 8 == 0)


def test_arithmetic_conditions_examples():
    assert inv.arithmetic_conditions(1, 2, 1, 0, 0).ok
    rep = inv.arithmetic_conditions(1, 2, 1, 0, 1)
    assert not rep.ok and "iv" in rep.failed()
    assert inv.arithmetic_conditions(1, 8, 9, 0, 0).ok
    assert not inv.arithmetic_conditions(5, 10, 9, 1)["iii"]
    assert inv.arithmetic_conditions(5, 10, 9, 0, 0)["iii"]
    with pytest.raises(ValueError):
        inv.arithmetic_conditions(1, 2, 1, 1, 0)
    with pytest.raises(ValueError):
        inv.arithmetic_conditions(1, 2, 1, 0)


def test_gamma_plus_forms():
    even, odd = inv.gamma_plus_form(0), inv.gamma_plus_form(1)
    assert even.q == (F(1, 2), F(3, 2)) and odd.q == (F(1, 2), F(1, 2))
    assert forms.gauss_signature(even) == 0 and forms.gauss_signature(odd) == 2
