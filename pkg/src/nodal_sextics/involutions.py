"""Marked geometric involutions on the K3 lattice and their invariants.

A marked involution is (lattice, h, sigma, phi): a polarization vector of
square 2, m pairs of nodal roots swapped (up to sign) by phi, and the
involution itself. The invariants (a, t, delta, r) and the arithmetic
existence conditions live here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import linalg
from .forms import (
    FiniteQuadraticForm,
    SubgroupAntiIsometry,
    glue,
    orthogonal_sum,
    subform,
    two_adic_unit_square_class,
)
from .lattice import (
    IntLattice,
    LatticeInvolution,
    Sublattice,
    direct_sum,
    discriminant_group,
    fixed_sublattice,
    is_even,
    is_primitive_sublattice,
    make_standard,
    signature,
    twisted_characteristic_vector,
)

Vector = tuple[int, ...]


class InvalidMarkingError(ValueError):
    pass


@dataclass(frozen=True)
class ConditionReport:
    """Named boolean checks, in evaluation order."""

    results: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.results)

    def failed(self) -> list[str]:
        return [k for k, v in self.results if not v]

    def __getitem__(self, key: str) -> bool:
        return dict(self.results)[key]

    def as_dict(self) -> dict[str, bool]:
        return dict(self.results)


@dataclass(frozen=True)
class MarkedInvolution:
    lattice: IntLattice
    h: Vector
    sigma_pairs: tuple[tuple[Vector, Vector], ...]
    phi: LatticeInvolution
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        pairs = tuple((tuple(int(x) for x in s1), tuple(int(x) for x in s2)) for s1, s2 in self.sigma_pairs)
        object.__setattr__(self, "sigma_pairs", pairs)

    @property
    def m(self) -> int:
        return len(self.sigma_pairs)

    @property
    def sigma(self) -> list[Vector]:
        return [s for pair in self.sigma_pairs for s in pair]

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "h": list(self.h),
            "sigma": [[list(a), list(b)] for a, b in self.sigma_pairs],
            "phi": [list(r) for r in self.phi.matrix],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MarkedInvolution":
        return cls(
            IntLattice.from_json(obj["lattice"]),
            tuple(obj["h"]),
            tuple((tuple(a), tuple(b)) for a, b in obj["sigma"]),
            LatticeInvolution(obj["phi"]),
            obj.get("label", ""),
        )


@dataclass(frozen=True)
class HomInvariants:
    m: Optional[int]
    a: int
    t: int
    delta: int
    r: Optional[int] = None

    def __post_init__(self):
        if self.delta not in (0, 1):
            raise ValueError("delta is 0 or 1")
        if (self.r is None) != (self.delta == 1):
            raise ValueError("r is defined exactly when delta = 0")
        if self.r is not None and self.m is not None and not 0 <= self.r <= self.m:
            raise ValueError("need 0 <= r <= m")

    def key(self) -> tuple:
        return (self.a, self.t, self.delta, self.r)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[str]:
        return self.violations[0] if self.violations else None


def validate_marking(mi: MarkedInvolution) -> ValidationReport:
    """Check every condition on a marked geometric involution.

    All violated clauses are reported, in a fixed order; `first` is the
    earliest one.
    """
    lat = mi.lattice
    out: list[str] = []
    if not (is_even(lat) and lat.is_unimodular()):
        out.append("unimodularity")
    if lat.square(mi.h) != 2:
        out.append("polarization")
    sigma = mi.sigma
    if any(lat.square(s) != -2 for s in sigma):
        out.append("roots")
    if any(lat.dot(s, t) != 0 for i, s in enumerate(sigma) for t in sigma[i + 1:]):
        out.append("orthogonality")
    if any(lat.dot(s, mi.h) != 0 for s in sigma):
        out.append("polarization_orthogonality")
    try:
        s_lat = Sublattice(lat, (mi.h, *sigma))
        primitive = is_primitive_sublattice(lat, s_lat)
    except ValueError:
        primitive = False
    if not primitive:
        out.append("primitivity")
    phi = mi.phi
    try:
        phi.check(lat)
    except ValueError:
        out.append("involution")
        return ValidationReport(tuple(out))
    if phi(mi.h) != tuple(-x for x in mi.h):
        out.append("anti_polarization")
    if any(phi(s) == tuple(-x for x in s) for s in sigma):
        out.append("real_node")
    if any(phi(s1) != tuple(-x for x in s2) or phi(s2) != tuple(-x for x in s1)
           for s1, s2 in mi.sigma_pairs):
        out.append("pairing")
    plus = fixed_sublattice(lat, phi, 1).lattice()
    if plus.rank == 0 or plus.determinant == 0 or signature(plus)[0] != 1:
        out.append("one_positive_square")
    minus = fixed_sublattice(lat, phi, -1)
    if not any(lat.dot(x, mi.h) % 2 for x in minus.vectors):
        out.append("property_star")
    return ValidationReport(tuple(out))


def _decompose_mod2(vectors: Sequence[Vector], target: Vector) -> Optional[list[int]]:
    """Coefficients c with sum c_i v_i = target mod 2, required unique."""
    system = linalg.transpose(vectors)
    sol, nullity = linalg.solve_mod2(system, target)
    if sol is not None and nullity:
        raise AssertionError("S/2S does not embed mod 2; S is not primitive")
    return sol


def invariants(mi: MarkedInvolution) -> HomInvariants:
    report = validate_marking(mi)
    if not report.ok:
        if "one_positive_square" in report.violations:
            raise InvalidMarkingError("not geometric: the invariant lattice needs exactly one "
                                      f"positive square (violations: {', '.join(report.violations)})")
        raise InvalidMarkingError(f"invalid marking: {report.first}")
    lat, phi = mi.lattice, mi.phi
    plus = fixed_sublattice(lat, phi, 1).lattice()
    disc = discriminant_group(plus)
    if any(d != 2 for d in disc):
        raise InvalidMarkingError("discriminant group of the invariant lattice is not 2-elementary")
    a = len(disc)
    _, t = signature(plus)
    alpha = twisted_characteristic_vector(lat, phi)
    coeffs = _decompose_mod2([mi.h, *mi.sigma], alpha)
    if coeffs is None:
        return HomInvariants(mi.m, a, t, 1, None)
    if coeffs[0]:
        raise AssertionError("characteristic class has an h component despite property (*)")
    pair_coeffs = [(coeffs[1 + 2 * i], coeffs[2 + 2 * i]) for i in range(mi.m)]
    if any(c1 != c2 for c1, c2 in pair_coeffs):
        raise AssertionError("characteristic class is not invariant under the involution")
    r = sum(c1 for c1, _ in pair_coeffs)
    return HomInvariants(mi.m, a, t, 0, r)


def characteristic_decomposition(mi: MarkedInvolution) -> Optional[list[int]]:
    """Mod-2 coefficients of alpha on (h, s'_1, s''_1, ...), or None if delta = 1."""
    alpha = twisted_characteristic_vector(mi.lattice, mi.phi)
    return _decompose_mod2([mi.h, *mi.sigma], alpha)


# --- finite forms attached to S = <h> + <-2>^(2m) -------------------------

def _require_m(m: int) -> None:
    if m < 1:
        raise ValueError("need at least one pair of nodes")


def s_plus_form(m: int) -> FiniteQuadraticForm:
    """Discriminant form of <p_1..p_m>, p_i = s'_i - s''_i of square -4."""
    _require_m(m)
    return orthogonal_sum(*[FiniteQuadraticForm.cyclic(4, Fraction(-1, 4))] * m)


def s_minus_form(m: int) -> FiniteQuadraticForm:
    """Discriminant form of <n_1..n_m, h>; the last generator is [h/2]."""
    _require_m(m)
    return orthogonal_sum(s_plus_form(m), FiniteQuadraticForm.cyclic(2, Fraction(1, 2)))


@lru_cache(maxsize=None)
def q_r_form(m: int) -> FiniteQuadraticForm:
    """Glue of the 2-torsion of A_{S+} with the pair part of the 2-torsion of A_{S-}."""
    _require_m(m)
    sp, sm = s_plus_form(m), s_minus_form(m)
    unit = [tuple(2 * int(i == j) for j in range(m)) for i in range(m)]
    gamma_plus = subform(sp, unit)
    gamma_minus = subform(sm, [u + (0,) for u in unit])
    # both come out as (Z/2)^m on the images of [p_i/2] resp. [n_i/2]
    gens = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    return glue(gamma_plus, gamma_minus, SubgroupAntiIsometry(gens, gens))


def gamma_plus_form(r: int) -> FiniteQuadraticForm:
    second = Fraction(1, 2) if r % 2 else Fraction(-1, 2)
    return orthogonal_sum(FiniteQuadraticForm.cyclic(2, Fraction(1, 2)),
                          FiniteQuadraticForm.cyclic(2, second))


def _reduce_mod8_cv(x: Fraction) -> int:
    for c in (-1, 0, 1, 2):
        if (x - c) % 8 == 0:
            return c
    raise ValueError(f"{x} is not congruent to -1, 0, 1 or 2 mod 8")


def c_v(r: int) -> int:
    """The invariant c_v in {-1, 0, 1, 2} (mod 8) for r crossing pairs."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    # q_r splits as r-independent orthogonal copies of the m = 1 form, so
    # q(v_q) for v_q = sum of r generators is r * q(generator)
    per_pair = q_r_form(1).q[0]
    half = r * per_pair
    # c_v / 2 = q(v_q) mod 2 pins c_v mod 4; the residue set fixes it mod 8
    for c in (-1, 0, 1, 2):
        if (Fraction(c, 2) - half) % 2 == 0:
            return c
    raise ValueError("no admissible c_v")


def epsilon_v_plus(r: int) -> int:
    if r < 0:
        raise ValueError("r must be nonnegative")
    return ((r + 1) // 2) % 2


def epsilon_via_discriminant(m: int, r: int) -> int:
    """epsilon from the discriminant of a diagonal 2-adic lattice realizing eta."""
    if r < 0 or r > m:
        raise ValueError("need 0 <= r <= m")
    squares = []
    for i in range(1, m + 1):
        beta_sq = Fraction(-5, 4) if (i <= r and i % 2) else Fraction(-1, 4)
        squares.append(16 * beta_sq)  # b_i = 4 beta_i up to a unit
    disc = Fraction(1)
    for s in squares:
        disc *= s
    num = disc.numerator
    while num % 4 == 0:
        num //= 4
    if num % 2 == 0:
        raise AssertionError("discriminant has an odd power of 2")
    cls = two_adic_unit_square_class(Fraction(num, disc.denominator))
    return 1 if abs(cls) == 5 else 0


def lemma_epsilon_identity(r: int) -> bool:
    return (4 * epsilon_v_plus(r) + c_v(r) + 2 * r) % 8 == 0


def boundary_condition_bc1(a: int, t: int, r: int) -> bool:
    """Boundary condition: when a = 1 + t, 1 - t = 4 eps + c_v mod 8."""
    if a != 1 + t:
        return True
    return (1 - t - 4 * epsilon_v_plus(r) - c_v(r)) % 8 == 0


def arithmetic_conditions(m: int, a: int, t: int, delta: int, r: Optional[int] = None) -> ConditionReport:
    if delta == 1 and r is not None:
        raise ValueError("r is only defined when delta = 0")
    if delta == 0 and r is None:
        raise ValueError("r is required when delta = 0")
    results = [
        ("i", a <= 1 + t <= 20 - a),
        ("ii", (a - 1 - t) % 2 == 0),
        ("iii", 2 * m < a or (2 * m == a and delta == 0)),
        ("iv", delta == 1 or (2 * r - (1 - t)) % 4 == 0),
        ("v", delta == 1 or a != 1 + t or (2 * r - (a - 2)) % 8 == 0),
    ]
    return ConditionReport(tuple(results))


# --- block models -------------------------------------------------------------

def build_model_involution(spec: dict) -> MarkedInvolution:
    """Assemble a marked involution on the K3 lattice from block data.

    spec = {"blocks": [{"name": "U", "action": "-1"}, ...],
            "h": [[block, [local coords]], ...],
            "sigma": [[[[block, coords], ...], [[block, coords], ...]], ...]}

    Actions are "+1", "-1", "swap_negate" (the block is two copies of the
    named lattice and (x, y) -> (-y, -x)), or {"matrix": [[...]]}.
    Vectors are sums of placements; a swap_negate block takes coordinates
    of length twice the rank of the named lattice.
    """
    parts: list[IntLattice] = []
    actions: list[list[list[int]]] = []
    offsets: list[int] = []
    off = 0
    for blk in spec["blocks"]:
        base = make_standard(blk["name"])
        act = blk["action"]
        n = base.rank
        if act == "swap_negate":
            parts += [base, base]
            mat = [[0] * (2 * n) for _ in range(2 * n)]
            for i in range(n):
                mat[i][n + i] = -1
                mat[n + i][i] = -1
            size = 2 * n
        else:
            parts.append(base)
            if act in ("+1", "-1"):
                sgn = 1 if act == "+1" else -1
                mat = [[sgn * int(i == j) for j in range(n)] for i in range(n)]
            elif isinstance(act, dict) and "matrix" in act:
                mat = [list(r) for r in act["matrix"]]
            else:
                raise ValueError(f"unknown block action {act!r}")
            size = n
        offsets.append(off)
        actions.append(mat)
        off += size
    lat = direct_sum(*parts, label=spec.get("label", ""))
    if not (lat.rank == 22 and is_even(lat) and lat.is_unimodular() and signature(lat) == (3, 19)):
        raise ValueError("blocks do not tile the K3 lattice")
    phi = [[0] * off for _ in range(off)]
    for start, mat in zip(offsets, actions):
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                phi[start + i][start + j] = x

    def place(placements) -> Vector:
        v = [0] * off
        for block, coords in placements:
            for k, x in enumerate(coords):
                v[offsets[block] + k] += x
        return tuple(v)

    h = place(spec["h"])
    pairs = tuple((place(p1), place(p2)) for p1, p2 in spec["sigma"])
    return MarkedInvolution(lat, h, pairs, LatticeInvolution(phi), spec.get("label", ""))


def load_marked_involution(obj: dict) -> MarkedInvolution:
    """Either a literal {"lattice", "h", "sigma", "phi"} or a block spec."""
    if "blocks" in obj:
        return build_model_involution(obj)
    return MarkedInvolution.from_json(obj)


def marked_involution_from_file(path: str) -> MarkedInvolution:
    with open(path, encoding="utf-8") as fh:
        return load_marked_involution(json.load(fh))
