"""Integer lattices given by Gram matrices, with exact invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .forms import FiniteQuadraticForm
from .linalg import Matrix


class DegenerateLatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntLattice:
    gram: Matrix
    label: str = ""

    def __post_init__(self):
        gram = linalg.as_matrix(self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        return linalg.bilinear(self.gram, x, y)

    def square(self, x: Sequence[int]) -> int:
        return self.dot(x, x)

    @property
    def determinant(self) -> int:
        return linalg.determinant(self.gram)

    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram], "label": self.label}

    @classmethod
    def from_json(cls, obj: dict) -> "IntLattice":
        return cls(obj["gram"], obj.get("label", ""))


@dataclass(frozen=True)
class Sublattice:
    """Sublattice of `ambient` spanned by `vectors` (ambient coordinates)."""

    ambient: IntLattice
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        if any(len(v) != self.ambient.rank for v in vecs):
            raise ValueError("basis vectors must live in the ambient lattice")
        if vecs and len(linalg.hermite_rows(vecs, self.ambient.rank)) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "vectors", vecs)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def lattice(self, label: str = "") -> IntLattice:
        """The sublattice with its induced Gram matrix."""
        g = self.ambient
        return IntLattice(tuple(tuple(g.dot(x, y) for y in self.vectors) for x in self.vectors), label)

    def basis_matrix(self) -> Matrix:
        return linalg.from_columns(self.vectors, self.ambient.rank)

    def to_json(self) -> dict:
        return {"basis": [list(r) for r in self.basis_matrix()]}

    @classmethod
    def from_json(cls, ambient: IntLattice, obj: dict) -> "Sublattice":
        return cls(ambient, tuple(linalg.columns(obj["basis"])))


@dataclass(frozen=True)
class LatticeInvolution:
    """Involution acting on ambient coordinates: x -> matrix @ x."""

    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", linalg.as_matrix(self.matrix))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return linalg.matvec(self.matrix, x)

    def check(self, lattice: IntLattice) -> None:
        m = self.matrix
        n = lattice.rank
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError("involution has the wrong size")
        if linalg.matmul(m, m) != linalg.identity(n):
            raise ValueError("matrix does not square to the identity")
        if linalg.matmul(linalg.matmul(linalg.transpose(m), lattice.gram), m) != lattice.gram:
            raise ValueError("matrix does not preserve the Gram form")

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeInvolution":
        return cls(obj["matrix"])


def _e8_minus() -> Matrix:
    # Dynkin chain 0-1-2-3-4-5-6 with node 7 attached to node 4, negated.
    edges = [(i, i + 1) for i in range(6)] + [(4, 7)]
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return linalg.as_matrix(g)


_STANDARD = {
    "U": ((0, 1), (1, 0)),
    "E8_minus": _e8_minus(),
    "A1_minus": ((-2,),),
    "two": ((2,),),
    "minus_four": ((-4,),),
}


def make_standard(name: str) -> IntLattice:
    if name == "K3":
        u = make_standard("U")
        e8 = make_standard("E8_minus")
        return direct_sum(u, u, u, e8, e8, label="K3")
    try:
        return IntLattice(_STANDARD[name], name)
    except KeyError:
        raise ValueError(f"unknown standard lattice {name!r}") from None


def direct_sum(*parts: IntLattice, label: str = "") -> IntLattice:
    n = sum(p.rank for p in parts)
    g = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i, row in enumerate(p.gram):
            g[off + i][off:off + p.rank] = row
        off += p.rank
    if not label:
        label = " + ".join(p.label or "?" for p in parts)
    return IntLattice(linalg.as_matrix(g), label)


def scaled(l: IntLattice, k: int, label: str = "") -> IntLattice:
    return IntLattice(tuple(tuple(k * x for x in row) for row in l.gram), label or f"{l.label}({k})")


def signature(l: IntLattice) -> tuple[int, int]:
    """Inertia indices (positive, negative) of a nondegenerate Gram matrix."""
    if l.rank and l.determinant == 0:
        raise DegenerateLatticeError("signature needs a nondegenerate lattice")
    a = [[Fraction(x) for x in row] for row in l.gram]
    pos = neg = 0
    while a:
        n = len(a)
        i = next((k for k in range(n) if a[k][k] != 0), None)
        if i is not None:
            p = a[i][i]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [k for k in range(n) if k != i]
            a = [[a[r][c] - a[r][i] * a[i][c] / p for c in rest] for r in rest]
            continue
        # zero diagonal: split off a hyperbolic 2x2 block
        i, j = next((r, c) for r in range(n) for c in range(n) if a[r][c] != 0)
        c = a[i][j]
        pos += 1
        neg += 1
        rest = [k for k in range(n) if k not in (i, j)]
        # inverse of [[0, c], [c, 0]] is [[0, 1/c], [1/c, 0]]
        a = [[a[r][s] - (a[r][i] * a[j][s] + a[r][j] * a[i][s]) / c for s in rest] for r in rest]
    return pos, neg


def is_even(l: IntLattice) -> bool:
    return all(l.gram[i][i] % 2 == 0 for i in range(l.rank))


smith_normal_form = linalg.smith_normal_form


def discriminant_group(l: IntLattice) -> list[int]:
    """Invariant factors (>1, ascending, each dividing the next) of L*/L."""
    if l.rank and l.determinant == 0:
        raise DegenerateLatticeError("discriminant group needs a nondegenerate lattice")
    if l.rank == 0:
        return []
    return [d for d in linalg.invariant_factors(l.gram) if d != 1]


def discriminant_form(l: IntLattice) -> FiniteQuadraticForm:
    if not is_even(l):
        raise ValueError("discriminant quadratic form needs an even lattice")
    if l.rank and l.determinant == 0:
        raise DegenerateLatticeError("discriminant form needs a nondegenerate lattice")
    if l.rank == 0:
        return FiniteQuadraticForm.trivial()
    _, d, v = linalg.smith_normal_form(l.gram)
    gens = []
    orders = []
    for i in range(l.rank):
        if d[i][i] > 1:
            orders.append(d[i][i])
            gens.append(tuple(Fraction(v[k][i], d[i][i]) for k in range(l.rank)))
    q = [l.dot(g, g) for g in gens]
    b = [[l.dot(g, h) for h in gens] for g in gens]
    return FiniteQuadraticForm(tuple(orders), tuple(q), tuple(tuple(r) for r in b))


def orthogonal_complement(l: IntLattice, s: Sublattice) -> Sublattice:
    if not s.vectors:
        return Sublattice(l, tuple(linalg.identity(l.rank)))
    pairing = linalg.matmul(s.vectors, l.gram)
    return Sublattice(l, tuple(linalg.integer_kernel(pairing, l.rank)))


def is_primitive_sublattice(l: IntLattice, s: Sublattice) -> bool:
    if not s.vectors:
        return True
    factors = linalg.invariant_factors(s.vectors)
    return len(factors) == s.rank and all(f == 1 for f in factors)


def fixed_sublattice(l: IntLattice, phi: LatticeInvolution, sign: int = 1) -> Sublattice:
    """The saturated sublattice {x : phi(x) = sign * x}."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    phi.check(l)
    n = l.rank
    m = [[phi.matrix[i][j] - (sign if i == j else 0) for j in range(n)] for i in range(n)]
    return Sublattice(l, tuple(linalg.integer_kernel(m, n)))


def twisted_characteristic_vector(l: IntLattice, phi: LatticeInvolution) -> tuple[int, ...]:
    """A 0/1 vector alpha with alpha.phi(x) = x.phi(x) mod 2 for every x."""
    phi.check(l)
    g_phi = linalg.matmul(l.gram, phi.matrix)
    rhs = [g_phi[j][j] for j in range(l.rank)]
    # alpha . phi(e_j) = (phi^T G alpha)_j
    system = linalg.transpose(g_phi)
    alpha, _ = linalg.solve_mod2(system, rhs)
    if alpha is None:
        raise ValueError("no twisted characteristic vector (lattice not unimodular?)")
    alpha = tuple(alpha)
    for j in range(l.rank):
        e = tuple(int(k == j) for k in range(l.rank))
        if (l.dot(alpha, phi(e)) - l.dot(e, phi(e))) % 2:
            raise AssertionError("twisted characteristic check failed")
    return alpha


def lattice_from_file(path: str) -> IntLattice:
    with open(path, encoding="utf-8") as fh:
        return IntLattice.from_json(json.load(fh))
