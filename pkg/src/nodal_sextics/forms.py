"""Finite quadratic forms q: A -> Q/2Z on finite abelian groups.

A form is stored on generators: cyclic orders, the q-value of each
generator and the matrix of pairings b(g_i, g_j) in Q/Z. Elements are
integer coefficient tuples reduced modulo the orders. Everything here is
brute force over the (small) groups that show up for sextics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

from . import cyclotomic as cyc
from . import linalg

Element = tuple[int, ...]


def _mod(x: Fraction, m: int) -> Fraction:
    x = Fraction(x)
    return x - m * (x.numerator // (m * x.denominator))


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        orders = tuple(int(o) for o in self.orders)
        n = len(orders)
        q = tuple(_mod(Fraction(x), 2) for x in self.q)
        b = tuple(tuple(_mod(Fraction(x), 1) for x in row) for row in self.b)
        if len(q) != n or len(b) != n or any(len(r) != n for r in b):
            raise ValueError("inconsistent form data")
        if any(o < 1 for o in orders):
            raise ValueError("generator orders must be positive")
        for i in range(n):
            if _mod(q[i] - b[i][i], 1) != 0:
                raise ValueError(f"q(g{i}) does not reduce to b(g{i}, g{i}) mod 1")
            if _mod(orders[i] ** 2 * q[i], 2) != 0:
                raise ValueError(f"q(g{i}) is not compatible with its order")
            for j in range(n):
                if b[i][j] != b[j][i]:
                    raise ValueError("b must be symmetric")
                if _mod(orders[i] * b[i][j], 1) != 0:
                    raise ValueError(f"order of g{i} does not annihilate b(g{i}, g{j})")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)

    @classmethod
    def trivial(cls) -> "FiniteQuadraticForm":
        return cls((), (), ())

    @classmethod
    def cyclic(cls, order: int, q) -> "FiniteQuadraticForm":
        q = Fraction(q)
        return cls((order,), (q,), ((q,),))

    @property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    @property
    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(o) for o in self.orders))

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(int(c) % o for c, o in zip(x, self.orders))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a + c for a, c in zip(x, y)])

    def mul(self, k: int, x: Sequence[int]) -> Element:
        return self.reduce([k * a for a in x])

    def value(self, x: Sequence[int]) -> Fraction:
        n = len(self.orders)
        total = Fraction(0)
        for i in range(n):
            if x[i]:
                total += x[i] * x[i] * self.q[i]
                for j in range(i + 1, n):
                    if x[j]:
                        total += 2 * x[i] * x[j] * self.b[i][j]
        return _mod(total, 2)

    def pair(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        total = sum((x[i] * y[j] * self.b[i][j]
                     for i in range(len(x)) if x[i] for j in range(len(y)) if y[j]), Fraction(0))
        return _mod(total, 1)

    def order_of(self, x: Sequence[int]) -> int:
        out = 1
        for c, o in zip(x, self.orders):
            k = o // gcd(c % o, o) if c % o else 1
            out = out * k // gcd(out, k)
        return out

    def span(self, gens: Iterable[Sequence[int]]) -> frozenset[Element]:
        """Subgroup generated by `gens` (brute-force closure)."""
        group = {self.zero}
        for g in gens:
            g = self.reduce(g)
            if g in group:
                continue
            multiples = [self.zero]
            cur = g
            while cur != self.zero:
                multiples.append(cur)
                cur = self.add(cur, g)
            group = {self.add(h, m) for h in group for m in multiples}
        return frozenset(group)

    def is_degenerate(self) -> bool:
        gens = [tuple(int(i == j) for j in range(len(self.orders))) for i in range(len(self.orders))]
        return any(x != self.zero and all(self.pair(x, g) == 0 for g in gens)
                   for x in self.elements())

    def to_json(self) -> dict:
        return {
            "orders": list(self.orders),
            "q": [str(x) for x in self.q],
            "b": [[str(x) for x in row] for row in self.b],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteQuadraticForm":
        return cls(
            tuple(obj["orders"]),
            tuple(Fraction(x) for x in obj["q"]),
            tuple(tuple(Fraction(x) for x in row) for row in obj["b"]),
        )


@dataclass(frozen=True)
class Profile:
    length: int
    period: int
    parity: str


def profile(f: FiniteQuadraticForm) -> Profile:
    nontrivial = [o for o in f.orders if o > 1]
    if nontrivial:
        diag = [[o if i == j else 0 for j in range(len(nontrivial))] for i, o in enumerate(nontrivial)]
        length = sum(1 for d in linalg.invariant_factors(diag) if d > 1)
    else:
        length = 0
    period = cyc.lcm(*nontrivial) if nontrivial else 1
    even = all(f.value(x).denominator == 1 for x in f.elements())
    return Profile(length, period, "even" if even else "odd")


def orthogonal_sum(*forms: FiniteQuadraticForm) -> FiniteQuadraticForm:
    orders: list[int] = []
    q: list[Fraction] = []
    blocks = []
    for f in forms:
        orders += f.orders
        q += f.q
        blocks.append(f.b)
    n = len(orders)
    b = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for blk in blocks:
        for i, row in enumerate(blk):
            b[off + i][off:off + len(row)] = row
        off += len(blk)
    return FiniteQuadraticForm(tuple(orders), tuple(q), tuple(tuple(r) for r in b))


def rescale(f: FiniteQuadraticForm, k: int) -> FiniteQuadraticForm:
    """The form x -> k q(x) on the same group (k = -1 gives the opposite form)."""
    return FiniteQuadraticForm(f.orders, tuple(k * x for x in f.q),
                               tuple(tuple(k * x for x in row) for row in f.b))


def characteristic_element(f: FiniteQuadraticForm) -> Element:
    """The element v with b(v, x) = q(x) mod 1 for all x."""
    elems = list(f.elements())
    for v in elems:
        if all(f.pair(v, x) == _mod(f.value(x), 1) for x in elems):
            return v
    raise ValueError("form has no characteristic element")


def gauss_signature(f: FiniteQuadraticForm) -> int:
    """sigma mod 8 with sum_x exp(i pi q(x)) = sqrt|A| exp(2 pi i sigma / 8).

    Decided exactly in a cyclotomic ring; for 2-groups with q-values in
    (1/4)Z this is Z[zeta_8].
    """
    if f.is_degenerate():
        raise ValueError("Gauss signature needs a nondegenerate form")
    values = [f.value(x) for x in f.elements()]
    size = len(values)
    # |A| = square**2 * (product of primes)
    square, primes = 1, []
    rest, p = size, 2
    while rest > 1:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            primes.append(p)
        p += 1

    n = cyc.lcm(8, *(2 * v.denominator for v in values), *primes)
    total = cyc.zero(n)
    for v in values:
        # exp(i pi v) = zeta_n ** (v * n / 2)
        k = v * n / 2
        total[int(k) % n] += 1
    radius = cyc.root(n, 0, square)
    for p in primes:
        radius = cyc.mul(radius, cyc.sqrt_of_prime(p, n))
    for sigma in range(8):
        if cyc.is_zero(cyc.sub(total, cyc.rotate(radius, sigma * n // 8))):
            return sigma
    raise AssertionError("Gauss sum has the wrong absolute value")


def two_adic_unit_square_class(u) -> int:
    """Square class of an odd 2-adic unit, as one of 1, -1, 5, -5."""
    u = Fraction(u)
    if u.numerator % 2 == 0 or u.denominator % 2 == 0:
        raise ValueError("expected a 2-adic unit (odd numerator and denominator)")
    # the inverse of an odd number mod 8 is itself
    r = (u.numerator * u.denominator) % 8
    return {1: 1, 3: -5, 5: 5, 7: -1}[r]


def subquotient(f: FiniteQuadraticForm, top: Iterable[Sequence[int]],
                bottom: Iterable[Sequence[int]] = ()) -> FiniteQuadraticForm:
    """Form induced on <top>/<bottom>, with SNF-normalized generators.

    `bottom` must lie in <top>, be isotropic and orthogonal to <top>.
    """
    n = len(f.orders)
    if n == 0:
        return FiniteQuadraticForm.trivial()
    top, bottom = [tuple(v) for v in top], [tuple(v) for v in bottom]
    for z in bottom:
        if f.value(z) != 0 or any(f.pair(z, y) != 0 for y in top):
            raise ValueError("bottom subgroup must be isotropic and orthogonal to the top subgroup")
    relations = [tuple(o if i == j else 0 for j in range(n)) for i, o in enumerate(f.orders)]
    top_basis = linalg.hermite_rows(top + relations, n)
    bottom_basis = linalg.hermite_rows(bottom + relations, n)
    # coordinates of the bottom basis in terms of the top basis
    inv = linalg.rational_inverse(linalg.transpose(top_basis))
    coords = []
    for v in bottom_basis:
        c = linalg.matvec(inv, v)
        if any(x.denominator != 1 for x in c):
            raise ValueError("bottom subgroup is not contained in the top subgroup")
        coords.append([int(x) for x in c])
    rel = linalg.transpose(coords)  # columns are bottom vectors in top coordinates
    _, d, v = linalg.smith_normal_form(rel)
    bottom_cols = linalg.transpose(bottom_basis)
    moved = linalg.matmul(bottom_cols, v)
    gens = []
    orders = []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            col = [moved[k][i] for k in range(n)]
            assert all(c % di == 0 for c in col)
            gens.append(f.reduce([c // di for c in col]))
            orders.append(di)
    q = tuple(f.value(g) for g in gens)
    b = tuple(tuple(f.pair(g, h) for h in gens) for g in gens)
    out = FiniteQuadraticForm(tuple(orders), q, b)
    return out


def subform(f: FiniteQuadraticForm, gens: Iterable[Sequence[int]]) -> FiniteQuadraticForm:
    return subquotient(f, gens)


def two_torsion(f: FiniteQuadraticForm) -> list[Element]:
    """Generators of the 2-torsion subgroup."""
    return [tuple((o // 2) * int(i == j) for j in range(len(f.orders)))
            for i, o in enumerate(f.orders) if o % 2 == 0]


@dataclass(frozen=True)
class SubgroupAntiIsometry:
    domain_generators: tuple[Element, ...]
    image_generators: tuple[Element, ...]

    def graph(self, a: FiniteQuadraticForm, b: FiniteQuadraticForm) -> dict[Element, Element]:
        """Check the anti-isometry and return it as an explicit map."""
        if len(self.domain_generators) != len(self.image_generators):
            raise ValueError("generator lists differ in length")
        dom = [a.reduce(x) for x in self.domain_generators]
        img = [b.reduce(y) for y in self.image_generators]
        orders = [a.order_of(x) * b.order_of(y) for x, y in zip(dom, img)]
        mapping: dict[Element, Element] = {}
        for coeffs in itertools.product(*(range(o) for o in orders)):
            x = a.zero
            y = b.zero
            for c, dx, dy in zip(coeffs, dom, img):
                x = a.add(x, a.mul(c, dx))
                y = b.add(y, b.mul(c, dy))
            if mapping.setdefault(x, y) != y:
                raise ValueError("generator assignment does not extend to a homomorphism")
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("generator assignment is not injective")
        for x, y in mapping.items():
            if _mod(b.value(y) + a.value(x), 2) != 0:
                raise ValueError("assignment does not negate q")
        return mapping


def glue(a: FiniteQuadraticForm, b: FiniteQuadraticForm,
         gamma: SubgroupAntiIsometry) -> FiniteQuadraticForm:
    """(graph of gamma)^perp / graph of gamma inside a + b."""
    gamma.graph(a, b)
    total = orthogonal_sum(a, b)
    graph_gens = [tuple(x) + tuple(y) for x, y in zip(gamma.domain_generators, gamma.image_generators)]
    perp = [z for z in total.elements() if all(total.pair(z, g) == 0 for g in graph_gens)]
    return subquotient(total, perp, graph_gens)


def is_isomorphic(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> bool:
    """Brute-force search for an isometry f -> g."""
    if f.size != g.size:
        return False
    fn = normalize(f)
    gn = normalize(g)
    if fn.orders != gn.orders:
        return False
    k = len(fn.orders)
    g_elems = list(gn.elements())
    candidates = []
    for i in range(k):
        cand = [y for y in g_elems if gn.order_of(y) == fn.orders[i] and gn.value(y) == fn.q[i]]
        candidates.append(cand)
    image: list[Element] = []

    def extend(i: int) -> bool:
        if i == k:
            span = gn.span(image)
            return len(span) == gn.size
        for y in candidates[i]:
            if all(gn.pair(y, image[j]) == fn.b[i][j] for j in range(i)):
                image.append(y)
                if extend(i + 1):
                    return True
                image.pop()
        return False

    return extend(0)


def normalize(f: FiniteQuadraticForm) -> FiniteQuadraticForm:
    """Same form on SNF-normalized generators (invariant factors ascending)."""
    n = len(f.orders)
    return subquotient(f, [tuple(int(i == j) for j in range(n)) for i in range(n)])
