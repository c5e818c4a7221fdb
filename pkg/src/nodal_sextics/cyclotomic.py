"""Exact arithmetic in Z[zeta_N].

An element is a list of N integers: the coefficients of zeta_N**k for
k = 0..N-1. Equality is decided by reducing modulo the cyclotomic
polynomial Phi_N.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficient lists are low-to-high
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    return quot, num[:dd]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(poly)


def zero(n: int) -> list[int]:
    return [0] * n


def root(n: int, k: int, coeff: int = 1) -> list[int]:
    v = zero(n)
    v[k % n] = coeff
    return v


def add(x: list[int], y: list[int]) -> list[int]:
    return [a + b for a, b in zip(x, y)]


def sub(x: list[int], y: list[int]) -> list[int]:
    return [a - b for a, b in zip(x, y)]


def scale(x: list[int], k: int) -> list[int]:
    return [k * a for a in x]


def rotate(x: list[int], k: int) -> list[int]:
    """Multiply by zeta_N**k."""
    n = len(x)
    k %= n
    return x[-k:] + x[:-k] if k else list(x)


def mul(x: list[int], y: list[int]) -> list[int]:
    n = len(x)
    out = zero(n)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    out[(i + j) % n] += a * b
    return out


def is_zero(x: list[int]) -> bool:
    _, rem = _poly_divmod(x, list(cyclotomic_poly(len(x))))
    return not any(rem)


def sqrt_of_prime(p: int, n: int) -> list[int]:
    """sqrt(p) as an element of Z[zeta_n]; needs 8 | n for p = 2, p | n and 4 | n otherwise."""
    if p == 2:
        assert n % 8 == 0
        return add(root(n, n // 8), root(n, -n // 8))
    assert n % p == 0 and n % 4 == 0
    g = zero(n)
    for x in range(p):
        g[(n // p) * (x * x % p) % n] += 1
    if p % 4 == 1:
        return g
    # quadratic Gauss sum is i*sqrt(p) here
    return rotate(g, 3 * n // 4)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
