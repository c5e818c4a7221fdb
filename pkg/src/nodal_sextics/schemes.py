"""Real schemes of plane sextics in Viro notation.

A scheme is a forest of ovals. Each oval is stored as the tuple of its
children, so a forest is a tuple of such tuples, canonically sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

Oval = tuple  # tuple of child ovals

_UNICODE = {"open": "⟨", "close": "⟩", "sqcup": "⊔", "empty": "∅"}
_ASCII = {"open": "<", "close": ">", "sqcup": "u", "empty": "empty"}


def _size(o: Oval) -> int:
    return 1 + sum(_size(c) for c in o)


def _canon(forest) -> tuple:
    kids = [_canon(c) for c in forest]
    return tuple(sorted(kids, key=lambda c: (_size(c), _render_body(c, _UNICODE))))


def _render_body(forest: tuple, sym: dict) -> str:
    # forest is sorted; empty ovals are collected into one count
    empties = sum(1 for o in forest if not o)
    terms = [str(empties)] if empties else []
    terms += [f"1{sym['open']}{_render_body(o, sym)}{sym['close']}" for o in forest if o]
    return f" {sym['sqcup']} ".join(terms)


@dataclass(frozen=True)
class RealScheme:
    forest: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "forest", _canon(self.forest))

    @classmethod
    def flat(cls, n: int) -> "RealScheme":
        return cls(((),) * n)

    @classmethod
    def nest(cls, outside: int, inside: int) -> "RealScheme":
        """<outside u 1<inside>>."""
        return cls(((),) * outside + (((),) * inside,))

    def is_empty(self) -> bool:
        return not self.forest

    def __str__(self) -> str:
        return render_viro(self)

    def to_json(self):
        """Nested arrays: each oval is the list of its children."""
        def conv(o):
            return [conv(c) for c in o]
        return conv(self.forest)

    @classmethod
    def from_json(cls, obj) -> "RealScheme":
        def conv(o):
            if not isinstance(o, list):
                raise ValueError("scheme JSON must be nested arrays")
            return tuple(conv(c) for c in o)
        return cls(conv(obj))


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def take(self, *tokens: str) -> str:
        self.skip()
        for tok in tokens:
            if self.text.startswith(tok, self.pos):
                self.pos += len(tok)
                return tok
        want = " or ".join(repr(t) for t in tokens)
        raise ParseError(f"expected {want}", self.pos)

    def number(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a number", start)
        n = int(self.text[start:self.pos])
        if n == 0:
            raise ParseError("oval count must be positive", start)
        return n

    def scheme(self) -> tuple:
        if self.peek("∅") or self.peek("empty"):
            self.take("∅", "empty")
            return ()
        self.take("⟨", "<")
        body = self.body()
        self.take("⟩", ">")
        return body

    def body(self) -> tuple:
        ovals = list(self.term())
        while self.peek("⊔") or self.peek("u"):
            self.take("⊔", "u")
            ovals += self.term()
        return tuple(ovals)

    def term(self) -> tuple:
        n = self.number()
        if self.peek("⟨") or self.peek("<"):
            self.take("⟨", "<")
            inner = self.body()
            self.take("⟩", ">")
            return (inner,) * n
        return ((),) * n


def parse_viro(text: str) -> RealScheme:
    p = _Parser(text)
    forest = p.scheme()
    p.skip()
    if p.pos != len(text):
        raise ParseError("unexpected trailing input", p.pos)
    return RealScheme(forest)


def render_viro(s: RealScheme, ascii: bool = False) -> str:
    sym = _ASCII if ascii else _UNICODE
    if s.is_empty():
        return sym["empty"]
    return f"{sym['open']}{_render_body(s.forest, sym)}{sym['close']}"


@dataclass(frozen=True)
class Counts:
    l: int
    o_even: int
    o_odd: int
    injective_pairs: int
    max_depth: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.l, self.o_even, self.o_odd, self.injective_pairs, self.max_depth)


def _walk(forest: tuple, depth: int = 0) -> Iterator[tuple[Oval, int]]:
    for o in forest:
        yield o, depth
        yield from _walk(o, depth + 1)


def counts(s: RealScheme) -> Counts:
    l = even = odd = pairs = 0
    deepest = 0
    for o, d in _walk(s.forest):
        l += 1
        if d % 2:
            odd += 1
        else:
            even += 1
        pairs += d  # one injective pair with each ancestor
        deepest = max(deepest, d)
    return Counts(l, even, odd, pairs, deepest)


def euler_char_nonorientable_half(s: RealScheme) -> int:
    """chi of the union of even-depth regions (the one containing the Moebius band)."""
    if s.is_empty():
        raise ValueError("empty scheme: the non-orientable half is not defined this way")
    chi = 1 - len(s.forest)
    for o, d in _walk(s.forest):
        if d % 2 == 0:
            continue
        # the region just inside an odd oval is a disk minus its children
        chi += 1 - len(o)
    return chi


def scheme_to_invariants(s: RealScheme, divtype: str, r: Optional[int] = None) -> tuple:
    """(a, t, delta, r) for a scheme, dividing type and crossing count."""
    if divtype not in ("I", "II"):
        raise ValueError("divtype must be 'I' or 'II'")
    if divtype == "II" and r is not None and not (s.is_empty() and r == 0):
        raise ValueError("r is only defined for dividing curves")
    if s.is_empty():
        if divtype == "I":
            raise ValueError("an empty real part cannot be dividing")
        return (10, 9, 0, 0)
    if divtype == "I" and r is None:
        raise ValueError("r is required for dividing curves")
    c = counts(s)
    a = 11 - c.l
    t = 9 + euler_char_nonorientable_half(s)
    if a + c.l != 11:
        raise AssertionError("a + l must be 11")
    if divtype == "I":
        return (a, t, 0, r)
    return (a, t, 1, None)


def harnack_check(l: int, m: int, divtype: str) -> bool:
    bound = 11 - 2 * m
    if l > bound:
        return False
    return l < bound or divtype == "I"


def arnold_congruence(s: RealScheme, r: int) -> bool:
    c = counts(s)
    return (c.o_even - c.o_odd - (9 - 2 * r)) % 4 == 0


def no_injective_pairs_rule(s: RealScheme, r: int) -> bool:
    c = counts(s)
    if c.injective_pairs > 0:
        return True
    return c.l == 9 - 2 * r


def rokhlin_identity(pi_minus: int, pi_plus: int, l: int, r: int) -> bool:
    return 2 * (pi_minus - pi_plus) + l == 9 - 2 * r


@lru_cache(maxsize=None)
def _forests(n: int, levels: int) -> tuple[tuple, ...]:
    """All canonical forests with exactly n ovals and at most `levels` levels."""
    if n == 0:
        return ((),)
    if levels == 0:
        return ()
    # build multisets of trees; a tree of size k is one oval over a forest of k-1
    trees_by_size = {k: [tuple(f) for f in _forests(k - 1, levels - 1)] for k in range(1, n + 1)}
    flat = [(k, i) for k in range(1, n + 1) for i in range(len(trees_by_size[k]))]
    out = []

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(_canon(tuple(trees_by_size[k][i] for k, i in acc)))
            return
        for j in range(start, len(flat)):
            k, _ = flat[j]
            if k <= remaining:
                acc.append(flat[j])
                rec(j, remaining - k, acc)
                acc.pop()

    rec(0, n, [])
    return tuple(sorted(set(out), key=lambda f: render_viro(RealScheme(f))))


def enumerate_schemes(max_ovals: int, max_depth: int) -> list[RealScheme]:
    """All schemes with at most max_ovals ovals and at most max_depth nesting levels.

    Ordered by oval count, then rendered text. Includes the empty scheme.
    """
    out = []
    for n in range(max_ovals + 1):
        out += [RealScheme(f) for f in _forests(n, max_depth)]
    return out
