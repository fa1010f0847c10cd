"""Well-ordered finite sets of rationals: witness trees, the decomposition
by records of an enumeration, and the bar of non-descending probes.

An enumeration is an oracle alpha where alpha(m) = n+1 means "q_n is
emitted at step m" and alpha(m) = 0 means nothing is emitted.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .reals import RATIONALS
from .seqcode import decode


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Singleton:
    q: Fraction


@dataclass(frozen=True)
class Chain:
    children: tuple


WOTree = Union[Empty, Singleton, Chain]


@dataclass(frozen=True)
class WOCheck:
    valid: bool
    elements: frozenset
    violation: Optional[tuple] = None     # (p, q) with p in child i, q in child i+1, p >= q

    def __bool__(self):
        return self.valid


def validate_wo(tree) -> WOCheck:
    """Check that consecutive chain children are ordered, recursively."""
    if isinstance(tree, Empty):
        return WOCheck(True, frozenset())
    if isinstance(tree, Singleton):
        return WOCheck(True, frozenset([Fraction(tree.q)]))
    if not isinstance(tree, Chain):
        raise TypeError(f"not a well-order tree: {tree!r}")
    parts = []
    for child in tree.children:
        c = validate_wo(child)
        if not c:
            return c
        parts.append(c.elements)
    for a, b in zip(parts, parts[1:]):
        if a and b and max(a) >= min(b):
            return WOCheck(False, frozenset().union(*parts), (max(a), min(b)))
    return WOCheck(True, frozenset().union(*parts))


class EnumSet:
    """A set of rationals given by an enumeration oracle."""

    def __init__(self, alpha):
        self.alpha = alpha

    @classmethod
    def from_list(cls, rationals):
        idx = [RATIONALS.index_of(Fraction(q)) + 1 for q in rationals]
        return cls(lambda m: idx[m] if m < len(idx) else 0)

    def __call__(self, m):
        return self.alpha(m)

    def emitted(self, m) -> Optional[Fraction]:
        v = self.alpha(m)
        return None if v == 0 else RATIONALS.at(v - 1)


def wf_probe(enum, gamma: int) -> Optional[int]:
    """Least n such that some alpha(gamma(i)), i <= n+1, is 0 or the
    emitted rationals at gamma(n), gamma(n+1) are not descending.
    None when the prefix is a strictly descending chain of emissions."""
    enum = enum if isinstance(enum, EnumSet) else EnumSet(enum)
    g = decode(gamma)
    vals = [enum.emitted(x) for x in g]
    for n in range(len(g) - 1):
        if any(v is None for v in vals[:n + 2]):
            return n
        if vals[n] <= vals[n + 1]:
            return n
    return None


def bar_b_alpha(alpha, s: int) -> bool:
    """s hits a zero of alpha, or ends with two emissions that do not descend."""
    enum = alpha if isinstance(alpha, EnumSet) else EnumSet(alpha)
    vals = [enum.emitted(x) for x in decode(s)]
    if not vals:
        return False
    if any(v is None for v in vals):
        return True
    return len(vals) >= 2 and vals[-2] <= vals[-1]


def _chain(elements):
    xs = sorted(elements)
    if len(xs) == 1:
        return Singleton(xs[0])
    return Chain(tuple(Singleton(x) for x in xs))


def record_blocks(order) -> list[list[Fraction]]:
    """Blocks of the decomposition, one per step (empty when no new record).

    Step n is a record when q beats every earlier record; its block is the
    part of the set at most q and above all earlier records."""
    order = [Fraction(q) for q in order]
    records = []
    blocks = []
    for q in order:
        if all(p < q for p in records):
            prev = max(records) if records else None
            blocks.append(sorted(x for x in order if x <= q and (prev is None or x > prev)))
            records.append(q)
        else:
            blocks.append([])
    return blocks


def decompose(A, order) -> WOTree:
    """Well-order tree for A from the records of the enumeration ``order``."""
    A = {Fraction(q) for q in A}
    order = [Fraction(q) for q in order]
    if len(order) != len(set(order)) or set(order) != A:
        raise ValueError("order must list each element of A exactly once")
    if not A:
        return Empty()
    blocks = [b for b in record_blocks(order) if b]
    return Chain(tuple(_chain(b) for b in blocks))


def denote(tree) -> frozenset:
    return validate_wo(tree).elements
