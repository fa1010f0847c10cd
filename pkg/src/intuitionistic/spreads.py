"""Spread-laws, fan-laws, retraction onto a spread and finite subbars of fans.

A law is given by three oracles on sequence codes: ``admit`` says whether a
node belongs to the spread, ``child_witness`` names an admitted child of an
admitted node, and the optional ``fan_bound`` bounds the admitted children.
Sequence oracles (points of Baire space) are plain callables ``int -> int``.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .seqcode import decode, extend, is_increasing

SEARCH_CAP = 2 ** 16


class InvalidLawError(ValueError):
    pass


class MissingFanBoundError(ValueError):
    pass


@dataclass(frozen=True)
class SpreadLaw:
    admit: Callable[[int], bool]
    child_witness: Callable[[int], int]
    fan_bound: Optional[Callable[[int], int]] = None

    @property
    def is_fan(self):
        return self.fan_bound is not None


class Violation(NamedTuple):
    kind: str   # "empty", "downward", "witness" or "fan_bound"
    code: int
    detail: str


def from_list(values, default=0):
    """Sequence oracle that follows ``values`` and then stays at ``default``."""
    values = list(values)
    return lambda i: values[i] if i < len(values) else default


def prefix_of(alpha, n):
    return [alpha(i) for i in range(n)]


# -- builtin laws ---------------------------------------------------------

def kary_law(k):
    """All sequences with entries below k (k=2 gives Cantor space)."""
    return SpreadLaw(
        admit=lambda s: all(x < k for x in decode(s)),
        child_witness=lambda s: 0,
        fan_bound=lambda s: k - 1,
    )


def cantor_law():
    return kary_law(2)


def baire_law():
    return SpreadLaw(admit=lambda s: True, child_witness=lambda s: 0)


def zero_law():
    """The singleton spread containing only the zero sequence."""
    return kary_law(1)


def table_law(sequences):
    """Fan-law from a finite tree of admitted sequences.

    Nodes of the table without a child in the table are continued by zeros,
    so the result is a genuine fan.  Missing prefixes are not added; run
    check_spread_law to find them.
    """
    table = {tuple(s) for s in sequences}
    children = {}
    for s in table:
        if s:
            children.setdefault(s[:-1], set()).add(s[-1])

    def admit(code):
        s = tuple(decode(code))
        if s in table:
            return True
        # zero continuation below a leaf
        i = len(s)
        while i > 0 and s[i - 1] == 0:
            i -= 1
            if s[:i] in table and s[:i] not in children:
                return True
        return False

    def child_witness(code):
        kids = children.get(tuple(decode(code)))
        return min(kids) if kids else 0

    def fan_bound(code):
        kids = children.get(tuple(decode(code)))
        return max(kids) if kids else 0

    return SpreadLaw(admit, child_witness, fan_bound)


# -- checks ---------------------------------------------------------------

def check_spread_law(law: SpreadLaw, depth: int, alphabet: int = 4) -> list[Violation]:
    """Probe the law conditions on all sequences of length <= depth with
    entries below ``alphabet``.  Returns the violations found (empty if none)."""
    report = []
    if not law.admit(0):
        report.append(Violation("empty", 0, "the empty sequence is not admitted"))
    level = [(0, law.admit(0))]
    for d in range(depth + 1):
        nxt = []
        for code, ok in level:
            if ok and d < depth:
                w = law.child_witness(code)
                if not law.admit(extend(code, w)):
                    report.append(Violation("witness", code, f"witness child {w} is not admitted"))
            bound = law.fan_bound(code) if (ok and law.fan_bound) else None
            if d == depth:
                continue
            for n in range(alphabet):
                child = extend(code, n)
                cok = law.admit(child)
                if cok and not ok:
                    report.append(Violation("downward", child, "admitted but its parent is not"))
                if cok and bound is not None and n > bound:
                    report.append(Violation("fan_bound", code, f"child {n} admitted above bound {bound}"))
                nxt.append((child, cok))
        level = nxt
    return report


def _least_admitted_child(law, code, cap):
    for k in range(cap):
        if law.admit(extend(code, k)):
            return k
    raise InvalidLawError(f"no admitted child of {decode(code)} below {cap}")


def retract(law: SpreadLaw, alpha, n: int, cap: int = SEARCH_CAP) -> list[int]:
    """First n values of the retraction of alpha onto the spread.

    alpha is followed as long as its own prefixes are admitted; after the
    first rejected prefix every value is the least admitted child."""
    out = []
    code = 0
    following = law.admit(0)
    if not following:
        raise InvalidLawError("the empty sequence is not admitted")
    for i in range(n):
        if following:
            a = alpha(i)
            if law.admit(extend(code, a)):
                out.append(a)
                code = extend(code, a)
                continue
            following = False
        k = _least_admitted_child(law, code, cap)
        out.append(k)
        code = extend(code, k)
    return out


def _children(law, code):
    if law.fan_bound is None:
        raise MissingFanBoundError("this operation needs a fan-law (fan_bound missing)")
    return [extend(code, n) for n in range(law.fan_bound(code) + 1)
            if law.admit(extend(code, n))]


def enumerate_admitted(law: SpreadLaw, depth: int) -> list[int]:
    """Admitted codes of length exactly ``depth``, sorted by code."""
    if law.fan_bound is None:
        raise MissingFanBoundError("enumerate_admitted needs a fan-law")
    level = [0] if law.admit(0) else []
    for _ in range(depth):
        level = [c for s in level for c in _children(law, s)]
    return sorted(level)


def _bar_search(law, bar, max_depth):
    if law.fan_bound is None:
        raise MissingFanBoundError("bar search needs a fan-law")
    if not law.admit(0):
        return 0, []
    if bar(0):
        return 0, [0]
    minimal = []
    frontier = [0]          # admitted nodes without a barred prefix
    for d in range(1, max_depth + 1):
        nxt = []
        for s in frontier:
            for c in _children(law, s):
                if bar(c):
                    minimal.append(c)
                else:
                    nxt.append(c)
        frontier = nxt
        if not frontier:
            return d, sorted(minimal)
    return None, None


def bar_uniform_bound(law: SpreadLaw, bar, max_depth: int) -> Optional[int]:
    """Least N <= max_depth such that every admitted node of length N has a
    prefix in ``bar``; None means no such N was found (inconclusive)."""
    return _bar_search(law, bar, max_depth)[0]


def finite_subbar(law: SpreadLaw, bar, max_depth: int) -> Optional[list[int]]:
    """Minimal barred prefixes that jointly bar the fan, sorted by code, or
    None when bar_uniform_bound is inconclusive."""
    return _bar_search(law, bar, max_depth)[1]


def almost_fan_probe(law: SpreadLaw, s: int, zeta: int) -> Optional[int]:
    """Least n with s*<zeta(n)> rejected, or None on this finite prefix."""
    if not is_increasing(zeta):
        raise ValueError(f"zeta {decode(zeta)} is not strictly increasing")
    for n, z in enumerate(decode(zeta)):
        if not law.admit(extend(s, z)):
            return n
    return None
