"""Finiteness probes, monochromatic sequences, Erdos-Rado trees and finite
Ramsey arrows computed by exhaustive search.

Colourings of k-subsets of an M-set are searched in mixed-radix order over
the lexicographically ordered k-tuples.  The default search prunes a
partial colouring as soon as it has a monochromatic n-set and breaks the
symmetry between colours; ``method="enumerate"`` walks every colouring.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Callable, Optional

from .seqcode import compose, decode, encode, is_increasing

DEFAULT_BUDGET = 10 ** 7


class BudgetExceededError(RuntimeError):
    def __init__(self, needed, budget):
        super().__init__(f"search needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


# -- finiteness -----------------------------------------------------------

@dataclass(frozen=True)
class DecidableSet:
    chi: Callable[[int], bool]

    @classmethod
    def from_finite(cls, elements):
        s = frozenset(elements)
        return cls(lambda m: m in s)

    def __contains__(self, m):
        return bool(self.chi(m))


@dataclass(frozen=True)
class Verdict:
    status: str             # "holds", "refuted" or "inconclusive"
    witness: Optional[int] = None

    @property
    def holds(self):
        return self.status == "holds"


def _as_set(B):
    return B if isinstance(B, DecidableSet) else DecidableSet.from_finite(B)


def finite_probe(B, bound: int, window: int = 64) -> Verdict:
    """No element of B in (bound, bound + window]; refuted by the first hit."""
    B = _as_set(B)
    for m in range(bound + 1, bound + window + 1):
        if m in B:
            return Verdict("refuted", m)
    return Verdict("holds")


def bounded_probe(B, k: int, tup) -> Verdict:
    """The (k+1)-tuple has an entry outside B; witness is its position."""
    B = _as_set(B)
    tup = list(tup)
    if len(tup) != k + 1 or any(x >= y for x, y in zip(tup, tup[1:])):
        raise ValueError(f"need a strictly increasing tuple of length {k + 1}, got {tup}")
    for i, x in enumerate(tup):
        if x not in B:
            return Verdict("holds", i)
    return Verdict("refuted")


def almost_probe(B, zeta) -> Verdict:
    """Least i in the prefix with zeta(i) outside B."""
    B = _as_set(B)
    zeta = list(zeta)
    if any(x >= y for x, y in zip(zeta, zeta[1:])):
        raise ValueError(f"zeta {zeta} is not strictly increasing")
    for i, z in enumerate(zeta):
        if z not in B:
            return Verdict("holds", i)
    return Verdict("inconclusive")


def finiteness_probe(B, mode: str, *args, **kw) -> Verdict:
    """Dispatch on mode "finite" (bound), "bounded" (k, tuple) or "almost" (zeta)."""
    probes = {"finite": finite_probe, "bounded": bounded_probe, "almost": almost_probe}
    if mode not in probes:
        raise ValueError(f"unknown mode {mode!r}")
    return probes[mode](B, *args, **kw)


def union_almost_probe(B, C, zeta) -> Verdict:
    """Find m with zeta(m) outside both B and C.

    eta(n) is the least p > eta(n-1) with zeta(p) outside B; then we look for
    the first n with zeta(eta(n)) outside C."""
    B, C = _as_set(B), _as_set(C)
    zeta = list(zeta)
    if any(x >= y for x, y in zip(zeta, zeta[1:])):
        raise ValueError(f"zeta {zeta} is not strictly increasing")
    eta = [p for p in range(len(zeta)) if zeta[p] not in B]
    for p in eta:
        if zeta[p] not in C:
            return Verdict("holds", p)
    return Verdict("inconclusive")


# -- monochromatic sequences ---------------------------------------------

def _check_increasing(s):
    if not is_increasing(s):
        raise ValueError(f"{decode(s)} is not strictly increasing")


def is_monochromatic(s: int, alpha, k: int) -> bool:
    """alpha(s o t) is the same for all t in [length(s)]^k."""
    _check_increasing(s)
    colours = {alpha(compose(s, encode(t))) for t in combinations(range(len(decode(s))), k)}
    return len(colours) <= 1


def is_pre_monochromatic(s: int, alpha, k_plus_1: int) -> bool:
    """The colour of s o (t*<p>) depends only on t, for t in [length(s)]^k.

    The composition with s matches the monochromatic case; the colour of a
    subset is fixed by its first k elements."""
    _check_increasing(s)
    L = len(decode(s))
    k = k_plus_1 - 1
    for t in combinations(range(L), k):
        start = t[-1] + 1 if t else 0
        colours = {alpha(compose(s, encode(t + (p,)))) for p in range(start, L)}
        if len(colours) > 1:
            return False
    return True


# -- Erdos-Rado trees -----------------------------------------------------

@dataclass
class ErdosRadoTree:
    k: int
    parent: dict = field(default_factory=dict)     # n -> parent node (tuple)
    nodes: list = field(default_factory=list)      # tuples, in order of creation
    truncated: bool = True

    def codes(self):
        return [encode(s) for s in self.nodes]

    def children(self, s):
        s = tuple(s)
        return [c for c in self.nodes if len(c) == len(s) + 1 and c[:-1] == s]

    def check(self) -> list[str]:
        """Parent uniqueness, pre-monochromatic edges and the branching bound."""
        problems = []
        seen = {}
        for c in self.nodes[1:]:
            seen.setdefault(c[-1], []).append(c[:-1])
        for m, ps in seen.items():
            if len(ps) != 1:
                problems.append(f"{m} has {len(ps)} parents")
        for s in self.nodes:
            bound = 4 ** comb(len(s), self.k)
            if len(self.children(s)) > bound:
                problems.append(f"{s} has more than {bound} children")
        return problems


def erdos_rado_tree(alpha_dag, beta_dag, k: int, node_budget: int,
                    order: str = "numeric") -> ErdosRadoTree:
    """Grow the (k+1)-Erdos-Rado tree for two colourings of sequence codes.

    Each n = 0, 1, 2, ... is attached below one existing node t (all entries
    below n) such that t*<n> is pre-monochromatic for both colourings.  With
    order "numeric" the candidate with the largest code wins, with "depth"
    the deepest one (ties by code).  The empty node always qualifies."""
    if node_budget < 1:
        raise ValueError("node budget must be at least 1")
    if order not in ("numeric", "depth"):
        raise ValueError(f"unknown order {order!r}")
    tree = ErdosRadoTree(k=k, nodes=[()])
    if order == "numeric":
        key = encode
    else:
        def key(t):
            return (len(t), encode(t))
    n = 0
    while len(tree.nodes) < node_budget:
        for t in sorted(tree.nodes, key=key, reverse=True):
            c = encode(t + (n,))
            if is_pre_monochromatic(c, alpha_dag, k + 1) and is_pre_monochromatic(c, beta_dag, k + 1):
                tree.parent[n] = t
                tree.nodes.append(t + (n,))
                break
        n += 1
    return tree


# -- finite arrows --------------------------------------------------------

def _layout(M, n, k):
    tuples = list(combinations(range(M), k))
    pos = {t: i for i, t in enumerate(tuples)}
    nsets = [[pos[u] for u in combinations(t, k)] for t in combinations(range(M), n)]
    return tuples, nsets


def _has_mono(colouring, sets):
    for idx in sets:
        c = colouring[idx[0]]
        if all(colouring[i] == c for i in idx):
            return True
    return False


def _arrow_enumerate(M, n, k, r, sets, budget):
    T = comb(M, k)
    needed = T * r ** T
    if needed > budget:
        raise BudgetExceededError(needed, budget)
    for colouring in product(range(r), repeat=T):
        if not _has_mono(colouring, sets):
            return False
    return True


def _arrow_backtrack(M, n, k, r, sets, budget):
    """Depth-first over the same mixed-radix order; a branch is cut once it
    contains a monochromatic set, and colour c may only be used after 0..c-1."""
    T = comb(M, k)
    # the sets that become fully coloured when position i is filled
    closing = [[] for _ in range(T)]
    for idx in sets:
        closing[max(idx)].append(idx)
    colouring = [0] * T
    steps = 0

    def bad_extension(i, used):
        nonlocal steps
        if i == T:
            return True
        for c in range(min(r, used + 1)):
            steps += 1
            if steps > budget:
                raise BudgetExceededError(f"more than {budget}", budget)
            colouring[i] = c
            if any(all(colouring[j] == c for j in idx) for idx in closing[i]):
                continue
            if bad_extension(i + 1, max(used, c + 1)):
                return True
        return False

    return not bad_extension(0, 0)


def _check_args(M, n, k, r):
    if not (1 <= k <= n and r >= 1 and M >= 1):
        raise ValueError(f"need 1 <= k <= n and r >= 1, got M={M} n={n} k={k} r={r}")


def arrow_check(M: int, n: int, k: int, r: int, budget: int = DEFAULT_BUDGET,
                method: str = "backtrack") -> bool:
    """True iff every r-colouring of [M]^k has a monochromatic n-subset."""
    _check_args(M, n, k, r)
    if M < n:
        return False
    tuples, sets = _layout(M, n, k)
    if method == "enumerate":
        return _arrow_enumerate(M, n, k, r, sets, budget)
    if method == "backtrack":
        return _arrow_backtrack(M, n, k, r, sets, budget)
    raise ValueError(f"unknown method {method!r}")


def _large_sets(M, n):
    """Relatively large subsets t (length >= t(0)) of size >= n, reduced to
    a minimal size: a monochromatic large set contains one of these."""
    out = []
    for first in range(M):
        size = max(n, first)
        if size == 0 or first + size > M:
            continue
        for rest in combinations(range(first + 1, M), size - 1):
            out.append((first,) + rest)
    return out


def arrow_star_check(M: int, n: int, k: int, r: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every r-colouring of [M]^k has a monochromatic t of length
    >= n with length(t) >= t(0)."""
    _check_args(M, n, k, r)
    tuples = list(combinations(range(M), k))
    pos = {t: i for i, t in enumerate(tuples)}
    sets = [[pos[u] for u in combinations(t, k)] for t in _large_sets(M, n)]
    if not sets:
        return False
    return _arrow_backtrack(M, n, k, r, sets, budget)


def min_arrow(n: int, k: int, r: int, cap: int, star: bool = False,
              budget: int = DEFAULT_BUDGET) -> Optional[int]:
    """Least M <= cap with the (star-)arrow property, or None."""
    check = arrow_star_check if star else arrow_check
    for M in range(max(n, 1), cap + 1):
        if check(M, n, k, r, budget=budget):
            return M
    return None
