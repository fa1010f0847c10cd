"""Open subsets of the reals coded by streams of rational intervals, and
what can be done with their measure computationally.

An interval list is a finite list of PairEnum indices; a measurable
generator is an infinite stream of pairs with a modulus for the convergence
of its prefix measures.  Measures of finite lists are exact Fractions.
"""

import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .reals import (RATIONALS, InvalidInputError, RealNumber, binary_cell,
                    cw_at, cw_index, dyadic)
from .seqcode import decode, pair, unpair
from .spreads import SpreadLaw

ZERO = Fraction(0)
EMPTY = (ZERO, ZERO)


# -- enumeration of pairs q <= r -----------------------------------------

def _width_at(j):
    return ZERO if j == 0 else cw_at(j - 1)


def _width_index(w):
    return 0 if w == 0 else cw_index(w) + 1


class PairEnum:
    """n -> (q, q + w) where (i, j) = unpair(n), q = q_i and w is the j-th
    nonnegative rational (0 first, then Calkin-Wilf order)."""

    def at(self, n: int) -> tuple[Fraction, Fraction]:
        i, j = unpair(n)
        q = RATIONALS.at(i)
        return q, q + _width_at(j)

    def index_of(self, p) -> int:
        q, r = Fraction(p[0]), Fraction(p[1])
        if q > r:
            raise ValueError(f"({q}, {r}) is not an interval: q > r")
        return pair(RATIONALS.index_of(q), _width_index(r - q))


PAIRS = PairEnum()


def intervals(a) -> list[tuple[Fraction, Fraction]]:
    return [PAIRS.at(i) for i in a]


def indices(pairs) -> list[int]:
    return [PAIRS.index_of(p) for p in pairs]


# -- finite lists ---------------------------------------------------------

def neaten_pairs(pairs):
    """Sorted, disjoint, nondegenerate intervals with the same union.

    Touching intervals stay apart: the shared endpoint is in neither."""
    out = []
    for q, r in sorted((Fraction(q), Fraction(r)) for q, r in pairs if q < r):
        if out and q < out[-1][1]:
            if r > out[-1][1]:
                out[-1] = (out[-1][0], r)
        else:
            out.append((q, r))
    return out


def mu_pairs(pairs) -> Fraction:
    return sum((r - q for q, r in neaten_pairs(pairs)), ZERO)


def neaten(a) -> list[int]:
    return indices(neaten_pairs(intervals(a)))


def mu_finite(a) -> Fraction:
    return mu_pairs(intervals(a))


def intersect_pair(p1, p2) -> tuple[Fraction, Fraction]:
    (q, r), (s, t) = p1, p2
    if q > r or s > t:
        raise ValueError(f"malformed interval in {p1} and {p2}")
    if r < s or t < q:
        return EMPTY
    return max(q, s), min(r, t)


def mu_local_pairs(pairs, q, r) -> Fraction:
    """Exact measure of the part of a finite list inside (q, r)."""
    return mu_pairs([intersect_pair(p, (q, r)) for p in pairs])


# -- measurable generators ------------------------------------------------

class MeasurableGen:
    """A stream of intervals j -> (q_j, r_j) with a modulus k -> N such that
    the measure of the first N intervals is within 2**-k of the limit.

    Prefix measures are lower bounds of the limit."""

    def __init__(self, pair_at: Callable[[int], tuple], mu_modulus: Callable[[int], int],
                 finite=None, label=""):
        self._pair_at = pair_at
        self._modulus = mu_modulus
        self._pairs = {}
        self._mu = {}
        self._lock = threading.RLock()
        self.finite = finite     # the whole stream, when it is a finite list
        self.label = label

    @classmethod
    def from_pairs(cls, pairs, label="finite"):
        ps = [(Fraction(q), Fraction(r)) for q, r in pairs]
        for q, r in ps:
            if q > r:
                raise ValueError(f"({q}, {r}) is not an interval")
        return cls(lambda j: ps[j] if j < len(ps) else EMPTY, lambda k: len(ps),
                   finite=ps, label=label)

    @classmethod
    def from_indices(cls, a, label="finite"):
        return cls.from_pairs(intervals(a), label)

    def pair(self, j: int) -> tuple[Fraction, Fraction]:
        with self._lock:
            p = self._pairs.get(j)
            if p is None:
                p = self._pairs[j] = self._pair_at(j)
            return p

    def index_at(self, j: int) -> int:
        return PAIRS.index_of(self.pair(j))

    def prefix(self, n: int):
        return [self.pair(j) for j in range(n)]

    def modulus(self, k: int) -> int:
        return self._modulus(k)

    def prefix_measure(self, n: int) -> Fraction:
        with self._lock:
            v = self._mu.get(n)
            if v is None:
                v = self._mu[n] = mu_pairs(self.prefix(n))
            return v

    def bounds(self, k: int) -> tuple[Fraction, Fraction]:
        """An interval of width 2**-k containing the measure."""
        v = self.prefix_measure(self.modulus(k))
        return v, v + dyadic(k)

    def exact_measure(self) -> Optional[Fraction]:
        return None if self.finite is None else mu_pairs(self.finite)

    def __repr__(self):
        return f"MeasurableGen({self.label})"


def validate_gen(alpha: MeasurableGen, depth: int, window: int = 8) -> list[str]:
    problems = []
    for k in range(depth + 1):
        N = alpha.modulus(k)
        base = alpha.prefix_measure(N)
        for extra in range(1, window + 1):
            if alpha.prefix_measure(N + extra) - base > dyadic(k):
                problems.append(f"modulus({k}) = {N} is contradicted at prefix {N + extra}")
                break
    return problems


def localize(alpha: MeasurableGen, q, r) -> MeasurableGen:
    q, r = Fraction(q), Fraction(r)
    if not q < r:
        raise ValueError(f"localizing needs q < r, got ({q}, {r})")
    fin = None if alpha.finite is None else [intersect_pair(p, (q, r)) for p in alpha.finite]
    return MeasurableGen(lambda j: intersect_pair(alpha.pair(j), (q, r)), alpha.modulus,
                         finite=fin, label=f"{alpha.label} on ({q},{r})")


def local_prefix_measure(alpha: MeasurableGen, q, r, n: int) -> Fraction:
    return mu_local_pairs(alpha.prefix(n), q, r)


class Cover(Enum):
    MORE_THAN = "covers-more-than"
    NEVER = "never-covers"


def cover_decision(alpha: MeasurableGen, q, r, n: int) -> Cover:
    """Either alpha covers (q, r) for more than (1 - 1/n) of it, or it never
    covers (q, r).

    The local measure is read from a prefix of precision 2**-k <= (r-q)/(2n).
    That prefix value v is a lower bound, so v > (1 - 1/n)(r-q) proves the
    first answer, and otherwise the true value is at most
    v + (r-q)/(2n) < r - q."""
    q, r = Fraction(q), Fraction(r)
    if not q < r or n < 1:
        raise ValueError(f"cover_decision needs q < r and n >= 1, got ({q}, {r}), n={n}")
    k = 0
    while dyadic(k) > (r - q) / (2 * n):
        k += 1
    v = local_prefix_measure(alpha, q, r, alpha.modulus(k))
    return Cover.MORE_THAN if v > (1 - Fraction(1, n)) * (r - q) else Cover.NEVER


def never_covers_at(alpha: MeasurableGen, q, r, k: int) -> Optional[Fraction]:
    """Certified gap (r-q) - upper bound of the local measure, when positive."""
    gap = (r - q) - local_prefix_measure(alpha, q, r, alpha.modulus(k)) - dyadic(k)
    return gap if gap > 0 else None


def certify_below(alpha: MeasurableGen, bound, cap: int = 64) -> Optional[int]:
    """Least k <= cap whose bounds show mu(alpha) < bound."""
    for k in range(cap + 1):
        if alpha.bounds(k)[1] < bound:
            return k
    return None


# -- a point of H_beta outside H_alpha -----------------------------------

def point_outside(alpha: MeasurableGen, beta: MeasurableGen, gap_witness: int,
                  cap: int = 64) -> RealNumber:
    """A real in H_beta but outside H_alpha, given mu(beta-bar g) > mu(alpha).

    We pick an interval of the neat form of the beta prefix that alpha never
    covers, then keep halving: the never-covered half is shrunk by a quarter
    of its certified gap on both sides, so cells are strictly nested."""
    target = mu_pairs(beta.prefix(gap_witness))
    if certify_below(alpha, target, cap) is None:
        raise ValueError("mu(alpha) < mu(beta prefix) is not certified")
    b = neaten_pairs(beta.prefix(gap_witness))

    def find(cands, depth=0):
        # cells at depth d have width about 2**-d, so the search runs past d
        for k in range(cap + depth + 1):
            for c in cands:
                g = never_covers_at(alpha, c[0], c[1], k)
                if g is not None:
                    return c, g
        raise ValueError("no never-covered cell found below the search cap")

    start, g0 = find(b)
    cells = [start]
    gaps = [g0]
    lock = threading.Lock()

    def approx(n):
        with lock:
            while len(cells) <= n:
                lo, hi = cells[-1]
                mid = (lo + hi) / 2
                (a, c), g = find([(lo, mid), (mid, hi)], len(cells))
                cells.append((a + g / 4, c - g / 4))
                gaps.append(g)
            return cells[n]

    w = start[1] - start[0]
    c = 0
    while dyadic(-c) < w:
        c += 1
    while c > -64 and dyadic(-(c - 1)) >= w:
        c -= 1
    # width of cell n is at most w/2**n <= 2**(c-n)
    return RealNumber(approx, lambda m: max(0, m + c + 1), label="point outside")


# -- the complement fan ---------------------------------------------------

class ComplementFan:
    """Binary fan of dyadic cells that alpha never covers, plus the small
    open set alpha-plus covering everything outside the fan.

    Every admitted cell has a child certified never-covered (0 preferred);
    the other child is admitted iff cover_decision with n=2 says never
    covers, else it goes into the rejected set C.  alpha-dagger lists C with
    block L of the stream (positions 2**L - 1 .. 2**(L+1) - 2) holding the
    rejected cells of depth L."""

    def __init__(self, alpha: MeasurableGen, n: int, cap: int = 64):
        if n < 1:
            raise ValueError("n must be positive")
        if certify_below(alpha, dyadic(n + 2), cap) is None:
            raise ValueError(f"mu(alpha) < 2^-{n + 2} is not certified")
        self.alpha = alpha
        self.n = n
        self.cap = cap
        self._status = {(): True}
        self._choice = {}
        self._levels = [[()]]           # admitted cells per depth
        self._rejected = [[]]
        self._lock = threading.RLock()
        self.law = SpreadLaw(self._admit_code, self._witness_code, lambda s: 1)
        self.alpha_dagger = MeasurableGen(self._dagger_at, self._dagger_modulus, label="alpha-dagger")
        self.alpha_plus = MeasurableGen(self._plus_at, self._plus_modulus, label="alpha-plus")

    def _expand(self, a):
        if a in self._choice:
            return
        cells = [binary_cell(a + (i,)) for i in (0, 1)]
        for k in range(self.cap + 1):
            found = [i for i in (0, 1) if never_covers_at(self.alpha, *cells[i], k) is not None]
            if found:
                i = found[0]
                break
        else:
            raise ValueError(f"no never-covered child of {a} below the search cap")
        j = 1 - i
        sib = cover_decision(self.alpha, *cells[j], 2) is Cover.NEVER
        self._choice[a] = i
        self._status[a + (i,)] = True
        self._status[a + (j,)] = sib

    def admitted(self, a) -> bool:
        a = tuple(a)
        if any(x not in (0, 1) for x in a):
            return False
        with self._lock:
            for d in range(len(a)):
                if not self._status.get(a[:d], False):
                    return False
                self._expand(a[:d])
            return self._status[a]

    def _admit_code(self, code):
        return self.admitted(decode(code))

    def _witness_code(self, code):
        a = tuple(decode(code))
        with self._lock:
            self._expand(a)
            return self._choice[a]

    def _grow(self, depth):
        with self._lock:
            while len(self._levels) <= depth:
                adm, rej = [], []
                for a in self._levels[-1]:
                    self._expand(a)
                    for i in (0, 1):
                        (adm if self._status[a + (i,)] else rej).append(a + (i,))
                self._levels.append(adm)
                self._rejected.append(rej)

    def admitted_cells(self, depth):
        self._grow(depth)
        return list(self._levels[depth])

    def rejected_cells(self, depth):
        """Cells of C of exactly this depth, in lexicographic order."""
        self._grow(depth)
        return list(self._rejected[depth])

    def _dagger_at(self, j):
        L = (j + 1).bit_length() - 1
        i = j + 1 - 2 ** L
        cells = self.rejected_cells(L)
        return binary_cell(cells[i]) if i < len(cells) else EMPTY

    def _dagger_modulus(self, k):
        # Cells of C deeper than D either touch an endpoint of the alpha
        # prefix P (at most 8 per interval of P per level) or lie in the
        # part of H_alpha outside H_P, which has measure <= 2**-(k+2).
        N = self.alpha.modulus(k + 2)
        E = sum(1 for q, r in self.alpha.prefix(N) if q < r)
        D = k + 1
        if E:
            D = k + 4 + (E - 1).bit_length()
        return 2 ** (D + 1) - 1

    def _plus_at(self, j):
        a, odd = divmod(j, 2)
        if not odd:
            return self.alpha_dagger.pair(a)
        q = RATIONALS.at(a)
        rho = dyadic(self.n + a + 3)
        return q - rho, q + rho

    def _plus_modulus(self, k):
        return 2 * max(self._dagger_modulus(k + 1), k)

    def check(self, depth) -> list[str]:
        """Exact checks of the construction up to ``depth`` against a finite
        alpha: admitted cells are never covered, rejected cells are covered
        for more than half, and the measure bounds hold on prefixes."""
        fin = self.alpha.finite
        if fin is None:
            raise ValueError("exact checks need a finite alpha")
        problems = []
        for d in range(depth + 1):
            for a in self.admitted_cells(d):
                q, r = binary_cell(a)
                if not mu_local_pairs(fin, q, r) < r - q:
                    problems.append(f"admitted cell {a} is covered")
            for c in self.rejected_cells(d):
                q, r = binary_cell(c)
                if not mu_local_pairs(fin, q, r) > (r - q) / 2:
                    problems.append(f"rejected cell {c} is not covered for more than half")
        mu_a = mu_pairs(fin)
        J = 2 ** (depth + 1) - 1
        if mu_pairs(self.alpha_dagger.prefix(J)) > 2 * mu_a:
            problems.append("mu(alpha-dagger) exceeds 2 mu(alpha)")
        if not self.alpha_plus.prefix_measure(2 * J) < dyadic(self.n):
            problems.append(f"mu(alpha-plus) prefix is not below 2^-{self.n}")
        return problems


def complement_fan(alpha: MeasurableGen, n: int):
    """(fan-law over binary sequences, alpha-plus); see ComplementFan."""
    cf = ComplementFan(alpha, n)
    return cf.law, cf.alpha_plus


# -- integrals of measurable functions -----------------------------------

@dataclass
class StepApprox:
    """Step function u_i on the cells (i/2^m, (i+1)/2^m), off an exceptional
    open set of measure < 2**-(accuracy+2); within 2**-(accuracy+1) of f."""
    m: int
    u: list
    exceptional: list = field(default_factory=list)   # PairEnum indices
    accuracy: int = 0

    def __post_init__(self):
        self.u = [Fraction(x) for x in self.u]
        if len(self.u) != 2 ** self.m:
            raise InvalidInputError(f"expected 2^{self.m} values, got {len(self.u)}")
        for i, x in enumerate(self.u):
            if not -1 <= x <= 1:
                raise InvalidInputError(f"u[{i}] = {x} is outside [-1, 1]")
        if not mu_finite(self.exceptional) < dyadic(self.accuracy + 2):
            raise InvalidInputError("exceptional set is too large for the accuracy")


def integral_estimate(sa: StepApprox) -> Fraction:
    return sum(sa.u, ZERO) / 2 ** sa.m


def check_estimates(estimates):
    """Estimates (value, accuracy) must satisfy |e - f| <= 2**-m + 2**-n."""
    estimates = [(Fraction(v), a) for v, a in estimates]
    for i, (v, m) in enumerate(estimates):
        for w, n in estimates[:i]:
            if abs(v - w) > dyadic(m) + dyadic(n):
                raise InvalidInputError(
                    f"estimates {w} (accuracy {n}) and {v} (accuracy {m}) differ by {abs(v - w)}")


def integral_of(estimates: Callable[[int], StepApprox]) -> RealNumber:
    """The integral as a real, from step approximations at every accuracy.

    Checks that estimates e_j, e_k satisfy |e_j - e_k| <= 2**-j + 2**-k and
    intersects the intervals [e_k - 2**-k, e_k + 2**-k]."""
    from .reals import cantor_intersection, from_rational
    est = []
    lock = threading.Lock()

    def e(k):
        with lock:
            while len(est) <= k:
                j = len(est)
                sa = estimates(j)
                if sa.accuracy != j:
                    raise InvalidInputError(f"provider gave accuracy {sa.accuracy} for {j}")
                v = integral_estimate(sa)
                check_estimates(list(zip(est, range(j))) + [(v, j)])
                est.append(v)
            return est[k]

    def nested(k):
        lo = max(e(i) - dyadic(i) for i in range(k + 1))
        hi = min(e(i) + dyadic(i) for i in range(k + 1))
        return from_rational(lo), from_rational(hi)

    # the running intersection up to k has width <= 2**(1-k)
    return cantor_intersection(nested, lambda m: m + 2)


def level_cut(provider: Callable[[int], StepApprox], q, r, n: int):
    """Rationals q < s < t < r and a finite open set alpha with
    mu(alpha) < 2**-n such that f(x) < s or f(x) > t off alpha.

    With 2**-l < (r-q)/2**(n+1) the range [q, r) is cut into j0 >= 2**(n+1)
    slices of width 2**-l; the slice j1 hit by the fewest u_i is excluded.
    The step data is fetched at accuracy l+1, which is what bounds
    |f - u_i| by 2**-(l+2)."""
    q, r = Fraction(q), Fraction(r)
    if not (-1 <= q < r <= 1):
        raise ValueError(f"level_cut needs -1 <= q < r <= 1, got ({q}, {r})")
    l = 0
    while not dyadic(l) < (r - q) / 2 ** (n + 1):
        l += 1
    sa = provider(l + 1)
    w = dyadic(l)
    j0 = 0
    while not r < q + (j0 + 1) * w:
        j0 += 1
    classes = [[i for i, u in enumerate(sa.u) if q + j * w <= u < q + (j + 1) * w]
               for j in range(j0)]
    j1 = min(range(j0), key=lambda j: (len(classes[j]), j))
    s = q + j1 * w + dyadic(l + 2)
    t = q + (j1 + 1) * w - dyadic(l + 2)
    side = dyadic(sa.m)
    rho = dyadic(l + sa.m + 5)
    extra = [(i * side, (i + 1) * side) for i in classes[j1]]
    extra += [(i * side - rho, i * side + rho) for i in range(2 ** sa.m + 1)]
    alpha = list(sa.exceptional) + indices(extra)
    if not mu_finite(alpha) < dyadic(n):
        raise AssertionError("level_cut measure certificate failed")
    return s, t, alpha
