"""Exact reals as shrinking streams of rational pairs with a dwindling modulus.

A real x is given by ``x(n) = (x'(n), x''(n))`` with
``x'(n) <= x'(n+1) <= x''(n+1) <= x''(n)`` and a modulus ``m -> N`` such that
``x''(N) - x'(N) < 2**-m``.  Equality is never decided; we expose apartness
witnesses and depth-bounded checks only.
"""

import re
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .seqcode import decode

ZERO = Fraction(0)
ONE = Fraction(1)


def dyadic(k: int) -> Fraction:
    """2**-k as a Fraction."""
    return Fraction(1, 2 ** k) if k >= 0 else Fraction(2 ** -k)


def precision_below(eps: Fraction) -> int:
    """Least m >= 0 with 2**-m < eps."""
    if eps <= 0:
        raise ValueError("precision target must be positive")
    m = 0
    while dyadic(m) >= eps:
        m += 1
    return m


# -- the rationals, enumerated -------------------------------------------

def cw_at(k: int) -> Fraction:
    """k-th positive rational in Calkin-Wilf (breadth-first) order."""
    a, b = 1, 1
    # a run of t left moves adds t*a to b, a run of right moves t*b to a
    for bits in re.findall(r"0+|1+", bin(k + 1)[3:]):
        if bits[0] == "0":
            b += len(bits) * a
        else:
            a += len(bits) * b
    return Fraction(a, b)


def cw_index(q: Fraction) -> int:
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"{q} is not a positive rational")
    a, b = q.numerator, q.denominator
    runs = []
    # walk up to the root 1/1, one run of equal moves at a time
    while a != b:
        if a < b:
            t, r = divmod(b, a)
            if r == 0:
                t -= 1
            runs.append((0, t))
            b -= t * a
        else:
            t, r = divmod(a, b)
            if r == 0:
                t -= 1
            runs.append((1, t))
            a -= t * b
    n = 1
    for bit, t in reversed(runs):
        n = (n << t) | ((1 << t) - 1 if bit else 0)
    return n - 1


class RationalEnum:
    """q_0 = 0, then q_{2k+1} = cw(k) and q_{2k+2} = -cw(k)."""

    def at(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("negative index")
        if n == 0:
            return ZERO
        k, neg = divmod(n - 1, 2)
        q = cw_at(k)
        return -q if neg else q

    def index_of(self, q) -> int:
        q = Fraction(q)
        if q == 0:
            return 0
        if q > 0:
            return 2 * cw_index(q) + 1
        return 2 * cw_index(-q) + 2


RATIONALS = RationalEnum()


# -- real numbers --------------------------------------------------------

class RealNumber:
    """A real given by its approximating pairs and a dwindling modulus.

    Approximations are memoized; the lock makes concurrent probes of the same
    index see one value."""

    def __init__(self, approx: Callable[[int], tuple], modulus: Callable[[int], int], label=""):
        self._approx = approx
        self._modulus = modulus
        self._memo = {}
        self._lock = threading.RLock()
        self.label = label

    def __call__(self, n: int) -> tuple[Fraction, Fraction]:
        with self._lock:
            v = self._memo.get(n)
            if v is None:
                lo, hi = self._approx(n)
                v = self._memo[n] = (Fraction(lo), Fraction(hi))
            return v

    def lower(self, n):
        return self(n)[0]

    def upper(self, n):
        return self(n)[1]

    def modulus(self, m: int) -> int:
        return self._modulus(m)

    def __repr__(self):
        return f"RealNumber({self.label or '?'})"


def validate_real(x: RealNumber, depth: int) -> list[str]:
    """Shrinking and modulus checks on the first ``depth`` indices."""
    problems = []
    prev = None
    for n in range(depth + 1):
        lo, hi = x(n)
        if lo > hi:
            problems.append(f"x({n}) has lower end above upper end")
        if prev and not (prev[0] <= lo and hi <= prev[1]):
            problems.append(f"x({n}) is not inside x({n - 1})")
        prev = (lo, hi)
    for m in range(depth + 1):
        N = x.modulus(m)
        lo, hi = x(N)
        if not hi - lo < dyadic(m):
            problems.append(f"modulus({m}) = {N} but width {hi - lo} is not below 2^-{m}")
    return problems


def from_rational(q) -> RealNumber:
    q = Fraction(q)
    return RealNumber(lambda n: (q, q), lambda m: 0, label=str(q))


def lt_with_fuel(x: RealNumber, y: RealNumber, fuel: int) -> Optional[int]:
    """Least n < fuel with x''(n) < y'(n); None if none found."""
    for n in range(fuel):
        if x.upper(n) < y.lower(n):
            return n
    return None


@dataclass(frozen=True)
class DepthCheck:
    """Outcome of a universal check probed to a finite depth.

    ``ok`` True only means no counterexample up to ``depth``; a
    counterexample is conclusive."""
    ok: bool
    depth: int
    counterexample: Optional[int] = None

    def __bool__(self):
        return self.ok


def le_check(x: RealNumber, y: RealNumber, depth: int) -> DepthCheck:
    for n in range(depth + 1):
        if x.lower(n) > y.upper(n):
            return DepthCheck(False, depth, n)
    return DepthCheck(True, depth)


def eq_check(x: RealNumber, y: RealNumber, depth: int) -> DepthCheck:
    a = le_check(x, y, depth)
    return a if not a else le_check(y, x, depth)


def abs_diff_lt(x: RealNumber, q, eps, fuel: int) -> Optional[int]:
    """Least n < fuel witnessing |x - q| < eps, i.e. x(n) inside (q-eps, q+eps)."""
    q, eps = Fraction(q), Fraction(eps)
    for n in range(fuel):
        lo, hi = x(n)
        if q - eps < lo and hi < q + eps:
            return n
    return None


class Side(Enum):
    Z_BELOW_Y = "z<y"
    X_BELOW_Z = "x<z"


def cotrans(x: RealNumber, y: RealNumber, witness: int, z: RealNumber) -> tuple[Side, int]:
    """Given x < y witnessed at ``witness``, decide x < z or z < y.

    z is approximated to half the gap; the x < z side wins ties."""
    a, b = x.upper(witness), y.lower(witness)
    if not a < b:
        raise ValueError(f"index {witness} does not witness x < y")
    m = precision_below((b - a) / 2)
    n = max(witness, z.modulus(m))
    if x.upper(n) < z.lower(n):
        return Side.X_BELOW_Z, n
    if z.upper(n) < y.lower(n):
        return Side.Z_BELOW_Y, n
    raise ValueError("z violates its modulus")  # cannot happen for valid reals


class InvalidInputError(ValueError):
    pass


def cantor_intersection(pairs: Callable[[int], tuple], modulus: Callable[[int], int]) -> RealNumber:
    """The real lying in every [x_n, y_n] of a shrinking stream of real pairs.

    ``modulus(m)`` must give an index N with y_N - x_N < 2**-m.  At stage k we
    read x_N, y_N with N = modulus(k+1) to precision 2**-(k+3), giving a
    rational interval of width below 2**-k; the output is the running
    intersection of these intervals."""
    cells = {}
    lock = threading.Lock()

    def cell(k):
        with lock:
            if k in cells:
                return cells[k]
        N = modulus(k + 1)
        x, y = pairs(N)
        j = max(x.modulus(k + 3), y.modulus(k + 3))
        lo, hi = x.lower(j), y.upper(j)
        if lo > hi:
            raise InvalidInputError(f"pair {N}: lower real exceeds upper real")
        if hi - lo >= dyadic(k):
            raise InvalidInputError(f"pair {N}: modulus({k + 1}) does not certify the width")
        with lock:
            cells[k] = (lo, hi, N)
        return lo, hi, N

    def approx(n):
        lo, hi = None, None
        for k in range(n + 1):
            a, b, N = cell(k)
            lo = a if lo is None else max(lo, a)
            hi = b if hi is None else min(hi, b)
            if lo > hi:
                raise InvalidInputError(f"pair {N} is not nested in the earlier pairs")
        return lo, hi

    return RealNumber(approx, lambda m: m, label="intersection")


def forced_indices(alpha, n: int) -> list[int]:
    """First n+1 values of the convergence-forced index sequence.

    Starts at index 0 (the rational 0); alpha(i+1) is accepted when its
    rational is within 2**-i of the current one, otherwise we repeat."""
    q = RATIONALS.at
    out = [0]
    for i in range(n):
        cand = alpha(i + 1)
        out.append(cand if abs(q(cand) - q(out[-1])) <= dyadic(i) else out[-1])
    return out


def converge_force(alpha) -> RealNumber:
    """The limit of the forced sequence, with modulus m -> m+1.

    Consecutive forced rationals differ by at most 2**-i, so c_{n+2} is within
    2**-(n+1) of the limit and x(n) = c_{n+2} -+ 2**-(n+1) is shrinking."""
    cache = [0]
    lock = threading.Lock()

    def c(k):
        with lock:
            while len(cache) <= k:
                i = len(cache) - 1
                cand = alpha(i + 1)
                prev = cache[-1]
                ok = abs(RATIONALS.at(cand) - RATIONALS.at(prev)) <= dyadic(i)
                cache.append(cand if ok else prev)
            return RATIONALS.at(cache[k])

    def approx(n):
        mid, r = c(n + 2), dyadic(n + 1)
        return mid - r, mid + r

    return RealNumber(approx, lambda m: m + 1, label="forced limit")


def _binary(seq):
    for v in seq:
        if v not in (0, 1):
            raise ValueError(f"non-binary value {v}")
    return seq


def _halve(cell, bit):
    lo, hi = cell
    mid = (lo + hi) / 2
    return (lo, mid) if bit == 0 else (mid, hi)


def B_map(a: int) -> tuple[Fraction, Fraction]:
    """Dyadic cell of a binary sequence code: B(<>) = (0,1), then halving."""
    cell = (ZERO, ONE)
    for bit in _binary(decode(a)):
        cell = _halve(cell, bit)
    return cell


def binary_cell(bits) -> tuple[Fraction, Fraction]:
    """B_map on a list of bits instead of a code."""
    cell = (ZERO, ONE)
    for bit in _binary(list(bits)):
        cell = _halve(cell, bit)
    return cell


def phi_bin(gamma) -> RealNumber:
    """The real sum gamma(n) 2**-(n+1); x(n) is the cell of the first n bits.

    That cell has width exactly 2**-n, so the strict modulus is m -> m+1."""
    cells = [(ZERO, ONE)]
    lock = threading.Lock()

    def approx(n):
        with lock:
            while len(cells) <= n:
                i = len(cells) - 1
                cells.append(_halve(cells[-1], _binary([gamma(i)])[0]))
            return cells[n]

    return RealNumber(approx, lambda m: m + 1, label="binary expansion")


def trisect_cell(bits) -> tuple[Fraction, Fraction]:
    """Overlapping 2/3-cells: bit 0 keeps the left two thirds, bit 1 the right."""
    lo, hi = ZERO, ONE
    for bit in _binary(list(bits)):
        if bit == 0:
            lo, hi = lo, lo / 3 + 2 * hi / 3
        else:
            lo, hi = 2 * lo / 3 + hi / 3, hi
    return lo, hi


def trisect(s: int) -> tuple[Fraction, Fraction]:
    """trisect_cell of the sequence coded by s.  Codes grow doubly
    exponentially with length, so long paths should use trisect_cell."""
    return trisect_cell(decode(s))
