"""Coding of finite sequences of naturals by naturals.

Pairs use the Cantor pairing ``(a+b)(a+b+1)/2 + b``.  Sequences are coded by
``encode([]) = 0`` and ``encode(s + [n]) = pair(encode(s), n) + 1``, so every
natural codes exactly one sequence and extending a sequence makes its code
bigger.  Codes grow very fast with length; Python ints take care of that.
"""

from math import isqrt

# outcomes of prefix_rel
PREFIX = "prefix"        # s is a proper prefix of t
EQUAL = "equal"
EXTENDS = "extends"      # t is a proper prefix of s
INCOMPARABLE = "incomparable"


def pair(m: int, n: int) -> int:
    s = m + n
    return s * (s + 1) // 2 + n


def unpair(v: int) -> tuple[int, int]:
    if v < 0:
        raise ValueError(f"unpair of negative number {v}")
    w = (isqrt(8 * v + 1) - 1) // 2
    n = v - w * (w + 1) // 2
    return w - n, n


def encode(seq) -> int:
    code = 0
    for n in seq:
        if n < 0:
            raise ValueError(f"negative entry {n} in sequence")
        code = pair(code, n) + 1
    return code


def decode(code: int) -> list[int]:
    if code < 0:
        raise ValueError(f"negative code {code}")
    out = []
    while code:
        code, n = unpair(code - 1)
        out.append(n)
    out.reverse()
    return out


def length(code: int) -> int:
    return len(decode(code))


def extend(code: int, n: int) -> int:
    """Code of s followed by n."""
    return pair(code, n) + 1


def last(code: int) -> tuple[int, int]:
    """Split a nonempty code into (code of the initial part, last entry)."""
    if code == 0:
        raise ValueError("the empty sequence has no last entry")
    return unpair(code - 1)


def concat(s: int, t: int) -> int:
    code = s
    for n in decode(t):
        code = extend(code, n)
    return code


def initial(code: int, n: int) -> int:
    """Code of the first n entries."""
    return encode(decode(code)[:n])


def prefix_rel(s: int, t: int) -> str:
    a, b = decode(s), decode(t)
    if a == b:
        return EQUAL
    if len(a) < len(b) and b[:len(a)] == a:
        return PREFIX
    if len(b) < len(a) and a[:len(b)] == b:
        return EXTENDS
    return INCOMPARABLE


def is_prefix(s: int, t: int) -> bool:
    """s is a (not necessarily proper) prefix of t."""
    return prefix_rel(s, t) in (PREFIX, EQUAL)


def compose(s: int, t: int) -> int:
    """The sequence i -> s(t(i))."""
    a, idx = decode(s), decode(t)
    for i in idx:
        if i >= len(a):
            raise IndexError(f"index {i} out of range for a sequence of length {len(a)}")
    return encode(a[i] for i in idx)


def is_increasing(s: int) -> bool:
    a = decode(s)
    return all(x < y for x, y in zip(a, a[1:]))


def is_bounded_below(s: int, m: int) -> bool:
    """Membership in [m]^k: strictly increasing with all entries below m."""
    return is_increasing(s) and all(x < m for x in decode(s))

