"""Stumps, hereditarily repetitive stumps and the games played on them.

A stump is a well-founded tree of finite sequences.  Hereditarily
repetitive stumps are either the basic stump 1* = {<>} or a node whose
child at move c is ``subs[L(c) % len(subs)]``, where c = pair(K, L).

In the game on S player I moves at even positions, II at odd ones, and the
play stops at the first position outside S.  I wins iff that position has
even length and alpha is 0 there, or odd length and alpha is not 0.
Universal checks over moves are bounded by an explicit alphabet.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .seqcode import decode, encode, unpair

I, II = "I", "II"


# -- stumps ---------------------------------------------------------------

class _StumpBase:
    def sub(self, c: int):
        raise NotImplementedError

    def contains(self, seq) -> bool:
        node = self
        for c in seq:
            if isinstance(node, Empty):
                return False
            node = node.sub(c)
        return not isinstance(node, Empty)

    def __contains__(self, code):
        return self.contains(decode(code))


@dataclass(frozen=True)
class Empty(_StumpBase):
    def sub(self, c):
        return self

    def depth(self):
        return 0


@dataclass(frozen=True)
class Node(_StumpBase):
    """General nonempty stump: explicit children, ``default`` beyond them."""
    children: dict = field(default_factory=dict, hash=False)
    default: _StumpBase = Empty()

    def sub(self, c):
        return self.children.get(c, self.default)

    def depth(self):
        return 1 + max([s.depth() for s in self.children.values()] + [self.default.depth()])


@dataclass(frozen=True)
class Basic(_StumpBase):
    """The stump 1* = {<>}."""

    def sub(self, c):
        return Empty()

    def depth(self):
        return 1


@dataclass(frozen=True)
class HrsNode(_StumpBase):
    subs: tuple

    def __post_init__(self):
        if not self.subs:
            raise ValueError("a repetitive node needs at least one substump")
        for s in self.subs:
            if not isinstance(s, (Basic, HrsNode)):
                raise TypeError(f"substump {s!r} is not hereditarily repetitive")

    def sub(self, c):
        return self.subs[unpair(c)[1] % len(self.subs)]

    def depth(self):
        return 1 + max(s.depth() for s in self.subs)


BASIC = Basic()


def hrs_from_json(data):
    """Nested arrays: [] is 1*, [s0, s1, ...] the node with those substumps."""
    if not isinstance(data, list):
        raise ValueError(f"stump must be a nested array, got {data!r}")
    if not data:
        return BASIC
    return HrsNode(tuple(hrs_from_json(d) for d in data))


def hrs_to_json(S):
    return [] if isinstance(S, Basic) else [hrs_to_json(s) for s in S.subs]


def hrs_stumps(depth: int, width: int = 2):
    """All repetitive stumps of depth <= depth with at most ``width``
    substumps per node."""
    level = [BASIC]
    for _ in range(depth - 1):
        new = list(level)
        for w in range(1, width + 1):
            for subs in product(level, repeat=w):
                node = HrsNode(subs)
                if node not in new:
                    new.append(node)
        level = new
    return level


def border_member(S, s: int) -> bool:
    seq = decode(s)
    return not S.contains(seq) and all(S.contains(seq[:i]) for i in range(len(seq)))


def is_endpoint(S, s: int) -> bool:
    seq = decode(s)
    return S.contains(seq) and not S.contains(seq + [0])


def border(S, alphabet: int) -> list[tuple]:
    """Border positions with all moves below ``alphabet``."""
    out = []

    def walk(node, pos):
        if isinstance(node, Empty):
            out.append(pos)
            return
        for c in range(alphabet):
            walk(node.sub(c), pos + (c,))

    walk(S, ())
    return out


# -- plays ----------------------------------------------------------------

def winner(position, alpha) -> str:
    v = alpha(encode(position))
    if len(position) % 2 == 0:
        return I if v == 0 else II
    return I if v != 0 else II


@dataclass(frozen=True)
class PlayRecord:
    position: tuple
    winner: str

    @property
    def code(self):
        return encode(self.position)


def play_game(S, alpha, moves_I, moves_II) -> PlayRecord:
    if isinstance(S, Empty):
        raise ValueError("the game needs a nonzero stump")
    pos = ()
    node = S
    while not isinstance(node, Empty):
        strat = moves_I if len(pos) % 2 == 0 else moves_II
        c = strat(encode(pos))
        pos += (c,)
        node = node.sub(c)
    return PlayRecord(pos, winner(pos, alpha))


@dataclass(frozen=True)
class GameVerdict:
    holds: bool
    alphabet: int
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def check_winning(S, who: str, strat, alpha, alphabet: int) -> GameVerdict:
    """Does ``strat`` win for ``who`` against every opponent playing below
    ``alphabet``?  The counterexample is a lost end position."""
    if who not in (I, II):
        raise ValueError(f"player must be I or II, got {who!r}")
    if alphabet < 1:
        raise ValueError("alphabet must be at least 1")
    mine = 0 if who == I else 1
    stack = [(S, ())]
    while stack:
        node, pos = stack.pop()
        if isinstance(node, Empty):
            if winner(pos, alpha) != who:
                return GameVerdict(False, alphabet, pos)
            continue
        if len(pos) % 2 == mine:
            c = strat(encode(pos))
            stack.append((node.sub(c), pos + (c,)))
        else:
            for c in reversed(range(alphabet)):
                stack.append((node.sub(c), pos + (c,)))
    return GameVerdict(True, alphabet)


# -- membership witnesses -------------------------------------------------

@dataclass(frozen=True)
class EWitness:
    """alpha is in E_S: the move, and below 1* nothing more, else an
    A-witness for the substump."""
    move: int
    sub: Optional["AWitness"] = None


@dataclass(frozen=True)
class AWitness:
    """alpha is in A_S on the alphabet: for each opponent move an E-witness,
    or at 1* nothing (then alpha vanishes on every <n>)."""
    alphabet: int
    subs: Optional[tuple] = None


def _val(alpha, prefix, rest=()):
    return alpha(encode(prefix + tuple(rest)))


def validate_witness(S, alpha, w, prefix=()) -> bool:
    """Check w against the recursive definitions of E_S and A_S, reading
    alpha below ``prefix``."""
    if isinstance(w, EWitness):
        if isinstance(S, Basic):
            return w.sub is None and _val(alpha, prefix, (w.move,)) != 0
        return w.sub is not None and validate_witness(S.sub(w.move), alpha, w.sub, prefix + (w.move,))
    if isinstance(w, AWitness):
        if isinstance(S, Basic):
            return w.subs is None and all(_val(alpha, prefix, (n,)) == 0 for n in range(w.alphabet))
        return (w.subs is not None and len(w.subs) == w.alphabet
                and all(validate_witness(S.sub(n), alpha, w.subs[n], prefix + (n,))
                        for n in range(w.alphabet)))
    raise TypeError(f"not a witness: {w!r}")


def _e_from(S, strat, alphabet, prefix):
    c = strat(encode(prefix))
    if isinstance(S, Basic):
        return EWitness(c)
    return EWitness(c, _a_from(S.sub(c), strat, alphabet, prefix + (c,)))


def _a_from(S, strat, alphabet, prefix):
    if isinstance(S, Basic):
        return AWitness(alphabet)
    return AWitness(alphabet, tuple(_e_from(S.sub(n), strat, alphabet, prefix + (n,))
                                    for n in range(alphabet)))


def strategy_to_membership(S, who: str, strat, alpha, alphabet: int):
    """Turn a winning strategy into an E_S witness (I) or A_S witness (II)."""
    v = check_winning(S, who, strat, alpha, alphabet)
    if not v:
        raise ValueError(f"strategy loses at {v.counterexample}")
    if who == I:
        return _e_from(S, strat, alphabet, ())
    return _a_from(S, strat, alphabet, ())


def _move_at(w, pos):
    while True:
        if isinstance(w, EWitness):
            if not pos:
                return w.move
            if pos[0] != w.move or w.sub is None:
                return 0
            w = w.sub
        else:
            if not pos:
                return 0
            if w.subs is None or pos[0] >= len(w.subs):
                return 0
            w = w.subs[pos[0]]
        pos = pos[1:]


def _check_shape(S, w):
    if isinstance(w, EWitness):
        if isinstance(S, Basic):
            return w.sub is None
        return isinstance(w.sub, AWitness) and _check_shape(S.sub(w.move), w.sub)
    if isinstance(w, AWitness):
        if isinstance(S, Basic):
            return w.subs is None
        return (w.subs is not None and len(w.subs) == w.alphabet
                and all(isinstance(e, EWitness) and _check_shape(S.sub(n), e)
                        for n, e in enumerate(w.subs)))
    return False


def membership_to_strategy(S, who: str, witness):
    """Strategy for ``who`` read off an E_S (I) or A_S (II) witness; moves
    off the witness are 0."""
    want = EWitness if who == I else AWitness
    if not isinstance(witness, want) or not _check_shape(S, witness):
        raise ValueError("witness does not fit the stump or the player")
    return lambda code: _move_at(witness, tuple(decode(code)))


def solve_bounded(S, alpha, alphabet: int):
    """Backward induction with both players restricted to the alphabet.
    Returns (winner, witness for the winner)."""

    def solve(node, prefix):
        # returns an E-witness if the player to move at prefix wins, else an
        # A-witness for the other player
        if isinstance(node, Basic):
            for c in range(alphabet):
                if _val(alpha, prefix, (c,)) != 0:
                    return EWitness(c)
            return AWitness(alphabet)
        subs = []
        for c in range(alphabet):
            r = solve(node.sub(c), prefix + (c,))
            if isinstance(r, AWitness):
                return EWitness(c, r)
            subs.append(r)
        return AWitness(alphabet, tuple(subs))

    w = solve(S, ())
    return (I, w) if isinstance(w, EWitness) else (II, w)


# -- operators on alpha ---------------------------------------------------

def correct_by_strategy(S, tau, alpha):
    """alpha corrected so that II wins: on even border positions at least 1,
    on odd ones 0, unchanged elsewhere.  tau is not consulted."""
    def corrected(code):
        if border_member(S, code):
            return max(1, alpha(code)) if len(decode(code)) % 2 == 0 else 0
        return alpha(code)
    return corrected


EPS_STAR, ALPHA_STAR = "eps*", "alpha*"


def canonical_element(S, which: str):
    """eps* lets I win every play, alpha* lets II win every play."""
    if which not in (EPS_STAR, ALPHA_STAR):
        raise ValueError(f"which must be {EPS_STAR!r} or {ALPHA_STAR!r}")
    i_wins = which == EPS_STAR

    def element(code):
        if not border_member(S, code):
            return 0
        even = len(decode(code)) % 2 == 0
        return int(even != i_wins)
    return element


def reduce_basic(beta):
    """phi with (phi|alpha)(<n>) = beta(code of the first n values of alpha)
    and 0 elsewhere."""
    def phi(alpha):
        def out(code):
            s = decode(code)
            if len(s) != 1:
                return 0
            return beta(encode(alpha(i) for i in range(s[0])))
        return out
    return phi
