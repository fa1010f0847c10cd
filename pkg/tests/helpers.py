"""Random laws, bars and point sets shared by the tests."""

import random
from fractions import Fraction

from intuitionistic.seqcode import decode
from intuitionistic.spreads import SpreadLaw


def random_fan(seed, max_bound=3, mean_children=1.5):
    """Fan-law where the admitted children of each node form a random
    nonempty subset of 0..b, b <= max_bound, drawn from the node itself."""
    rnd0 = random.Random(seed)
    b_root = rnd0.randint(0, max_bound)
    p = min(1.0, mean_children / (max_bound + 1))
    cache = {}

    def kids(s):
        s = tuple(s)
        if s not in cache:
            rnd = random.Random(f"{seed}:{s}")
            b = rnd.randint(0, max_bound) if s else b_root
            ks = [n for n in range(b + 1) if rnd.random() < p]
            if not ks:
                ks = [rnd.randint(0, b)]
            cache[s] = ks
        return cache[s]

    def admit(code):
        s = decode(code)
        return all(s[i] in kids(s[:i]) for i in range(len(s)))

    return SpreadLaw(admit, lambda c: min(kids(decode(c))), lambda c: max(kids(decode(c))))


def random_spread(seed, alphabet=10):
    """A bare spread law (no fan bound) with random children below alphabet."""
    cache = {}

    def kids(s):
        s = tuple(s)
        if s not in cache:
            rnd = random.Random(f"spread{seed}:{s}")
            ks = [n for n in range(alphabet) if rnd.random() < 0.4]
            cache[s] = ks or [rnd.randrange(alphabet)]
        return cache[s]

    def admit(code):
        s = decode(code)
        return all(s[i] in kids(s[:i]) for i in range(len(s)))

    return SpreadLaw(admit, lambda c: min(kids(decode(c)))), kids


def random_bar(seed, max_depth=12):
    """Bar from a random depth cut-off and random hits on short nodes;
    sometimes no cut-off at all."""
    rnd = random.Random(seed)
    cut = rnd.choice([None] + list(range(0, max_depth + 1)))
    p = rnd.choice([0.0, 0.05, 0.2, 0.4])

    def bar(code):
        s = decode(code)
        if cut is not None and len(s) >= cut:
            return True
        return random.Random(f"bar{seed}:{s}").random() < p

    return bar


def random_rational(rnd, lo=-2, hi=2, den=16):
    return Fraction(rnd.randint(lo * den, hi * den), rnd.randint(1, den))
