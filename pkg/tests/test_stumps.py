import random
from itertools import product

import pytest

from intuitionistic.seqcode import decode, encode, pair
from intuitionistic.stumps import (ALPHA_STAR, BASIC, EPS_STAR, I, II, AWitness, Basic,
                                   Empty, EWitness, HrsNode, Node, border, border_member,
                                   canonical_element, check_winning, correct_by_strategy,
                                   hrs_from_json, hrs_stumps, hrs_to_json, is_endpoint,
                                   membership_to_strategy, play_game, reduce_basic,
                                   solve_bounded, strategy_to_membership, validate_witness)

ONE = HrsNode((BASIC,))


def table(d, default=0):
    t = {encode(k): v for k, v in d.items()}
    return lambda c: t.get(c, default)


def const(v):
    return lambda c: v


def test_border_member():
    assert all(border_member(BASIC, encode([n])) for n in range(20))
    assert not border_member(BASIC, 0)
    assert border_member(Empty(), 0)
    assert not border_member(BASIC, encode([1, 2]))


def test_general_stump():
    S = Node({0: Node({}, BASIC)}, BASIC)
    assert S.contains([0, 3]) and not S.contains([0, 3, 1])
    assert border_member(S, encode([0, 3, 1]))
    assert border_member(S, encode([2, 0]))
    assert S.depth() == 3


def test_labels_and_repetition():
    S = HrsNode((BASIC, ONE))
    # label c = pair(m, n) picks subs[n % 2]
    assert S.sub(pair(7, 0)) is BASIC
    assert S.sub(pair(7, 1)) == ONE
    assert S.sub(0) is BASIC and S.sub(1) is BASIC and S.sub(2) == ONE
    assert all(S.contains([c]) for c in range(30))


def test_endpoints():
    assert is_endpoint(BASIC, 0)
    assert not is_endpoint(ONE, 0)
    assert is_endpoint(ONE, encode([pair(0, 0)]))
    # 1* is the only repetitive stump without <0>
    assert all(s.contains([0]) == (s != BASIC) for s in hrs_stumps(3))


def test_json_round_trip():
    for S in hrs_stumps(3):
        assert hrs_from_json(hrs_to_json(S)) == S
    assert hrs_from_json([]) is BASIC
    with pytest.raises(ValueError):
        hrs_from_json({})


def test_play_examples():
    rec = play_game(BASIC, table({(3,): 1}), const(3), const(0))
    assert rec.position == (3,) and rec.winner == I
    assert play_game(BASIC, const(0), const(3), const(0)).winner == II
    rec = play_game(ONE, const(0), const(1), const(2))
    assert rec.position == (1, 2) and rec.winner == I
    assert play_game(ONE, const(1), const(1), const(2)).winner == II
    eps = canonical_element(BASIC, EPS_STAR)
    assert all(play_game(BASIC, eps, const(m), const(0)).winner == I for m in range(10))


def test_check_winning_examples():
    alpha = table({(3,): 1})
    assert check_winning(BASIC, I, const(3), alpha, 5)
    assert check_winning(BASIC, II, const(0), canonical_element(BASIC, ALPHA_STAR), 4)
    v = check_winning(BASIC, I, const(3), const(0), 5)
    assert not v and v.counterexample == (3,)


def test_canonical_values():
    assert canonical_element(BASIC, EPS_STAR)(encode([5])) == 1
    assert canonical_element(BASIC, ALPHA_STAR)(encode([5])) == 0
    assert canonical_element(BASIC, ALPHA_STAR)(0) == 0
    for S in hrs_stumps(3):
        for m in range(3):
            assert check_winning(S, I, const(m), canonical_element(S, EPS_STAR), 3)
            assert check_winning(S, II, const(m), canonical_element(S, ALPHA_STAR), 3)


def test_witness_examples():
    alpha = table({(3,): 1})
    w = strategy_to_membership(BASIC, I, const(3), alpha, 4)
    assert w == EWitness(3)
    assert validate_witness(BASIC, alpha, w)
    w = strategy_to_membership(BASIC, II, const(0), const(0), 4)
    assert w == AWitness(4)
    with pytest.raises(ValueError):
        strategy_to_membership(BASIC, I, const(3), const(0), 4)
    sigma = membership_to_strategy(BASIC, I, EWitness(3))
    assert sigma(0) == 3
    tau = membership_to_strategy(BASIC, II, AWitness(4))
    assert check_winning(BASIC, II, tau, const(0), 4)


def test_nested_witness():
    # I plays 1, II answers, and I wins where alpha is 0 at length 2
    alpha = table({(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 0})
    who, w = solve_bounded(ONE, alpha, 2)
    assert who == I and w.move == 1 and isinstance(w.sub, AWitness)
    sigma = membership_to_strategy(ONE, I, w)
    assert check_winning(ONE, I, sigma, alpha, 2)
    assert validate_witness(ONE, alpha, strategy_to_membership(ONE, I, sigma, alpha, 2))


def test_membership_to_strategy_rejects_bad_shape():
    with pytest.raises(ValueError):
        membership_to_strategy(ONE, I, EWitness(3))
    with pytest.raises(ValueError):
        membership_to_strategy(BASIC, II, EWitness(0))


def test_correction():
    alpha = const(7)
    c = correct_by_strategy(BASIC, const(0), alpha)
    assert all(c(encode([n])) == 0 for n in range(10))
    assert c(0) == 7
    assert solve_bounded(BASIC, c, 3)[0] == II
    a_star = canonical_element(ONE, ALPHA_STAR)
    c = correct_by_strategy(ONE, const(0), a_star)
    assert all(c(encode(p)) == a_star(encode(p)) for p in border(ONE, 3))
    for S in hrs_stumps(3):
        for v in (0, 1, 5):
            c = correct_by_strategy(S, const(0), const(v))
            assert solve_bounded(S, c, 2)[0] == II


def all_witnesses(S, alphabet, kind):
    """Every E- or A-witness for S with moves below the alphabet."""
    if kind == "E":
        if isinstance(S, Basic):
            return [EWitness(m) for m in range(alphabet)]
        return [EWitness(m, a) for m in range(alphabet)
                for a in all_witnesses(S.sub(m), alphabet, "A")]
    if isinstance(S, Basic):
        return [AWitness(alphabet)]
    return [AWitness(alphabet, subs)
            for subs in product(*[all_witnesses(S.sub(n), alphabet, "E") for n in range(alphabet)])]


def test_witness_enumeration_determinacy():
    rnd = random.Random(0)
    for S in hrs_stumps(3):
        bd = border(S, 2)
        for _ in range(30):
            alpha = table({p: rnd.randint(0, 1) for p in bd})
            es = [w for w in all_witnesses(S, 2, "E") if validate_witness(S, alpha, w)]
            as_ = [w for w in all_witnesses(S, 2, "A") if validate_witness(S, alpha, w)]
            assert bool(es) != bool(as_)
            assert solve_bounded(S, alpha, 2)[0] == (I if es else II)


def test_reduce_basic_examples():
    phi = reduce_basic(const(0))
    out = phi(const(4))
    assert all(out(encode([n])) == 0 for n in range(5))
    assert solve_bounded(BASIC, out, 5)[0] == II
    beta = table({(0, 0): 1})
    out = reduce_basic(beta)(const(0))
    assert out(encode([2])) == 1
    assert validate_witness(BASIC, out, EWitness(2))
    assert out(encode([2, 2])) == 0


def test_reduce_basic_brute_force():
    rnd = random.Random(1)
    tables = []
    for _ in range(5):
        tables.append({s: rnd.choice([0, 0, 0, 1])
                       for L in range(5) for s in product(range(3), repeat=L)})
    for t in tables:
        beta = lambda c, t=t: t.get(tuple(decode(c)), 0)
        phi = reduce_basic(beta)
        for vals in product(range(3), repeat=4):
            alpha = lambda i, vals=vals: vals[i] if i < 4 else 0
            # alpha is in the basic set iff beta is nonzero on some prefix
            in_g = any(t.get(vals[:n], 0) for n in range(5))
            out = phi(alpha)
            has_e = any(validate_witness(BASIC, out, EWitness(n)) for n in range(5))
            assert in_g == has_e
