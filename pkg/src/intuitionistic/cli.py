"""Command line front end: every module behind one ``intuit`` command.

Flags taking JSON accept ``-`` to read the document from stdin.  Rationals
are written as "p/q" strings.  Exit status is 0 (ok), 1 (error) and 2
(inconclusive); ``ramsey`` exits 0/1 with its boolean answer.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import measure, ramsey, reals, seqcode, spreads, stumps, worder

EXIT = {"ok": 0, "error": 1, "inconclusive": 2}


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list = field(default_factory=list)
    exit_override: Optional[int] = None
    fmt: str = "json"

    @property
    def exit_code(self):
        return self.exit_override if self.exit_override is not None else EXIT[self.status]

    def to_json(self):
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


class UsageError(Exception):
    pass


# -- argument decoding ----------------------------------------------------

_stdin_cache = []


def _read_json(text, name):
    if text == "-":
        if not _stdin_cache:
            _stdin_cache.append(sys.stdin.read())
        text = _stdin_cache[0]
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in --{name} at line {e.lineno} column {e.colno}"
                         f" (char {e.pos}): {e.msg}")


def _frac(x, name="value"):
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{name}: {x!r} is not a rational")


def _fs(q):
    return str(Fraction(q))


def _int_list(text, name):
    text = text.strip()
    if text.startswith("["):
        data = _read_json(text, name)
    else:
        data = [t for t in text.split(",") if t.strip()]
    try:
        out = [int(x) for x in data]
    except (TypeError, ValueError):
        raise UsageError(f"--{name} must be a list of naturals")
    if any(x < 0 for x in out):
        raise UsageError(f"--{name} must be a list of naturals")
    return out


def _pairs(data, name):
    if not isinstance(data, list):
        raise UsageError(f"--{name} must be a JSON list of [q, r] pairs")
    out = []
    for p in data:
        if not (isinstance(p, list) and len(p) == 2):
            raise UsageError(f"--{name}: {p!r} is not a [q, r] pair")
        q, r = _frac(p[0], name), _frac(p[1], name)
        if q > r:
            raise UsageError(f"--{name}: [{q}, {r}] has q > r")
        out.append((q, r))
    return out


def _table(data, name):
    """Oracle on codes from {"1,2": v, ...}; "*" is the default value."""
    if not isinstance(data, dict):
        raise UsageError(f"--{name} must be a JSON object mapping sequences to values")
    default = int(data.get("*", 0))
    table = {}
    for k, v in data.items():
        if k == "*":
            continue
        try:
            seq = [int(x) for x in k.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"--{name}: bad sequence key {k!r}")
        table[seqcode.encode(seq)] = int(v)
    return lambda code: table.get(code, default)


LAWS = {
    "cantor": spreads.cantor_law,
    "baire": spreads.baire_law,
    "full": spreads.baire_law,
    "zero": spreads.zero_law,
    "ternary": lambda: spreads.kary_law(3),
}


def _law(text):
    if text in LAWS:
        return LAWS[text]()
    data = _read_json(text, "law")
    if isinstance(data, dict) and "kary" in data:
        return spreads.kary_law(int(data["kary"]))
    if isinstance(data, dict) and "table" in data:
        return spreads.table_law(data["table"])
    raise UsageError(f"unknown law {text!r}; use {', '.join(LAWS)}, {{\"kary\": k}} or {{\"table\": [...]}}")


def _bar(data):
    if data == "empty" or data == {}:
        return lambda s: False
    if not isinstance(data, dict) or len(data) != 1:
        raise UsageError(f"bar must be a one-key JSON object, got {data!r}")
    (key, v), = data.items()
    if key == "min_len":
        return lambda s: len(seqcode.decode(s)) >= int(v)
    if key == "contains":
        return lambda s: int(v) in seqcode.decode(s)
    if key == "min_len_or_contains_one":
        return lambda s: 1 in seqcode.decode(s) or len(seqcode.decode(s)) >= int(v)
    if key == "sequences":
        codes = {seqcode.encode(x) for x in v}
        return lambda s: s in codes
    if key == "any":
        parts = [_bar(x) for x in v]
        return lambda s: any(p(s) for p in parts)
    raise UsageError(f"unknown bar predicate {key!r}")


def _padded(values, default=0):
    values = list(values)
    return lambda i: values[i] if i < len(values) else (values[-1] if values else default)


def _real(expr):
    if not isinstance(expr, dict) or len(expr) != 1:
        raise UsageError(f"real expression must be a one-key object, got {expr!r}")
    (key, v), = expr.items()
    if key == "rational":
        return reals.from_rational(_frac(v, "rational"))
    if key == "phi_bin":
        bits = [int(b) for b in v]
        return reals.phi_bin(lambda i: bits[i] if i < len(bits) else 0)
    if key == "converge":
        idx = [reals.RATIONALS.index_of(_frac(q, "converge")) for q in v]
        return reals.converge_force(_padded(idx))
    if key == "trisect":
        bits = [int(b) for b in v]

        def cell(N):
            lo, hi = reals.trisect_cell(bits[:N] + [0] * max(0, N - len(bits)))
            return reals.from_rational(lo), reals.from_rational(hi)

        def mod(m):
            N = 0
            while Fraction(2, 3) ** N >= reals.dyadic(m):
                N += 1
            return N
        return reals.cantor_intersection(cell, mod)
    raise UsageError(f"unknown real constructor {key!r}")


# -- subcommands ----------------------------------------------------------

def cmd_seq(a):
    if a.action == "encode":
        return CommandResult("ok", seqcode.encode(_int_list(a.seq, "seq")))
    if a.code is None or a.code < 0:
        raise UsageError("seq decode needs --code N with N >= 0")
    return CommandResult("ok", seqcode.decode(a.code))


def cmd_fan(a):
    law = _law(a.law)
    if a.action == "check":
        rep = spreads.check_spread_law(law, a.depth, a.alphabet)
        return CommandResult("ok", [{"kind": v.kind, "node": seqcode.decode(v.code), "detail": v.detail}
                                    for v in rep])
    if a.action == "retract":
        alpha = _int_list(a.alpha, "alpha")
        return CommandResult("ok", spreads.retract(law, spreads.from_list(alpha), a.n))
    bar = _bar(_read_json(a.bar, "bar"))
    if a.action == "bar-bound":
        N = spreads.bar_uniform_bound(law, bar, a.max_depth)
        if N is None:
            return CommandResult("inconclusive", None, [f"no uniform bound up to depth {a.max_depth}"])
        return CommandResult("ok", N)
    sub = spreads.finite_subbar(law, bar, a.max_depth)
    if sub is None:
        return CommandResult("inconclusive", None, [f"no uniform bound up to depth {a.max_depth}"])
    return CommandResult("ok", [seqcode.decode(c) for c in sub])


def cmd_stump(a):
    S = stumps.hrs_from_json(_read_json(a.stump, "stump"))
    alpha = _table(_read_json(a.alpha, "alpha"), "alpha")
    if a.action == "play":
        sigma = _table(_read_json(a.sigma, "sigma"), "sigma")
        tau = _table(_read_json(a.tau, "tau"), "tau")
        rec = stumps.play_game(S, alpha, sigma, tau)
        return CommandResult("ok", {"position": list(rec.position), "code": rec.code, "winner": rec.winner})
    if a.action == "check":
        strat = _table(_read_json(a.strategy, "strategy"), "strategy")
        v = stumps.check_winning(S, a.who, strat, alpha, a.alphabet)
        payload = {"holds_on_alphabet": v.holds, "alphabet": v.alphabet,
                   "counterexample": None if v.holds else list(v.counterexample)}
        return CommandResult("ok", payload)
    who, _ = stumps.solve_bounded(S, alpha, a.alphabet)
    return CommandResult("ok", {"winner": who, "alphabet": a.alphabet})


def cmd_real(a):
    x = _real(_read_json(a.expr, "expr"))
    N = x.modulus(a.precision)
    lo, hi = x(N)
    return CommandResult("ok", {"precision": a.precision, "index": N, "interval": [_fs(lo), _fs(hi)]})


def cmd_measure(a):
    pairs = _pairs(_read_json(a.intervals if a.action != "complement-fan" else a.alpha,
                              "intervals" if a.action != "complement-fan" else "alpha"), "intervals")
    if a.action == "mu":
        return CommandResult("ok", _fs(measure.mu_pairs(pairs)))
    if a.action == "neaten":
        return CommandResult("ok", [[_fs(q), _fs(r)] for q, r in measure.neaten_pairs(pairs)])
    alpha = measure.MeasurableGen.from_pairs(pairs)
    try:
        cf = measure.ComplementFan(alpha, a.n)
    except ValueError as e:
        raise UsageError(str(e))
    J = 2 ** (a.depth + 1) - 1
    payload = {
        "depth": a.depth,
        "admitted": [list(c) for c in cf.admitted_cells(a.depth)],
        "rejected": [list(c) for d in range(a.depth + 1) for c in cf.rejected_cells(d)],
        "alpha_plus_prefix": 2 * J,
        "mu_alpha_plus_prefix": _fs(cf.alpha_plus.prefix_measure(2 * J)),
        "bound": _fs(reals.dyadic(a.n)),
    }
    return CommandResult("ok", payload)


def cmd_ramsey(a):
    try:
        if a.action == "arrow":
            if a.M is None:
                raise UsageError("ramsey arrow needs --M")
            check = ramsey.arrow_star_check if a.star else ramsey.arrow_check
            v = check(a.M, a.n, a.k, a.r, budget=a.budget)
            return CommandResult("ok", v, exit_override=0 if v else 1)
        M = ramsey.min_arrow(a.n, a.k, a.r, a.cap, star=a.star, budget=a.budget)
    except ramsey.BudgetExceededError as e:
        return CommandResult("error", None, [str(e)])
    except ValueError as e:
        raise UsageError(str(e))
    if M is None:
        return CommandResult("inconclusive", None, [f"no M <= {a.cap}"])
    return CommandResult("ok", M)


def _tree_json(t):
    if isinstance(t, worder.Empty):
        return None
    if isinstance(t, worder.Singleton):
        return _fs(t.q)
    return [_tree_json(c) for c in t.children]


def _tree_from(data):
    if data is None:
        return worder.Empty()
    if isinstance(data, list):
        return worder.Chain(tuple(_tree_from(d) for d in data))
    return worder.Singleton(_frac(data, "tree"))


def cmd_wo(a):
    if a.action == "validate":
        c = worder.validate_wo(_tree_from(_read_json(a.tree, "tree")))
        return CommandResult("ok", {"valid": c.valid, "elements": [_fs(q) for q in sorted(c.elements)],
                                    "violation": None if c.valid else [_fs(q) for q in c.violation]})
    elems = [_frac(x.strip(), "set") for x in a.set.split(",") if x.strip()]
    order = _int_list(a.order, "order") if a.order else list(range(len(elems)))
    if sorted(order) != list(range(len(elems))):
        raise UsageError("--order must be a permutation of the positions in --set")
    try:
        t = worder.decompose(elems, [elems[i] for i in order])
    except ValueError as e:
        raise UsageError(str(e))
    return CommandResult("ok", _tree_json(t))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="intuit", parents=[common],
                                description="Constructive analysis toolkit.")
    sub = p.add_subparsers(dest="command")

    def leaf(parent, name, func, help_):
        q = parent.add_parser(name, parents=[common], help=help_)
        q.set_defaults(func=func, action=name)
        return q

    seq = sub.add_parser("seq", help="sequence codes").add_subparsers(dest="action")
    leaf(seq, "encode", cmd_seq, "code of a sequence").add_argument("--seq", required=True)
    leaf(seq, "decode", cmd_seq, "sequence of a code").add_argument("--code", type=int)

    fan = sub.add_parser("fan", help="spreads and fans").add_subparsers(dest="action")
    for name in ("bar-bound", "subbar"):
        q = leaf(fan, name, cmd_fan, "uniform bar bound" if name == "bar-bound" else "finite subbar")
        q.add_argument("--law", required=True)
        q.add_argument("--bar", required=True)
        q.add_argument("--max-depth", type=int, default=16)
    q = leaf(fan, "check", cmd_fan, "probe the law conditions")
    q.add_argument("--law", required=True)
    q.add_argument("--depth", type=int, default=4)
    q.add_argument("--alphabet", type=int, default=4)
    q = leaf(fan, "retract", cmd_fan, "retract a sequence onto the spread")
    q.add_argument("--law", required=True)
    q.add_argument("--alpha", required=True)
    q.add_argument("--n", type=int, required=True)

    st = sub.add_parser("stump", help="stumps and games").add_subparsers(dest="action")
    q = leaf(st, "play", cmd_stump, "play one game")
    for flag in ("--stump", "--alpha", "--sigma", "--tau"):
        q.add_argument(flag, required=flag in ("--stump",), default="{}")
    q = leaf(st, "check", cmd_stump, "check a strategy on a bounded alphabet")
    q.add_argument("--stump", required=True)
    q.add_argument("--alpha", default="{}")
    q.add_argument("--strategy", default="{}")
    q.add_argument("--who", choices=[stumps.I, stumps.II], required=True)
    q.add_argument("--alphabet", type=int, default=2)
    q = leaf(st, "solve", cmd_stump, "winner of the game on a bounded alphabet")
    q.add_argument("--stump", required=True)
    q.add_argument("--alpha", default="{}")
    q.add_argument("--alphabet", type=int, default=2)

    re_ = sub.add_parser("real", help="exact reals").add_subparsers(dest="action")
    q = leaf(re_, "eval", cmd_real, "approximation at a precision")
    q.add_argument("--expr", required=True)
    q.add_argument("--precision", type=int, default=10)

    me = sub.add_parser("measure", help="measure of open sets").add_subparsers(dest="action")
    leaf(me, "mu", cmd_measure, "measure of a finite list").add_argument("--intervals", required=True)
    leaf(me, "neaten", cmd_measure, "neat form of a finite list").add_argument("--intervals", required=True)
    q = leaf(me, "complement-fan", cmd_measure, "fan of never-covered cells")
    q.add_argument("--alpha", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--depth", type=int, default=4)

    ra = sub.add_parser("ramsey", help="finite Ramsey arrows").add_subparsers(dest="action")
    for name in ("arrow", "min"):
        q = leaf(ra, name, cmd_ramsey, "M -> (n)^k_r" if name == "arrow" else "least M")
        if name == "arrow":
            q.add_argument("--M", type=int)
        else:
            q.add_argument("--cap", type=int, default=10)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--k", type=int, required=True)
        q.add_argument("--r", type=int, required=True)
        q.add_argument("--star", action="store_true")
        q.add_argument("--budget", type=int, default=ramsey.DEFAULT_BUDGET)

    wo = sub.add_parser("wo", help="well-ordered sets").add_subparsers(dest="action")
    q = leaf(wo, "decompose", cmd_wo, "tree from an enumeration order")
    q.add_argument("--set", required=True)
    q.add_argument("--order")
    leaf(wo, "validate", cmd_wo, "check a tree").add_argument("--tree", required=True)
    return p


def dispatch(argv) -> CommandResult:
    parser = build_parser()
    try:
        args, err = _parse(parser, list(argv))
    except UsageError as e:
        return CommandResult("error", None, [str(e), parser.format_usage().strip()])
    if err is not None:
        return CommandResult("error", None, [err, parser.format_usage().strip()])
    try:
        res = args.func(args)
    except UsageError as e:
        return CommandResult("error", None, [str(e)])
    except (ValueError, IndexError, TypeError, ArithmeticError) as e:
        return CommandResult("error", None, [f"{type(e).__name__}: {e}"])
    res.fmt = getattr(args, "format", "json")
    return res


def _parse(parser, argv):
    """argparse without exiting the interpreter."""
    import contextlib
    import io
    buf = io.StringIO()
    try:
        with contextlib.redirect_stderr(buf):
            args = parser.parse_args(argv)
    except SystemExit:
        msg = buf.getvalue().strip().splitlines()
        return None, msg[-1] if msg else "usage error"
    if getattr(args, "func", None) is None:
        return None, "missing subcommand"
    return args, None


def render(res: CommandResult, fmt="json") -> str:
    if fmt == "text":
        p = res.payload
        body = p if isinstance(p, (str, int, bool)) or p is None else json.dumps(p)
        return f"{res.status}: {body}"
    return json.dumps(res.to_json())


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    res = dispatch(argv)
    print(render(res, res.fmt))
    for d in res.diagnostics:
        print(d, file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
