"""File-driven command-line interface.

Subcommands: decide, limitset, distance, orbit.  Instances use a
line-oriented exact-rational format (see parse_instance).  Exit codes:
0 = YES, 1 = NO, 2 = UNDECIDED_BOUNDARY, 64 = input error,
65 = resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .arith.rationals import format_rational, parse_rational
from .decide import DecideOptions, VerdictTag, decide
from .distance import DEFAULT_NET_CAP, distance_upper_series
from .errors import ResourceLimitExceeded
from .limitset import Empty, Torus, limit_set
from .oracle import OracleBudgetError, orbit_prefix
from .spectral import EUCLIDEAN, MAX

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNDECIDED = 2
EXIT_INPUT_ERROR = 64
EXIT_RESOURCE_CAP = 65


class InstanceParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


@dataclass
class ProblemInstance:
    n: int
    a: List[List[Fraction]]
    x: List[Fraction]
    y: List[Fraction]
    delta: Fraction
    norm: str = EUCLIDEAN

    def serialize(self) -> str:
        lines = [f"n {self.n}"]
        for row in self.a:
            lines.append("A " + " ".join(format_rational(v) for v in row))
        lines.append("x " + " ".join(format_rational(v) for v in self.x))
        lines.append("y " + " ".join(format_rational(v) for v in self.y))
        lines.append(f"delta {format_rational(self.delta)}")
        lines.append(f"norm {self.norm}")
        return "\n".join(lines) + "\n"


def parse_instance(text: str) -> ProblemInstance:
    """Line-oriented format: `n <int>`, n rows `A <rat> ...`, `x <rat> ...`,
    `y <rat> ...`, `delta <rat>`, optional `norm euclidean|max`; `#` starts
    a comment; rationals are `p` or `p/q`."""
    n: Optional[int] = None
    a: List[List[Fraction]] = []
    x: Optional[List[Fraction]] = None
    y: Optional[List[Fraction]] = None
    delta: Optional[Fraction] = None
    norm = EUCLIDEAN
    last_line = 0

    def rationals(parts: Sequence[str], ln: int) -> List[Fraction]:
        out = []
        for p in parts:
            try:
                out.append(parse_rational(p))
            except (ValueError, ZeroDivisionError):
                raise InstanceParseError(ln, f"malformed rational {p!r}")
        return out

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last_line = ln
        parts = line.split()
        tag, rest = parts[0], parts[1:]
        if tag == "n":
            if len(rest) != 1 or not rest[0].lstrip("+").isdigit():
                raise InstanceParseError(ln, "expected `n <positive integer>`")
            n = int(rest[0])
            if n <= 0:
                raise InstanceParseError(ln, "n must be positive")
        elif tag == "A":
            if n is None:
                raise InstanceParseError(ln, "matrix row before `n`")
            if len(a) >= n:
                raise InstanceParseError(ln, f"more than {n} matrix rows")
            row = rationals(rest, ln)
            if len(row) != n:
                raise InstanceParseError(ln, f"expected {n} entries, got {len(row)}")
            a.append(row)
        elif tag == "x":
            x = rationals(rest, ln)
            if n is not None and len(x) != n:
                raise InstanceParseError(ln, f"expected {n} entries, got {len(x)}")
        elif tag == "y":
            y = rationals(rest, ln)
            if n is not None and len(y) != n:
                raise InstanceParseError(ln, f"expected {n} entries, got {len(y)}")
        elif tag == "delta":
            vals = rationals(rest, ln)
            if len(vals) != 1:
                raise InstanceParseError(ln, "expected a single rational")
            delta = vals[0]
            if delta <= 0:
                raise InstanceParseError(ln, "delta must be positive")
        elif tag == "norm":
            if rest not in (["euclidean"], ["max"]):
                raise InstanceParseError(ln, "norm must be euclidean or max")
            norm = rest[0]
        else:
            raise InstanceParseError(ln, f"unknown directive {tag!r}")

    ln = last_line + 1
    if n is None:
        raise InstanceParseError(ln, "missing `n`")
    if len(a) != n:
        raise InstanceParseError(ln, f"expected {n} matrix rows, got {len(a)}")
    if x is None:
        raise InstanceParseError(ln, "missing `x`")
    if y is None:
        raise InstanceParseError(ln, "missing `y`")
    if delta is None:
        raise InstanceParseError(ln, "missing `delta`")
    return ProblemInstance(n=n, a=a, x=x, y=y, delta=delta, norm=norm)


def _rat(v: Fraction, approx: Optional[int]) -> str:
    s = format_rational(v)
    if approx is not None:
        s += f" (~{float(v):.{approx}g})"
    return s


def _json_rat(v) -> str:
    return format_rational(Fraction(v))


def _verdict_json(v) -> dict:
    out = {"verdict": v.tag.value}
    if v.witness is not None:
        out["witness"] = v.witness
    if v.bound is not None:
        out["bound"] = v.bound
    certs = {}
    if v.growth is not None:
        certs["growth"] = {"c": _json_rat(v.growth.c), "N": v.growth.N}
    if v.contraction is not None:
        c = v.contraction
        certs["contraction"] = {
            "s": _json_rat(c.s),
            "lambda": _json_rat(c.lam),
            "K": c.K,
            "rho": _json_rat(c.rho),
            "envelope_coeff": _json_rat(c.envelope_coeff),
            "envelope_degree": c.envelope_degree,
            "zero_envelope": c.zero_envelope,
        }
    if v.gap is not None:
        certs["gap"] = {
            "outcome": v.gap.outcome.value,
            "eta": _json_rat(v.gap.eta),
            "level": v.gap.level,
        }
    if v.distance_bound is not None:
        certs["distance_bound"] = {
            "lower": _json_rat(v.distance_bound.lower),
            "upper": _json_rat(v.distance_bound.upper),
            "level": v.distance_bound.level,
        }
    if certs:
        out["certificates"] = certs
    if v.diagnostics:
        out["diagnostics"] = v.diagnostics
    return out


def _read_instance(path: str) -> ProblemInstance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _cmd_decide(args) -> int:
    inst = _read_instance(args.instance)
    options = DecideOptions(
        max_j=args.max_j, net_cap=args.net_cap, witness_cap=args.witness_cap
    )
    v = decide(inst.a, inst.x, inst.y, inst.delta, inst.norm, options)
    if args.json:
        print(json.dumps(_verdict_json(v)))
    elif v.tag == VerdictTag.YES:
        print(f"YES k={v.witness}")
    elif v.tag == VerdictTag.NO:
        print(f"NO bound={v.bound}")
    else:
        b = v.distance_bound
        print(
            f"UNDECIDED boundary lower={_rat(b.lower, args.approx)} "
            f"upper={_rat(b.upper, args.approx)}"
        )
    return {
        VerdictTag.YES: EXIT_YES,
        VerdictTag.NO: EXIT_NO,
        VerdictTag.UNDECIDED_BOUNDARY: EXIT_UNDECIDED,
    }[v.tag]


def _cmd_limitset(args) -> int:
    inst = _read_instance(args.instance)
    d = limit_set(inst.a, inst.x, inst.norm)
    if isinstance(d, Empty):
        c = d.certificate
        payload = {
            "kind": "empty",
            "growth": {"c": _json_rat(c.c), "N": c.N, "norm": c.norm},
        }
        human = f"EMPTY c={_rat(c.c, args.approx)} N={c.N}"
    else:
        payload = {
            "kind": "torus",
            "free_phases": d.h,
            "period": d.period,
            "classes": len(d.classes),
            "surviving_coords": len(d.coords),
        }
        human = (
            f"TORUS h={d.h} period={d.period} classes={len(d.classes)} "
            f"coords={len(d.coords)}"
        )
    print(json.dumps(payload) if args.json else human)
    return EXIT_YES


def _cmd_distance(args) -> int:
    inst = _read_instance(args.instance)
    d = limit_set(inst.a, inst.x, inst.norm)
    if not isinstance(d, Torus):
        print("EMPTY limit set: distance undefined", file=sys.stderr)
        return EXIT_INPUT_ERROR
    bound = distance_upper_series(d, inst.y, args.level, net_cap=args.net_cap)
    if args.json:
        print(
            json.dumps(
                {
                    "lower": _json_rat(bound.lower),
                    "upper": _json_rat(bound.upper),
                    "level": bound.level,
                }
            )
        )
    else:
        print(
            f"DISTANCE level={bound.level} lower={_rat(bound.lower, args.approx)} "
            f"upper={_rat(bound.upper, args.approx)}"
        )
    return EXIT_YES


def _cmd_orbit(args) -> int:
    inst = _read_instance(args.instance)
    prefix = orbit_prefix(inst.a, inst.x, args.horizon)
    if args.json:
        print(
            json.dumps(
                {
                    "horizon": prefix.horizon,
                    "points": [
                        [_json_rat(v) for v in p] for p in prefix.points
                    ],
                }
            )
        )
    else:
        for k, p in enumerate(prefix.points):
            print(f"k={k} " + " ".join(_rat(v, args.approx) for v in p))
    return EXIT_YES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aorbit",
        description="certified decision engine for the approximate orbit problem",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("instance", help="instance file path, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--approx",
            type=int,
            default=None,
            metavar="DIGITS",
            help="append decimal approximations to exact rationals",
        )
        p.add_argument("--net-cap", type=int, default=DEFAULT_NET_CAP)

    p = sub.add_parser("decide", help="YES/NO/UNDECIDED verdict")
    common(p)
    p.add_argument("--max-j", type=int, default=64, help="gap bisection level cap")
    p.add_argument("--witness-cap", type=int, default=1_000_000)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("limitset", help="limit-set descriptor summary")
    common(p)
    p.set_defaults(func=_cmd_limitset)

    p = sub.add_parser("distance", help="certified distance bound at a level")
    common(p)
    p.add_argument("--level", type=int, required=True, help="bracket level j")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("orbit", help="exact orbit prefix")
    common(p)
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(func=_cmd_orbit)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ResourceLimitExceeded, OracleBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_CAP


def main() -> None:
    sys.exit(run())
