"""Command-line front end; every record is one JSON object per line."""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import warnings

from .arith import FactoredInteger, RandIdealError, RandomSource
from .funcfield import MODES, ff_derive_params, ff_proportionality_constant, ff_sample_ideals, function_field_from_dict
from .idealcount import count_norm, enumerate_ideals
from .kalai import sample_uniform_factored
from .numberfield import field_from_dict, split_prime
from .sampler import (
    acceptance_probability,
    derive_params,
    proportionality_constant,
    sample_ideals,
    sample_norms,
)

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="randideal", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help="64-bit seed (default: fresh entropy)")
    common.add_argument("--format", choices=("json-lines", "plain"), default="json-lines")
    common.add_argument("--engine", choices=("auto", "python", "compiled"), default="auto")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("kalai", parents=[common], help="uniform factored integers in [1, N]")
    p.add_argument("--bound", type=_positive_int, required=True)
    p.add_argument("--count", type=_positive_int, default=1)

    for name, help_ in (("sample-norm", "norms weighted by D(r)"), ("sample-ideal", "uniform random ideals")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--field", required=True)
        p.add_argument("--bound", type=_positive_int, required=True)
        p.add_argument("--count", type=_positive_int, default=1)

    p = sub.add_parser("count-ideals", parents=[common], help="D(r) for one norm")
    p.add_argument("--field", required=True)
    p.add_argument("--norm", type=_positive_int, required=True)

    p = sub.add_parser("split-prime", parents=[common], help="decomposition of a rational prime")
    p.add_argument("--field", required=True)
    p.add_argument("--prime", type=_positive_int, required=True)

    p = sub.add_parser("enumerate-ideals", parents=[common], help="all ideals of norm <= N")
    p.add_argument("--field", required=True)
    p.add_argument("--bound", type=_positive_int, required=True)

    p = sub.add_parser("ff-sample", parents=[common], help="random ideals of a function field")
    p.add_argument("--field", required=True)
    p.add_argument("--degree-bound", type=_positive_int, required=True)
    p.add_argument("--mode", choices=MODES, default="encoding-bounded")
    p.add_argument("--count", type=_positive_int, default=1)

    p = sub.add_parser("selfcheck", parents=[common], help="exact proportionality identity")
    p.add_argument("--field", required=True)
    p.add_argument("--bound", type=_positive_int, required=True)
    p.add_argument("--mode", choices=MODES, default="encoding-bounded")
    return parser


def _factored(r: FactoredInteger) -> dict:
    return {"value": str(r.value), "factors": [[str(p), e] for p, e in r.factors]}


class _Emitter:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out

    def __call__(self, record: dict):
        if self.fmt == "json-lines":
            self.out.write(json.dumps(record, separators=(",", ":")) + "\n")
        else:
            self.out.write(" ".join(f"{k}={_plain(v)}" for k, v in record.items()) + "\n")


def _plain(v) -> str:
    return v if isinstance(v, str) else json.dumps(v, separators=(",", ":"))


def _load(path: str):
    with open(path) as fh:
        data = json.load(fh)
    if "q" in data:
        return "ff", function_field_from_dict(data)
    return "nf", field_from_dict(data)


def _need(kind, expected, path):
    if kind != expected:
        what = "number field" if expected == "nf" else "function field"
        raise RandIdealError(f"{path} is not a {what} description")


def _run(args, emit) -> int:
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    emit({"seed": str(seed), "command": args.command})
    rng = RandomSource(seed)
    cmd = args.command

    if cmd == "kalai":
        for _ in range(args.count):
            r, stats = sample_uniform_factored(args.bound, rng)
            emit({**_factored(r), "rounds": stats.rounds, "primality_tests": stats.primality_tests})
        return 0

    kind, K = _load(args.field)

    if cmd == "ff-sample":
        _need(kind, "ff", args.field)
        for ideal, trials in ff_sample_ideals(K, args.degree_bound, args.mode, args.count, rng, engine=args.engine):
            if ideal.recomputed_norm() != ideal.norm.value:
                raise RandIdealError("internal error: ideal norm does not re-validate")
            emit({**ideal.to_dict(), "trials": trials})
        return 0

    if cmd == "selfcheck":
        if kind == "ff":
            params = ff_derive_params(K, args.bound, args.mode)
            const, bad = ff_proportionality_constant(params)
            emit({"check": "proportionality", "mode": args.mode, "ok": not bad,
                  "c": None if const is None else str(const), "violations": len(bad)})
            return 0 if not bad else 1
        params = derive_params(K, args.bound)
        const, bad = proportionality_constant(params)
        over = _acceptance_violations(params)
        emit({"check": "proportionality", "ok": not bad, "c": None if const is None else str(const),
              "violations": len(bad)})
        emit({"check": "acceptance-in-unit-interval", "ok": not over, "violations": len(over)})
        return 0 if not (bad or over) else 1

    _need(kind, "nf", args.field)
    if cmd == "split-prime":
        s = split_prime(K, args.prime)
        emit({"p": str(s.p),
              "primes_above": [{"e": P.e, "f": P.f, "gen": P.generator.to_list()} for P in s.primes_above]})
    elif cmd == "count-ideals":
        from sympy import factorint

        r = FactoredInteger(args.norm, tuple(sorted((int(p), int(e)) for p, e in factorint(args.norm).items())))
        emit({"D": str(count_norm(K, r))})
    elif cmd == "enumerate-ideals":
        for ideal in enumerate_ideals(K, args.bound):
            emit(ideal.to_dict())
    elif cmd == "sample-norm":
        params = derive_params(K, args.bound)
        for r, trials in sample_norms(params, args.count, rng, engine=args.engine):
            emit({**_factored(r), "trials": trials})
    elif cmd == "sample-ideal":
        for ideal, trials in sample_ideals(K, args.bound, args.count, rng, engine=args.engine):
            if ideal.recomputed_norm() != ideal.norm.value:
                raise RandIdealError("internal error: ideal norm does not re-validate")
            emit({**ideal.to_dict(), "trials": trials})
    return 0


def _acceptance_violations(params) -> list[int]:
    from .arith import factor_with_spf, smallest_prime_factors

    spf = smallest_prime_factors(params.N)
    bad = []
    for n in range(1, params.N + 1):
        a = acceptance_probability(params, factor_with_spf(n, spf))
        if not 0 <= a <= 1:
            bad.append(n)
    return bad


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    emit = _Emitter(args.format, out)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return _run(args, emit)
    except OSError as exc:
        print(f"randideal: cannot read field file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, KeyError) as exc:
        print(f"randideal: malformed field file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RandIdealError, ValueError) as exc:
        print(f"randideal: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main():  # pragma: no cover
    sys.exit(run())
