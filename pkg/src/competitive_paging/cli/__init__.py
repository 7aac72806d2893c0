"""``paging`` command-line harness.

Subcommands: ``gen``, ``run``, ``ratio``, ``adversary``, ``combine``.
Exit codes: 0 success, 1 usage error, 2 invalid input, 3 infeasible
combiner constants (``sum(1/c) > 1``).

``--seq`` takes a sequence file or ``gen:<kind>[:<param>]`` where kind is
one of ``uniform``, ``cyclic`` (param = cycle length), ``altpairs``,
``complement`` or ``nemesis`` (sequence adversarial to ``--alg``; param =
number of rounds for the randomized adversary, otherwise ``--len``).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from fractions import Fraction

import numpy as np

from ..adversary import deterministic_nemesis, generate_nemesis
from ..algorithms import ONLINE, belady_opt, by_name
from ..combiner import CombinedAlgorithm, CombinerConfig, run_combined, verify_punish_guarantee
from ..core.bits import derive_seed
from ..core.errors import (
    InfeasibleConfigurationError,
    InvalidInputError,
    PagingError,
    ResourceLimitError,
    UnsupportedConfigurationError,
)
from ..core.exact import expected_cost_exact
from ..core.model import ProblemType, harmonic
from ..core.report import ratio_report
from ..core.simulation import simulate
from . import sequences

REPORT_HEADER = ["alg", "k", "n", "seq", "trials", "seed", "cost", "stderr", "opt", "ratio", "intercept"]

EXIT_USAGE, EXIT_INPUT, EXIT_INFEASIBLE = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt_float(x) -> str:
    return format(float(x), ".6g")


def fmt_exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def parse_constants(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad constants {text!r}") from None


def make_algorithm(name: str, ptype: ProblemType):
    """Build an on-line algorithm from its CLI name (``opt`` is handled by callers)."""
    if name.startswith("combined:"):
        try:
            _, names, consts = name.split(":")
        except ValueError:
            raise UsageError("combined algorithms are written combined:<a,b,...>:<c1,c2,...>") from None
        members = [make_algorithm(a, ptype) for a in names.split(",")]
        return CombinedAlgorithm(CombinerConfig(members, parse_constants(consts)))
    if name not in ONLINE:
        raise UsageError(f"unknown algorithm {name!r}; choose from {sorted(ONLINE) + ['opt', 'combined:...']}")
    return by_name(name, ptype)


def resolve_type(args, header) -> ProblemType:
    k = args.k if args.k is not None else (header[0] if header else None)
    n = args.n if args.n is not None else (header[1] if header else None)
    if k is None or n is None:
        raise UsageError("--k and --n are required unless the sequence file has a '# k= n=' header")
    return ProblemType(k, n)


def load_sequence(args, alg_name: str | None = None):
    """Return ``(requests, ptype, descriptor)`` for ``--seq``."""
    source = args.seq
    if source.startswith("gen:"):
        parts = source.split(":")
        kind = parts[1] if len(parts) > 1 else ""
        param = None
        if len(parts) > 2:
            try:
                param = int(parts[2])
            except ValueError:
                raise UsageError(f"bad generator parameter in {source!r}") from None
        ptype = resolve_type(args, None)
        if kind == "nemesis":
            if alg_name is None or alg_name == "opt":
                raise UsageError("gen:nemesis needs a target --alg")
            target = make_algorithm(alg_name, ptype)
            if target.randomized:
                return generate_nemesis(target, param if param is not None else args.len).requests, ptype, source
            return deterministic_nemesis(target, args.len), ptype, source
        try:
            return sequences.generate(kind, ptype.k, ptype.n, args.len, args.seed, param), ptype, source
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        requests, header = sequences.read_sequence(source)
    except OSError as exc:
        raise InvalidInputError(f"cannot read sequence file: {exc}") from None
    return requests, resolve_type(args, header), source


def _prefix(costs) -> np.ndarray:
    return np.cumsum(np.asarray(costs, dtype=float))


def evaluate(alg_name, ptype, requests, *, seed, trials, exact):
    """Cost of ``alg_name`` on ``requests``: ``(cost, stderr, per-step costs, trace)``."""
    if alg_name == "opt":
        res = belady_opt(requests, ptype)
        trace = simulate(_belady(ptype, requests), ptype, requests)
        return res.cost, 0.0, trace.costs, trace
    alg = make_algorithm(alg_name, ptype)
    if exact:
        if not alg.enumerable:
            raise InvalidInputError(f"{alg.name} does not expose its random branches; drop --exact")
        ex = expected_cost_exact(alg, ptype, requests)
        return ex.total, 0.0, ex.per_step, None
    if trials <= 1 or not alg.randomized:
        trace = simulate(alg, ptype, requests, seed=seed)
        return trace.total_cost, 0.0, trace.costs, trace
    per_trial = np.array([simulate(alg, ptype, requests, seed=derive_seed(seed, i)).costs for i in range(trials)],
                         dtype=float).reshape(trials, len(requests))
    totals = per_trial.sum(axis=1)
    stderr = float(totals.std(ddof=1) / np.sqrt(trials))
    return float(totals.mean()), stderr, per_trial.mean(axis=0), None


def _belady(ptype, requests):
    from ..algorithms.offline import Belady

    return Belady(ptype, requests)


def _report_row(alg_name, ptype, descriptor, trials, seed, cost, stderr, opt, report):
    cost_text = fmt_exact(cost) if isinstance(cost, Fraction) else fmt_float(cost)
    return {
        "alg": alg_name, "k": ptype.k, "n": ptype.n, "seq": descriptor, "trials": trials, "seed": seed,
        "cost": cost_text, "stderr": fmt_float(stderr), "opt": opt, "ratio": fmt_float(report.ratio),
        "intercept": fmt_float(report.intercept) if report.intercept else "",
    }


def _write_rows(fh, rows):
    w = csv.DictWriter(fh, fieldnames=REPORT_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def cmd_gen(args):
    if args.kind == "file":
        if not args.input:
            raise UsageError("--kind file needs --input")
        requests, header = sequences.read_sequence(args.input)
        k, n = header if header else (args.k, args.n)
    else:
        if args.k is None or args.n is None:
            raise UsageError("--k and --n are required")
        ProblemType(args.k, args.n)
        try:
            requests = sequences.generate(args.kind, args.k, args.n, args.len, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        k, n = args.k, args.n
    with _open_out(args.output) as fh:
        sequences.write_sequence(fh, requests, k, n)
    return 0


def cmd_run(args):
    requests, ptype, desc = load_sequence(args, args.alg)
    if args.out == "jsonl":
        if args.alg == "opt":
            trace = simulate(_belady(ptype, requests), ptype, requests)
        else:
            trace = simulate(make_algorithm(args.alg, ptype), ptype, requests, seed=args.seed)
        with _open_out(args.output) as fh:
            for s in trace.steps:
                fh.write(json.dumps({"t": s.t, "req": s.request, "fault": s.fault,
                                     "evict": s.evicted, "cache": sorted(s.cache_after)}) + "\n")
        return 0
    cost, stderr, _, _ = evaluate(args.alg, ptype, requests, seed=args.seed, trials=args.trials, exact=args.exact)
    opt = belady_opt(requests, ptype).cost
    report = ratio_report(cost, opt, stderr=stderr, trials=args.trials, seed=args.seed)
    with _open_out(args.output) as fh:
        _write_rows(fh, [_report_row(args.alg, ptype, desc, args.trials, args.seed, cost, stderr, opt, report)])
    return 0


def cmd_ratio(args):
    requests, ptype, desc = load_sequence(args, args.alg)
    cost, stderr, per_step, _ = evaluate(args.alg, ptype, requests, seed=args.seed, trials=args.trials,
                                         exact=args.exact)
    opt_trace = simulate(_belady(ptype, requests), ptype, requests)
    opt = opt_trace.total_cost
    kwargs = {}
    if args.prefix_fit:
        kwargs = dict(alg_prefix=_prefix([float(c) for c in per_step]), opt_prefix=_prefix(opt_trace.costs))
    report = ratio_report(cost, opt, stderr=stderr, trials=args.trials, seed=args.seed, **kwargs)
    with _open_out(args.output) as fh:
        _write_rows(fh, [_report_row(args.alg, ptype, desc, args.trials, args.seed, cost, stderr, opt, report)])
    return 0


def cmd_adversary(args):
    ptype = ProblemType(args.k, args.n)
    alg = make_algorithm(args.alg, ptype)
    if not alg.enumerable:
        raise InvalidInputError(f"{alg.name} does not expose its random branches")
    result = generate_nemesis(alg, args.phases)
    floor = harmonic(ptype.k)
    assert all(c >= floor for c in result.phase_costs)
    rows = [{"phase": i + 1, "expected_cost": fmt_exact(c), "approx": fmt_float(c), "harmonic_k": fmt_exact(floor)}
            for i, c in enumerate(result.phase_costs)]
    fields = ["phase", "expected_cost", "approx", "harmonic_k"]
    if args.out:
        with open(args.out + ".txt", "w") as fh:
            sequences.write_sequence(fh, result.requests, ptype.k, ptype.n)
        csv_path = args.out + ".csv"
    else:
        csv_path = None
    with _open_out(csv_path) as fh:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


def cmd_combine(args):
    ptype = ProblemType(args.k, args.n)
    names = [a.strip() for a in args.algs.split(",") if a.strip()]
    constants = parse_constants(args.c)
    if len(names) != len(constants):
        raise UsageError(f"{len(names)} algorithms but {len(constants)} constants")
    config = CombinerConfig([make_algorithm(a, ptype) for a in names], constants)
    requests, _, desc = load_sequence(args)
    run = run_combined(CombinedAlgorithm(config), requests, seed=args.seed)
    with _open_out(args.ledger) as fh:
        run.ledger.write_jsonl(fh)
    summary = {"cost": run.ledger.combined_cost, "pun": list(run.ledger.pun),
               "member_costs": dict(zip(names, run.ledger.member_costs)), "seq": desc, "seed": args.seed}
    status = 0
    if args.verify:
        v = verify_punish_guarantee(run.ledger, config)
        summary["verified"] = v.ok
        if not v.ok:
            summary["violation"] = {"t": v.violation[0], "i": v.violation[1], "reason": v.reason}
            status = 4
    print(json.dumps(summary), file=sys.stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="paging", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, k_default=None, n_default=None):
        sp.add_argument("--k", type=int, default=k_default)
        sp.add_argument("--n", type=int, default=n_default)
        sp.add_argument("--len", type=int, default=1000, help="length for generated sequences")
        sp.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="generate a request sequence file")
    g.add_argument("--kind", required=True, choices=list(sequences.KINDS) + ["file"])
    g.add_argument("--input", help="source file for --kind file")
    g.add_argument("-o", "--output")
    common(g)
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (("run", cmd_run, "run one algorithm"),
                                 ("ratio", cmd_ratio, "estimate the competitive ratio vs Belady")):
        r = sub.add_parser(name, help=helptext)
        r.add_argument("--alg", required=True)
        r.add_argument("--seq", required=True)
        r.add_argument("--trials", type=int, default=1)
        r.add_argument("--exact", action="store_true")
        r.add_argument("-o", "--output")
        common(r)
        r.set_defaults(func=func)
        if name == "run":
            r.add_argument("--out", choices=["csv", "jsonl"], default="csv")
        else:
            r.add_argument("--prefix-fit", action="store_true")

    a = sub.add_parser("adversary", help="nemesis sequence against a randomized algorithm")
    a.add_argument("--alg", required=True)
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--phases", type=int, required=True)
    a.add_argument("--out", help="path prefix for <out>.txt and <out>.csv (default: CSV to stdout)")
    a.set_defaults(func=cmd_adversary)

    c = sub.add_parser("combine", help="punish-rule combination of several algorithms")
    c.add_argument("--algs", required=True)
    c.add_argument("--c", required=True)
    c.add_argument("--seq", default="gen:uniform")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--ledger", help="ledger JSONL path (default stdout)")
    common(c, 4, 10)
    c.set_defaults(func=cmd_combine)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"paging: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleConfigurationError as exc:
        print(f"paging: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InvalidInputError, UnsupportedConfigurationError, ResourceLimitError, PagingError, TypeError) as exc:
        print(f"paging: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
