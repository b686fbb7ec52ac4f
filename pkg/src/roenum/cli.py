"""Command-line front end.

Subcommands: gen, enumerate, parallel, uniformity, profile, verify.
Exit codes: 0 pass, 1 assertion/statistical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import exact, fptas, fpras, parallel, stats, swor
from .problem import brute_force_solutions, verify_self_reducibility
from .problems import (SimulatedOracleConfig, SimulatedOracles,
                       format_instance, generate_knapsack, parse_instance,
                       Knapsack)
from .record import EmissionRecord


def _load_instance(path: str):
    return parse_instance(Path(path).read_text())


def _write(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _oracles(problem, args):
    cfg = SimulatedOracleConfig(
        noise_mode=getattr(args, "noise", "none"),
        seed=args.seed,
        nonce=getattr(args, "nonce", 0))
    return SimulatedOracles(problem, cfg)


def _run_one(problem, x, args, seed: int) -> stats.RunReport:
    sim = _oracles(problem, args)
    rng = random.Random(seed)
    algo = args.algo
    if algo == "exact":
        emissions = [EmissionRecord(w, None, None, Fraction(0), 1, i)
                     for i, w in enumerate(
                         exact.ara_enumerate(problem, sim.exact, x, rng), 1)]
    elif algo == "fptas":
        emissions = list(fptas.aia_enumerate(
            problem, sim.fptas, x, rng, eps_mode=args.epsilon_mode))
    elif algo == "fpras":
        emissions = list(fpras.axa_enumerate(
            problem, sim.fpras, x, Fraction(args.delta), rng,
            eps_mode=args.epsilon_mode))
    elif algo == "swor":
        emissions = list(swor.swor_enumerate(problem, sim.exact, x, rng))
    else:
        raise SystemExit(2)
    return stats.RunReport(algo, getattr(problem, "name", "?"), seed, emissions)


def cmd_gen(args) -> int:
    inst = generate_knapsack(args.n, args.seed, args.capacity_frac)
    _write(args, format_instance(Knapsack(), inst))
    return 0


def cmd_enumerate(args) -> int:
    problem, x = _load_instance(args.instance)
    report = _run_one(problem, x, args, args.seed)
    _write(args, stats.emissions_csv(report))
    return 0


def cmd_parallel(args) -> int:
    problem, x = _load_instance(args.instance)
    if args.algo == "pswor":
        sim = _oracles(problem, args)
        outputs, draws, makespan = parallel.pswor_run(
            problem, sim.exact, x, args.slaves, args.seed,
            s_ticks=args.s_ticks, t_ticks=args.t_ticks)
        print(f"pswor outputs={len(outputs)} draws={draws} "
              f"makespan={makespan}", file=sys.stderr)
        report = stats.RunReport("pswor", problem.name, args.seed, outputs)
        _write(args, stats.emissions_csv(report))
        return 0
    factory = parallel.default_oracle_factory(
        problem, noise_mode=args.noise, seed=args.seed)
    if args.transport == "tcp":
        from . import transport
        order = transport.run_parallel_tcp(
            problem, x, Fraction(args.delta), args.slaves, args.seed, factory)
        _write(args, "\n".join(order) + "\n")
        return 0
    result = parallel.run_parallel(
        problem, x, Fraction(args.delta), args.slaves, args.seed,
        oracle_factory=factory, mode=args.mode,
        alpha=Fraction(args.alpha), delta_star=Fraction(args.delta_star),
        s_ticks=args.s_ticks, t_ticks=args.t_ticks)
    print(f"Q={result.prefill_q} prefill_tick={result.prefill_tick} "
          f"makespan={result.makespan} stalls={result.stalls}",
          file=sys.stderr)
    report = stats.RunReport("paraxa", problem.name, args.seed, result.outputs)
    _write(args, stats.emissions_csv(report))
    return 0 if result.complete else 1


def cmd_uniformity(args) -> int:
    problem, x = _load_instance(args.instance)
    runs = [_run_one(problem, x, args, args.seed + k)
            for k in range(args.runs)]
    try:
        result = stats.uniformity_test(runs, mode=args.mode)
    except stats.InsufficientRuns as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(f"{result['test']}: pvalue={result.get('pvalue', result.get('min_pvalue')):.6g} "
          f"runs={result['runs']} passed={result['passed']}")
    return 0 if result["passed"] else 1


def cmd_profile(args) -> int:
    problem, x = _load_instance(args.instance)
    report = _run_one(problem, x, args, args.seed)
    _write(args, stats.profile_csv(stats.delay_profile(report, args.window)))
    return 0


def cmd_verify(args) -> int:
    problem, x = _load_instance(args.instance)
    ok = verify_self_reducibility(problem, x, args.max_count)
    sol = brute_force_solutions(problem, x)
    print(f"self-reducible={ok} solutions={len(sol)}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roenum")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)

    p = sub.add_parser("gen", help="generate a knapsack instance file")
    p.add_argument("--problem", choices=["knapsack"], default="knapsack")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--capacity-frac", type=float, default=0.25)
    common(p)
    p.set_defaults(func=cmd_gen)

    def enum_args(p):
        p.add_argument("--instance", required=True)
        p.add_argument("--algo",
                       choices=["exact", "fptas", "fpras", "swor"],
                       default="fptas")
        p.add_argument("--epsilon-mode", choices=["proof", "literal"],
                       default="proof")
        p.add_argument("--delta", default="1/10")
        p.add_argument("--noise", choices=["none", "hash", "extreme"],
                       default="none")
        common(p)

    p = sub.add_parser("enumerate", help="run one enumeration session")
    enum_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("parallel", help="run the master/slave pipeline")
    p.add_argument("--instance", required=True)
    p.add_argument("--algo", choices=["paraxa", "pswor"], default="paraxa")
    p.add_argument("--slaves", type=int, default=2)
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--delta", default="1/10")
    p.add_argument("--delta-star", default="1/10")
    p.add_argument("--mode", choices=["greedy", "paced"], default="greedy")
    p.add_argument("--transport", choices=["virtual", "tcp"],
                   default="virtual")
    p.add_argument("--s-ticks", type=int, default=100)
    p.add_argument("--t-ticks", type=int, default=100)
    p.add_argument("--noise", choices=["none", "hash", "extreme"],
                   default="none")
    common(p)
    p.set_defaults(func=cmd_parallel)

    p = sub.add_parser("uniformity", help="chi-square uniformity check")
    enum_args(p)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--mode", choices=["first", "full"], default="first")
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("profile", help="windowed delay/attempt profile")
    enum_args(p)
    p.add_argument("--window", type=int, default=100)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="brute-force self-reducibility check")
    p.add_argument("--instance", required=True)
    p.add_argument("--max-count", type=int, default=1 << 20)
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
