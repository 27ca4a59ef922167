"""Command line entry point: gen, solve, verify and bench"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from src.config import BENCH_OUT, BOUND_NAMES, LOG_LEVEL
from src.errors import AgreementError, ChoquetPathError
from src.formatters.report_formatter import format_bench_table
from src.instances.bench import BenchConfig, run_bench
from src.instances.generator import generate
from src.instances.instance import dumps, save
from src.search.runner import ALGORITHMS, prepare, solve, verify
from src.tools.solver_tool import load_instance

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_ERROR, EXIT_DISAGREEMENT = 0, 1, 2


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(',') if part.strip()]


def _name_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(',') if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='choquet-paths', description='Robust path search under Choquet expected disutility')
    parser.add_argument('--log-level', default=LOG_LEVEL, help='logging level (default from LOG_LEVEL)')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help='generate a seeded random instance')
    gen.add_argument('--nodes', type=int, required=True)
    gen.add_argument('--density', type=float, default=0.45)
    gen.add_argument('--m', type=int, default=3, help='number of scenarios')
    gen.add_argument('--capacity', choices=('v1', 'v2'), default='v1')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--exponent', type=float, default=2.0, help='exponent of the power disutility')
    gen.add_argument('--out', help='instance file (stdout when omitted)')

    for name, help_text in (('solve', 'solve one instance'), ('verify', 'compare both solvers and the oracle')):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument('--instance', required=True, help="instance file, or 'example1' / 'example3'")
        cmd.add_argument('--bound', choices=BOUND_NAMES, default=None)
        cmd.add_argument('--gamma', default=None, help="heuristic factor in (0, 1] or 'paper'")
        if name == 'solve':
            cmd.add_argument('--algorithm', choices=ALGORITHMS, default='mo')
            cmd.add_argument('--trace', action='store_true', help='record emitted paths (rank)')
            cmd.add_argument('--no-rule1', dest='rule1', action='store_false')
            cmd.add_argument('--no-rule2', dest='rule2', action='store_false')
            cmd.add_argument('--no-label-retention', dest='label_retention', action='store_false',
                             help='keep a single ψ-best label per node (not admissible)')
        else:
            cmd.add_argument('--no-oracle', dest='oracle', action='store_false')

    bench = sub.add_parser('bench', help='timing table over random instances')
    bench.add_argument('--sizes', type=_int_list, default=[1000, 2000, 3000])
    bench.add_argument('--m', dest='scenario_counts', type=_int_list, default=[3, 5, 10])
    bench.add_argument('--seeds', type=int, default=5, help='seeds per cell')
    bench.add_argument('--algorithms', type=_name_list, default=list(ALGORITHMS))
    bench.add_argument('--bounds', type=_name_list, default=list(BOUND_NAMES))
    bench.add_argument('--gamma', default='paper')
    bench.add_argument('--density', type=float, default=0.45)
    bench.add_argument('--capacity', choices=('v1', 'v2'), default='v1')
    bench.add_argument('--base-seed', type=int, default=0)
    bench.add_argument('--repro-dir', default='repro')
    bench.add_argument('--out', default=BENCH_OUT, help='machine-readable JSON report')
    return parser


def _emit(document) -> None:
    sys.stdout.write(json.dumps(document, indent=2) + '\n')


def run_gen(args) -> int:
    instance = generate(args.nodes, args.density, args.m, args.capacity, args.seed, args.exponent)
    if args.out:
        save(instance, args.out)
        logger.info(f"Instance written to {args.out}")
    else:
        sys.stdout.write(dumps(instance))
    return EXIT_OK


def run_solve(args) -> int:
    instance = load_instance(args.instance)
    setup = prepare(instance, args.bound, args.gamma)
    if args.algorithm == 'mo':
        options = {'rule1': args.rule1, 'rule2': args.rule2, 'label_retention': args.label_retention}
    else:
        options = {'trace': args.trace}
    solution = solve(instance, args.algorithm, setup=setup, **options)
    document = solution.to_dict()
    document.update({'bound': setup.bound, 'gamma': setup.gamma, 'p': setup.p.p.tolist()})
    _emit(document)
    return EXIT_OK


def run_verify(args) -> int:
    instance = load_instance(args.instance)
    report = verify(instance, args.bound, args.gamma, oracle=args.oracle)
    _emit(report.to_dict())
    if not report.agreed:
        psi = {name: solution.psi for name, solution in report.solutions.items()}
        raise AgreementError(f"solvers disagree on psi: {psi}")
    return EXIT_OK


def run_bench_command(args) -> int:
    config = BenchConfig(
        sizes=args.sizes,
        scenario_counts=args.scenario_counts,
        seeds_per_cell=args.seeds,
        algorithms=args.algorithms,
        bounds=args.bounds,
        gamma=args.gamma,
        density=args.density,
        capacity_kind=args.capacity,
        base_seed=args.base_seed,
        repro_dir=args.repro_dir,
    )
    report = run_bench(config, args.out)
    sys.stdout.write(format_bench_table(report.rows()) + '\n')
    return EXIT_OK


COMMANDS = {
    'gen': run_gen,
    'solve': run_solve,
    'verify': run_verify,
    'bench': run_bench_command,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)]
    )

    try:
        return COMMANDS[args.command](args)
    except AgreementError as e:
        logger.error(str(e))
        return EXIT_DISAGREEMENT
    except (ChoquetPathError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
