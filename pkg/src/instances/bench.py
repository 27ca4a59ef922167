"""
Benchmark harness: timing cells of random instances, cross-checked between solvers

Each cell is (node count, scenario count); every seed of a cell generates one
instance that is solved by every configured algorithm under every configured
bound. Instance generation is not timed. Wherever two solvers ran on the same
instance their ψ values must agree, and on instances small enough for the
oracle the brute-force optimum must agree too; a disagreement aborts the run
after writing a repro bundle.
"""

import json
import logging
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from pathlib import Path as FilePath
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.config import BENCH_ORACLE_NODES, BENCH_OUT, BOUND_NAMES
from src.errors import AgreementError, ConfigurationError
from src.instances.generator import generate
from src.instances.instance import Instance, save
from src.oracle.enumeration import brute_force_optimum
from src.search.runner import ALGORITHMS, prepare, solve

logger = logging.getLogger(__name__)

PSI_REL_TOL = 1e-9
PSI_ABS_TOL = 1e-12


@dataclass
class BenchConfig:
    sizes: Sequence[int] = (1000, 2000, 3000)
    scenario_counts: Sequence[int] = (3, 5, 10)
    seeds_per_cell: int = 5
    algorithms: Sequence[str] = ALGORITHMS
    bounds: Sequence[str] = BOUND_NAMES
    gamma: Union[str, float] = 'paper'
    density: float = 0.45
    capacity_kind: str = 'v1'
    exponent: float = 2.0
    base_seed: int = 0
    oracle_nodes: int = BENCH_ORACLE_NODES
    repro_dir: str = 'repro'

    def validate(self) -> None:
        if not self.sizes or not self.scenario_counts:
            raise ConfigurationError("bench needs at least one size and one scenario count")
        if self.seeds_per_cell < 1:
            raise ConfigurationError(f"seeds_per_cell must be positive, got {self.seeds_per_cell}")
        for algorithm in self.algorithms:
            if algorithm not in ALGORITHMS:
                raise ConfigurationError(f"Unknown algorithm '{algorithm}', expected one of {ALGORITHMS}")
        for bound in self.bounds:
            if bound not in BOUND_NAMES:
                raise ConfigurationError(f"Unknown bound '{bound}', expected one of {BOUND_NAMES}")

    def to_dict(self) -> Dict[str, Any]:
        doc = asdict(self)
        for key in ('sizes', 'scenario_counts', 'algorithms', 'bounds'):
            doc[key] = list(doc[key])
        return doc


@dataclass
class BenchRecord:
    """One (cell, seed, bound, algorithm) run"""

    algorithm: str
    bound: str
    num_nodes: int
    m: int
    seed: int
    gamma: float
    psi: float
    solve_seconds: float
    heuristic_seconds: float
    stats: Dict[str, Any]
    oracle_checked: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class BenchReport:
    config: BenchConfig
    records: List[BenchRecord] = field(default_factory=list)

    def rows(self) -> List[Dict[str, Any]]:
        """Mean times and label counts per (algorithm, bound, node count, scenario count)"""
        groups: Dict[Tuple[str, str, int, int], List[BenchRecord]] = defaultdict(list)
        for record in self.records:
            groups[(record.algorithm, record.bound, record.num_nodes, record.m)].append(record)

        rows = []
        for (algorithm, bound, num_nodes, m), records in sorted(groups.items()):
            count = len(records)
            rows.append({
                'algorithm': algorithm,
                'bound': bound,
                'num_nodes': num_nodes,
                'm': m,
                'seeds': count,
                'mean_seconds': sum(r.solve_seconds for r in records) / count,
                'mean_heuristic_seconds': sum(r.heuristic_seconds for r in records) / count,
                'mean_labels_expanded': sum(r.stats['labels_expanded'] for r in records) / count,
                'mean_labels_created': sum(r.stats['labels_created'] for r in records) / count,
            })
        return rows

    def to_dict(self) -> Dict[str, Any]:
        return {
            'config': self.config.to_dict(),
            'records': [record.to_dict() for record in self.records],
            'rows': self.rows(),
        }

    def write(self, destination: Union[str, FilePath]) -> FilePath:
        destination = FilePath(destination)
        destination.parent.mkdir(parents=True, exist_ok=True)
        destination.write_text(json.dumps(self.to_dict(), indent=2) + '\n', encoding='utf-8')
        logger.info(f"Bench report with {len(self.records)} records written to {destination}")
        return destination


def _agree(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=PSI_REL_TOL, abs_tol=PSI_ABS_TOL)


def write_repro_bundle(
    config: BenchConfig,
    instance: Instance,
    bound: str,
    gamma: float,
    values: Dict[str, float],
) -> FilePath:
    """Save the instance and the run parameters needed to replay a disagreement"""
    seed = instance.metadata.get('seed')
    bundle = FilePath(config.repro_dir) / f"n{instance.graph.num_nodes}_m{instance.m}_seed{seed}_{bound}"
    save(instance, bundle / 'instance.json')
    (bundle / 'repro.json').write_text(json.dumps({
        'config': config.to_dict(),
        'seed': seed,
        'bound': bound,
        'gamma': gamma,
        'psi': values,
    }, indent=2) + '\n', encoding='utf-8')
    return bundle


def _check_agreement(config: BenchConfig, instance: Instance, bound: str, gamma: float,
                     values: Dict[str, float]) -> None:
    names = list(values)
    reference = values[names[0]]
    if all(_agree(reference, values[name]) for name in names[1:]):
        return
    bundle = write_repro_bundle(config, instance, bound, gamma, values)
    logger.error(f"psi disagreement on seed {instance.metadata.get('seed')} ({bound}): {values}")
    raise AgreementError(f"solvers disagree on psi: {values}", repro_path=str(bundle))


def run_bench(config: BenchConfig, out: Optional[Union[str, FilePath]] = BENCH_OUT) -> BenchReport:
    """
    Run the full cross-product of the configuration

    Args:
        config: bench configuration
        out: JSON report destination, None to skip writing

    Returns:
        BenchReport with one record per (cell, seed, bound, algorithm)
    """
    config.validate()
    report = BenchReport(config)

    for num_nodes in config.sizes:
        for m in config.scenario_counts:
            logger.info(f"Bench cell: {num_nodes} nodes, {m} scenarios, {config.seeds_per_cell} seeds")
            for k in range(config.seeds_per_cell):
                seed = config.base_seed + k
                instance = generate(num_nodes, config.density, m, config.capacity_kind, seed, config.exponent)
                check_oracle = num_nodes <= config.oracle_nodes

                for bound in config.bounds:
                    setup = prepare(instance, bound, config.gamma)
                    values: Dict[str, float] = {}
                    for algorithm in config.algorithms:
                        solution = solve(instance, algorithm, setup=setup)
                        values[algorithm] = solution.psi
                        report.records.append(BenchRecord(
                            algorithm=algorithm,
                            bound=bound,
                            num_nodes=num_nodes,
                            m=m,
                            seed=seed,
                            gamma=setup.gamma,
                            psi=solution.psi,
                            solve_seconds=solution.stats.solve_seconds,
                            heuristic_seconds=solution.stats.heuristic_seconds,
                            stats=solution.stats.to_dict(timings=False),
                            oracle_checked=check_oracle,
                        ))
                    if check_oracle:
                        oracle = brute_force_optimum(instance.graph, setup.capacity, setup.disutility)
                        values['oracle'] = oracle.psi
                    if len(values) > 1:
                        _check_agreement(config, instance, bound, setup.gamma, values)

    if out is not None:
        report.write(out)
    return report
