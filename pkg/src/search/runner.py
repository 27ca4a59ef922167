"""Solve and verify service shared by the CLI, the MCP tools and the bench harness"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from src.config import DEFAULT_BOUND, ORACLE_PATH_CAP, TOLERANCE, get_core_probability, resolve_gamma
from src.core.capacity import Capacity, ProbabilityVector
from src.core.choquet import DisutilityFn
from src.core.heuristics import HeuristicTables, build_heuristics
from src.errors import ConfigurationError
from src.instances.instance import Instance
from src.oracle.enumeration import brute_force_optimum
from src.search.multiobjective import solve_mo
from src.search.ranking import solve_rank
from src.search.solution import Solution

logger = logging.getLogger(__name__)

ALGORITHMS = ('mo', 'rank')


@dataclass
class SolverSetup:
    """Everything a solver needs besides its own options"""

    instance: Instance
    capacity: Capacity
    disutility: DisutilityFn
    p: ProbabilityVector
    bound: str
    gamma: float
    tables: HeuristicTables


def prepare(
    instance: Instance,
    bound: Optional[str] = None,
    gamma: Union[str, float, None] = None,
) -> SolverSetup:
    """
    Resolve the scale M, the scalarization vector and the heuristic tables

    Args:
        instance: the problem instance
        bound: 'maxent' or 'shapley' (defaults to CHOQUET_DEFAULT_BOUND)
        gamma: heuristic factor, a float in (0, 1] or 'paper'; the 'paper' draw
            is seeded by the instance seed when it has one

    Returns:
        SolverSetup
    """
    bound = (bound or DEFAULT_BOUND).lower()
    gamma_value = resolve_gamma(gamma, seed=instance.metadata.get('seed'))
    capacity = instance.capacity
    p = get_core_probability(capacity, bound)
    tables = build_heuristics(instance.graph, p, gamma_value)
    logger.info(f"Prepared {instance!r} with bound={bound} p={p.p.round(6).tolist()} gamma={gamma_value:.4f}")
    return SolverSetup(instance, capacity, instance.resolved_disutility, p, bound, gamma_value, tables)


def solve(
    instance: Instance,
    algorithm: str = 'mo',
    bound: Optional[str] = None,
    gamma: Union[str, float, None] = None,
    setup: Optional[SolverSetup] = None,
    **options: Any,
) -> Solution:
    """Run one exact algorithm; options go to solve_mo (rule1, rule2, label_retention) or solve_rank (trace)"""
    if algorithm not in ALGORITHMS:
        raise ConfigurationError(f"Unknown algorithm '{algorithm}', expected one of {ALGORITHMS}")
    if setup is None:
        setup = prepare(instance, bound, gamma)

    if algorithm == 'mo':
        solution = solve_mo(instance.graph, setup.capacity, setup.disutility, setup.p, setup.tables, **options)
    else:
        solution = solve_rank(instance.graph, setup.capacity, setup.disutility, setup.p, setup.tables, **options)

    logger.info(f"{algorithm}: psi={solution.psi:.9g} path={list(solution.path.nodes)} "
                f"expanded={solution.stats.labels_expanded} in {solution.stats.solve_seconds:.3f}s")
    return solution


@dataclass
class VerificationReport:
    """ψ of every solver on one instance and whether they agree"""

    solutions: Dict[str, Solution] = field(default_factory=dict)
    tolerance: float = TOLERANCE
    oracle_skipped: Optional[str] = None

    @property
    def max_gap(self) -> float:
        values = [solution.psi for solution in self.solutions.values()]
        return max(values) - min(values) if values else 0.0

    @property
    def agreed(self) -> bool:
        return self.max_gap <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            'agreed': self.agreed,
            'max_gap': self.max_gap,
            'oracle_skipped': self.oracle_skipped,
            'solutions': {name: solution.to_dict() for name, solution in self.solutions.items()},
        }


def verify(
    instance: Instance,
    bound: Optional[str] = None,
    gamma: Union[str, float, None] = None,
    oracle: bool = True,
    cap: int = ORACLE_PATH_CAP,
    tol: float = TOLERANCE,
) -> VerificationReport:
    """Run both algorithms and, unless disabled, the brute-force oracle on the same setup"""
    setup = prepare(instance, bound, gamma)
    report = VerificationReport(tolerance=tol)
    for algorithm in ALGORITHMS:
        report.solutions[algorithm] = solve(instance, algorithm, setup=setup)

    if oracle:
        report.solutions['oracle'] = brute_force_optimum(instance.graph, setup.capacity, setup.disutility, cap)
    else:
        report.oracle_skipped = 'disabled'

    if report.agreed:
        logger.info(f"Verification passed, max gap {report.max_gap:.3g}")
    else:
        logger.error(f"Verification failed: {({k: s.psi for k, s in report.solutions.items()})}")
    return report
