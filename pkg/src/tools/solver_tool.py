"""Choquet path solver tools for MCP"""

import logging
from typing import List, Optional

from src.config import BOUND_NAMES, get_core_probability
from src.core.choquet import ced, linear_lower_bound
from src.formatters.report_formatter import (
    format_ced_xml,
    format_error_xml,
    format_instance_xml,
    format_solution_xml,
    format_verification_xml,
)
from src.instances.generator import generate
from src.instances.instance import Instance, example1_instance, example3_instance, load, save
from src.search.runner import prepare, solve, verify

logger = logging.getLogger(__name__)

BUILTIN_INSTANCES = {
    'example1': example1_instance,
    'example3': example3_instance,
}


def load_instance(source: str) -> Instance:
    """A built-in fixture name or a path to an instance file"""
    if source in BUILTIN_INSTANCES:
        return BUILTIN_INSTANCES[source]()
    return load(source)


def parse_costs(costs: str) -> List[float]:
    """
    Parse a cost vector given as text

    Args:
        costs: comma or whitespace separated numbers, e.g. '0, 100, 100'

    Returns:
        List of floats
    """
    parts = costs.replace(',', ' ').split()
    if not parts:
        raise ValueError("cost vector is empty")
    return [float(part) for part in parts]


async def solve_instance(
    instance: str,
    algorithm: str = 'mo',
    bound: Optional[str] = None,
    gamma: Optional[str] = None,
    trace: bool = False,
) -> str:
    """
    Solve a ψ-OPT instance

    Args:
        instance: built-in fixture name ('example1', 'example3') or instance file path
        algorithm: 'mo' or 'rank'
        bound: 'maxent' or 'shapley'
        gamma: heuristic factor in (0, 1] or 'paper'
        trace: record every path emitted by the ranking search

    Returns:
        XML-formatted solution report
    """
    try:
        problem = load_instance(instance)
        setup = prepare(problem, bound, gamma)
        options = {'trace': trace} if algorithm == 'rank' else {}
        logger.info(f"Solving {instance} with {algorithm}")
        solution = solve(problem, algorithm, setup=setup, **options)
        return format_solution_xml(problem, solution, setup)

    except Exception as e:
        logger.exception(f"Error solving {instance}: {e}")
        return build_error_response('choquet_path_solution', str(e))


async def verify_instance(
    instance: str,
    bound: Optional[str] = None,
    gamma: Optional[str] = None,
    oracle: bool = True,
) -> str:
    """Run both algorithms and the brute-force oracle and report whether they agree"""
    try:
        problem = load_instance(instance)
        report = verify(problem, bound, gamma, oracle=oracle)
        return format_verification_xml(problem, report)

    except Exception as e:
        logger.exception(f"Error verifying {instance}: {e}")
        return build_error_response('choquet_path_verification', str(e))


async def generate_instance(
    num_nodes: int,
    density: float = 0.45,
    m: int = 3,
    capacity_kind: str = 'v1',
    seed: int = 0,
    exponent: float = 2.0,
    destination: Optional[str] = None,
) -> str:
    """Generate a seeded random instance, optionally saving it to a file"""
    try:
        problem = generate(num_nodes, density, m, capacity_kind, seed, exponent)
        saved = str(save(problem, destination)) if destination else None
        return format_instance_xml(problem, saved)

    except Exception as e:
        logger.exception(f"Error generating instance (seed {seed}): {e}")
        return build_error_response('choquet_path_instance', str(e))


async def evaluate_ced(instance: str, costs: str) -> str:
    """
    Evaluate ψ for a cost vector under an instance's capacity and disutility

    Args:
        instance: built-in fixture name or instance file path
        costs: cost vector, e.g. '0, 100, 100'

    Returns:
        XML with ψ and the linear lower bounds for each core probability
    """
    try:
        problem = load_instance(instance)
        x = parse_costs(costs)
        w = problem.resolved_disutility
        psi = ced(problem.capacity, w, x)
        bounds = {
            name: linear_lower_bound(get_core_probability(problem.capacity, name), w, x)
            for name in BOUND_NAMES
        }
        return format_ced_xml(x, psi, bounds)

    except Exception as e:
        logger.exception(f"Error evaluating costs '{costs}' on {instance}: {e}")
        return build_error_response('choquet_expected_disutility', str(e))


def build_error_response(root: str, error_message: str) -> str:
    """Build error response in MCP format"""
    return format_error_xml(
        root,
        error_message,
        causes=[
            'Instance file missing or not valid JSON',
            'Capacity not concave or disutility not convex',
            'No goal reachable from the start node',
        ],
        suggestions=[
            "Try a built-in instance such as 'example1' or 'example3'",
            'Check the instance with the verify tool',
        ],
    )
