"""Configuration for the Choquet path solver"""

import os
import random
from typing import Optional, Union

from dotenv import load_dotenv

load_dotenv()

# Numerical configuration
TOLERANCE = float(os.getenv('CHOQUET_TOLERANCE', 1e-9))
MAX_SCENARIOS = int(os.getenv('CHOQUET_MAX_SCENARIOS', 16))

# Solver defaults
DEFAULT_BOUND = os.getenv('CHOQUET_DEFAULT_BOUND', 'maxent')  # 'maxent' or 'shapley'
DEFAULT_GAMMA = os.getenv('CHOQUET_DEFAULT_GAMMA', '1.0')     # float or 'paper'
GAMMA_DRAW_RANGE = (0.7, 1.0)

# Oracle / generator limits
ORACLE_PATH_CAP = int(os.getenv('CHOQUET_ORACLE_PATH_CAP', 1_000_000))
GENERATOR_RETRIES = int(os.getenv('CHOQUET_GENERATOR_RETRIES', 20))

# Benchmark harness
BENCH_ORACLE_NODES = int(os.getenv('CHOQUET_BENCH_ORACLE_NODES', 12))
BENCH_OUT = os.getenv('CHOQUET_BENCH_OUT', 'bench_report.json')

# Logging configuration
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

BOUND_NAMES = ('maxent', 'shapley')


def get_core_probability(capacity, bound: Optional[str] = None):
    """Get the core probability used for scalarization based on configuration"""
    bound = (bound or DEFAULT_BOUND).lower()
    if bound in ('maxent', 'p*', 'pstar'):
        from src.core.capacity import max_entropy
        return max_entropy(capacity)
    elif bound in ('shapley', 'phi'):
        from src.core.capacity import shapley
        return shapley(capacity)

    from src.errors import ConfigurationError
    raise ConfigurationError(f"Unknown bound '{bound}', expected one of {BOUND_NAMES}")


def resolve_gamma(spec: Union[str, float, None] = None, seed: Optional[int] = None) -> float:
    """
    Turn a gamma option into a heuristic scale factor

    Args:
        spec: a float in (0, 1], its string form, or 'paper' for a draw in [0.7, 1)
        seed: seed for the 'paper' draw (one gamma per run)

    Returns:
        The gamma value
    """
    if spec is None:
        spec = DEFAULT_GAMMA

    if isinstance(spec, str) and spec.strip().lower() == 'paper':
        from src.instances.generator import draw_gamma
        if seed is None:
            seed = random.SystemRandom().randrange(2**32)
        return draw_gamma(seed)

    from src.errors import ConfigurationError
    try:
        gamma = float(spec)
    except (TypeError, ValueError):
        raise ConfigurationError(f"Invalid gamma '{spec}', expected a float in (0, 1] or 'paper'")

    if not 0.0 < gamma <= 1.0:
        raise ConfigurationError(f"gamma must lie in (0, 1], got {gamma}")
    return gamma
