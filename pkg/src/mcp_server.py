"""MCP Choquet Path Server - Main entry point"""

from fastmcp import FastMCP
import os
import sys
import logging
from typing import Optional

# Add the parent directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config import DEFAULT_BOUND, DEFAULT_GAMMA, LOG_LEVEL

# Configure logging
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler(sys.stderr)]
)

# Disable FastMCP logging to stdout
logging.getLogger("FastMCP").setLevel(logging.ERROR)
logging.getLogger("fastmcp").setLevel(logging.ERROR)
logger = logging.getLogger(__name__)

# Import tool implementations
from src.tools.solver_tool import evaluate_ced, generate_instance, solve_instance, verify_instance

# Create MCP server instance
mcp = FastMCP("mcp-choquet-path-server")


@mcp.tool()
async def solve_instance_tool(
    instance: str,
    algorithm: str = "mo",
    bound: Optional[str] = None,
    gamma: Optional[str] = None,
    trace: bool = False
) -> str:
    """
    Finds a robust path minimizing Choquet expected disutility.

    Costs differ by scenario and scenario likelihoods are only known through
    a capacity. The tool returns the path with the smallest Choquet expected
    disutility, found by exact search:
    - "mo": multiobjective label search with Pareto and bound pruning
    - "rank": ranks paths by expected cost under a core probability until
      the bound proves the incumbent optimal

    Args:
        instance: "example1", "example3" or the path of an instance JSON file
        algorithm: "mo" or "rank"
        bound: core probability for the bounds, "maxent" or "shapley"
        gamma: heuristic factor in (0, 1] or "paper" for a draw in [0.7, 1)
        trace: with "rank", list every path emitted before the stop

    Returns:
        XML-formatted solution with path, cost vector and search statistics
    """
    try:
        return await solve_instance(instance, algorithm, bound, gamma, trace)
    except Exception as e:
        logger.error(f"Error solving {instance}: {e}")
        return f"""<choquet_path_solution error="true">
    <error_message>{str(e)}</error_message>
    <suggestion>Please verify the instance and try again</suggestion>
</choquet_path_solution>"""


@mcp.tool()
async def verify_instance_tool(
    instance: str,
    bound: Optional[str] = None,
    gamma: Optional[str] = None,
    oracle: bool = True
) -> str:
    """
    Cross-checks both exact algorithms, and by default an exhaustive
    enumeration of simple paths, on one instance.

    Args:
        instance: "example1", "example3" or the path of an instance JSON file
        bound: core probability for the bounds, "maxent" or "shapley"
        gamma: heuristic factor in (0, 1] or "paper"
        oracle: also enumerate every simple path (small instances only)

    Returns:
        XML report with each solver's result and whether the values agree
    """
    try:
        return await verify_instance(instance, bound, gamma, oracle)
    except Exception as e:
        logger.error(f"Error verifying {instance}: {e}")
        return f"""<choquet_path_verification error="true">
    <error_message>{str(e)}</error_message>
</choquet_path_verification>"""


@mcp.tool()
async def generate_instance_tool(
    num_nodes: int,
    density: float = 0.45,
    m: int = 3,
    capacity_kind: str = "v1",
    seed: int = 0,
    exponent: float = 2.0,
    destination: Optional[str] = None
) -> str:
    """
    Generates a seeded random instance.

    Every ordered node pair carries an arc with probability `density`; arc
    costs are integers in [0, 100] per scenario. Node 0 is the start and the
    last node the goal.

    Args:
        num_nodes: number of nodes (at least 2)
        density: arc probability per ordered pair
        m: number of scenarios
        capacity_kind: "v1" (concave distortion of a random probability) or "v2" (random plausibility)
        seed: random seed; the same seed gives the same instance
        exponent: exponent of the power disutility
        destination: optional file path to save the instance JSON

    Returns:
        XML summary of the generated instance
    """
    try:
        return await generate_instance(num_nodes, density, m, capacity_kind, seed, exponent, destination)
    except Exception as e:
        logger.error(f"Error generating instance: {e}")
        return f"""<choquet_path_instance error="true">
    <error_message>{str(e)}</error_message>
</choquet_path_instance>"""


@mcp.tool()
async def evaluate_ced_tool(instance: str, costs: str) -> str:
    """
    Evaluates the Choquet expected disutility of a cost vector.

    Args:
        instance: "example1", "example3" or the path of an instance JSON file
        costs: one cost per scenario, e.g. "0, 100, 100"

    Returns:
        XML with the value and its linear lower bounds
    """
    try:
        return await evaluate_ced(instance, costs)
    except Exception as e:
        logger.error(f"Error evaluating {costs}: {e}")
        return f"""<choquet_expected_disutility error="true">
    <error_message>{str(e)}</error_message>
</choquet_expected_disutility>"""


def main():
    """Main entry point"""
    # Log startup info
    logger.info("MCP Choquet Path Server starting up")
    logger.info(f"Default bound: {DEFAULT_BOUND}, default gamma: {DEFAULT_GAMMA}")
    logger.info("Server startup complete")

    # Run the server
    mcp.run()


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
    except Exception as e:
        logger.error(f"Server error: {str(e)}")
        sys.exit(1)
