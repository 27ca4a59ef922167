"""MCP tools for Choquet-optimal path search"""

from .solver_tool import evaluate_ced, generate_instance, solve_instance, verify_instance

__all__ = ['evaluate_ced', 'generate_instance', 'solve_instance', 'verify_instance']
