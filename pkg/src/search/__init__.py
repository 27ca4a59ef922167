"""Exact ψ-OPT algorithms: multiobjective label search and c_p ranking"""

from .solution import SearchStats, Solution, check_solver_inputs
from .multiobjective import MultiobjectiveSearch, solve_mo
from .ranking import RankingSearch, solve_rank

__all__ = [
    'SearchStats',
    'Solution',
    'check_solver_inputs',
    'MultiobjectiveSearch',
    'solve_mo',
    'RankingSearch',
    'solve_rank',
]
