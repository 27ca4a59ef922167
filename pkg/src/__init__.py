"""MCP Choquet Path Server - Robust path search under Choquet expected disutility"""

__version__ = "1.0.0"
