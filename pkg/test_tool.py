#!/usr/bin/env python3
"""Test script for the Choquet Path MCP Server tools"""

import asyncio
import os
import sys

import pytest

# Add the repository root to the path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.tools.solver_tool import evaluate_ced, generate_instance, solve_instance, verify_instance


@pytest.mark.asyncio
async def test_solve_builtin_instances():
    """Both algorithms on the built-in fixtures"""
    result = await solve_instance("example3")
    assert 'error="true"' not in result
    assert 'psi="0.7"' in result
    assert "<path>0 1 2</path>" in result

    result = await solve_instance("example1", algorithm="rank", bound="shapley", trace=True)
    assert 'algorithm="rank"' in result
    assert "<emitted count=" in result
    assert "<path>0 4 5</path>" in result


@pytest.mark.asyncio
async def test_verify_instance():
    result = await verify_instance("example3")
    assert 'agreed="true"' in result
    assert 'algorithm="oracle"' in result

    result = await verify_instance("example1", oracle=False)
    assert "<oracle_skipped>disabled</oracle_skipped>" in result


@pytest.mark.asyncio
async def test_generate_instance(tmp_path):
    destination = tmp_path / "instance.json"
    result = await generate_instance(10, m=2, seed=5, destination=str(destination))
    assert 'error="true"' not in result
    assert 'nodes="10"' in result
    assert destination.exists()

    result = await solve_instance(str(destination), gamma="paper")
    assert 'error="true"' not in result


@pytest.mark.asyncio
async def test_evaluate_ced():
    result = await evaluate_ced("example3", "0, 100, 100")
    assert 'psi="0.7"' in result
    assert 'bound="maxent"' in result and 'bound="shapley"' in result


@pytest.mark.asyncio
@pytest.mark.parametrize("call", [
    lambda: solve_instance("missing.json"),
    lambda: solve_instance("example3", algorithm="dijkstra"),
    lambda: solve_instance("example3", gamma="2"),
    lambda: verify_instance("missing.json"),
    lambda: generate_instance(1),
    lambda: evaluate_ced("example3", "0, 100"),
    lambda: evaluate_ced("example3", ""),
])
async def test_errors_are_reported_as_xml(call):
    result = await call()
    assert 'error="true"' in result
    assert "<error_message>" in result


async def demo():
    """Print each tool's output for a quick manual check"""
    print("Testing Choquet Path MCP Tools")
    print("=" * 50)

    test_cases = [
        ("solve example3 (mo)", solve_instance("example3")),
        ("solve example3 (rank, trace)", solve_instance("example3", algorithm="rank", trace=True)),
        ("verify example1", verify_instance("example1")),
        ("generate 12 nodes", generate_instance(12, seed=1)),
        ("evaluate example1 (0,100,100)", evaluate_ced("example1", "0 100 100")),
        ("invalid instance", solve_instance("INVALID")),
    ]

    for name, call in test_cases:
        print(f"\n{name}")
        print("-" * 40)
        result = await call
        if len(result) > 1000:
            print(result[:1000] + "\n... (truncated)")
        else:
            print(result)

    print("\n" + "=" * 50)
    print("Test complete!")


if __name__ == "__main__":
    asyncio.run(demo())
