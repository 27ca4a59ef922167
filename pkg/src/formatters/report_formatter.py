"""Report formatting - XML documents for MCP responses and text tables for the bench"""

import logging
import time
from typing import Any, Dict, List, Optional, Sequence
from xml.sax.saxutils import escape, quoteattr

from src.instances.instance import Instance
from src.search.runner import SolverSetup, VerificationReport
from src.search.solution import Solution

logger = logging.getLogger(__name__)


def _timestamp() -> str:
    return time.strftime('%Y-%m-%dT%H:%M:%S')


def _format_vector(values: Sequence[float], digits: int = 6) -> str:
    return ' '.join(f'{float(v):.{digits}g}' for v in values)


def _format_stats_xml(stats: Dict[str, Any], indent: str = '        ') -> str:
    lines = []
    for key, value in stats.items():
        if isinstance(value, float):
            lines.append(f'{indent}<{key}>{value:.6f}</{key}>')
        else:
            lines.append(f'{indent}<{key}>{value}</{key}>')
    return '\n'.join(lines)


def _instance_summary(instance: Instance) -> List[str]:
    graph = instance.graph
    return [
        f'    <instance nodes="{graph.num_nodes}" arcs="{graph.num_arcs}" scenarios="{instance.m}" '
        f'start="{graph.start}" goals="{_format_vector(graph.goals)}" capacity={quoteattr(instance.capacity_spec.kind)} />',
    ]


def _solution_parts(solution: Solution, indent: str = '    ') -> List[str]:
    xml_parts = [
        f'{indent}<solution algorithm="{solution.algorithm}" psi="{solution.psi:.12g}">',
        f'{indent}    <path>{_format_vector(solution.path.nodes)}</path>',
        f'{indent}    <cost>{_format_vector(solution.cost)}</cost>',
        f'{indent}    <stats>',
        _format_stats_xml(solution.stats.to_dict(), indent + '        '),
        f'{indent}    </stats>',
    ]
    if solution.emitted:
        xml_parts.append(f'{indent}    <emitted count="{len(solution.emitted)}">')
        for entry in solution.emitted:
            xml_parts.append(
                f'{indent}        <path c_p="{entry["c_p"]:.9g}" psi="{entry["psi"]:.9g}">'
                f'{_format_vector(entry["path"])}</path>'
            )
        xml_parts.append(f'{indent}    </emitted>')
    xml_parts.append(f'{indent}</solution>')
    return xml_parts


def format_solution_xml(instance: Instance, solution: Solution, setup: Optional[SolverSetup] = None) -> str:
    """XML report of one solve"""
    xml_parts = [f'<choquet_path_solution timestamp="{_timestamp()}">']
    xml_parts.extend(_instance_summary(instance))
    if setup is not None:
        xml_parts.extend([
            f'    <scalarization bound="{setup.bound}" gamma="{setup.gamma:.6g}">',
            f'        <probabilities>{_format_vector(setup.p.p)}</probabilities>',
            f'        <heuristic_seconds>{setup.tables.seconds:.6f}</heuristic_seconds>',
            f'    </scalarization>',
        ])
    xml_parts.extend(_solution_parts(solution))
    xml_parts.append('</choquet_path_solution>')
    return '\n'.join(xml_parts)


def format_verification_xml(instance: Instance, report: VerificationReport) -> str:
    """XML report comparing both algorithms (and the oracle) on one instance"""
    xml_parts = [
        f'<choquet_path_verification timestamp="{_timestamp()}" agreed="{str(report.agreed).lower()}" '
        f'max_gap="{report.max_gap:.3g}">'
    ]
    xml_parts.extend(_instance_summary(instance))
    for solution in report.solutions.values():
        xml_parts.extend(_solution_parts(solution))
    if report.oracle_skipped:
        xml_parts.append(f'    <oracle_skipped>{escape(report.oracle_skipped)}</oracle_skipped>')
    xml_parts.append('</choquet_path_verification>')
    return '\n'.join(xml_parts)


def format_instance_xml(instance: Instance, destination: Optional[str] = None) -> str:
    """XML summary of a generated instance"""
    xml_parts = [f'<choquet_path_instance timestamp="{_timestamp()}">']
    xml_parts.extend(_instance_summary(instance))
    xml_parts.append(f'    <disutility>{escape(repr(instance.disutility))}</disutility>')
    if instance.metadata:
        xml_parts.append('    <metadata>')
        for key, value in instance.metadata.items():
            xml_parts.append(f'        <{key}>{escape(str(value))}</{key}>')
        xml_parts.append('    </metadata>')
    if destination:
        xml_parts.append(f'    <saved_to>{escape(destination)}</saved_to>')
    xml_parts.append('</choquet_path_instance>')
    return '\n'.join(xml_parts)


def format_ced_xml(costs: Sequence[float], psi: float, lower_bounds: Dict[str, Sequence[float]]) -> str:
    """
    XML report of a single ψ evaluation

    Args:
        costs: the evaluated cost vector
        psi: its Choquet expected disutility
        lower_bounds: per bound name, the pair (Σ p_i w(x_i), w(Σ p_i x_i))
    """
    xml_parts = [
        f'<choquet_expected_disutility timestamp="{_timestamp()}" psi="{psi:.12g}">',
        f'    <cost>{_format_vector(costs)}</cost>',
    ]
    for name, (strong, weak) in lower_bounds.items():
        xml_parts.append(f'    <lower_bound bound="{name}" expected="{strong:.12g}" scalarized="{weak:.12g}" />')
    xml_parts.append('</choquet_expected_disutility>')
    return '\n'.join(xml_parts)


def format_error_xml(root: str, error_message: str, causes: Sequence[str] = (),
                     suggestions: Sequence[str] = ()) -> str:
    """Error document in the same shape as the success reports"""
    xml_parts = [
        f'<{root} timestamp="{_timestamp()}" error="true">',
        f'    <error_message>{escape(error_message)}</error_message>',
    ]
    if causes:
        xml_parts.append('    <possible_causes>')
        xml_parts.extend(f'        <cause>{escape(cause)}</cause>' for cause in causes)
        xml_parts.append('    </possible_causes>')
    if suggestions:
        xml_parts.append('    <suggestions>')
        xml_parts.extend(f'        <suggestion>{escape(s)}</suggestion>' for s in suggestions)
        xml_parts.append('    </suggestions>')
    xml_parts.append(f'</{root}>')
    return '\n'.join(xml_parts)


BOUND_LABELS = {'maxent': 'p*', 'shapley': 'phi'}


def format_bench_table(rows: Sequence[Dict[str, Any]], value: str = 'mean_seconds') -> str:
    """
    Text table of bench rows: one line per (algorithm, node count), one column
    per (scenario count, bound)
    """
    if not rows:
        return '(no bench rows)'
    counts = sorted({row['m'] for row in rows})
    bounds = [b for b in BOUND_LABELS if any(row['bound'] == b for row in rows)]
    lines_keys = sorted({(row['algorithm'], row['num_nodes']) for row in rows})
    cells = {(r['algorithm'], r['num_nodes'], r['m'], r['bound']): r[value] for r in rows}

    width = 10
    header1 = f'{"":>6} {"N":>6} ' + ''.join(f'{f"{m} scen.":^{width * len(bounds)}}' for m in counts)
    header2 = f'{"":>6} {"":>6} ' + ''.join(
        f'{BOUND_LABELS[b]:>{width}}' for _ in counts for b in bounds
    )
    lines = [header1, header2]
    for algorithm, num_nodes in lines_keys:
        line = f'{algorithm:>6} {num_nodes:>6} '
        for m in counts:
            for b in bounds:
                cell = cells.get((algorithm, num_nodes, m, b))
                line += f'{"-":>{width}}' if cell is None else f'{cell:>{width}.4f}'
        lines.append(line)
    return '\n'.join(lines)
