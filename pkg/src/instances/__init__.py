"""Instance model, JSON format and random generator"""

from .instance import (
    FORMAT_VERSION,
    CapacitySpec,
    Instance,
    dumps,
    example1_instance,
    example3_instance,
    from_document,
    load,
    loads,
    save,
    to_document,
)
from .generator import draw_gamma, generate

__all__ = [
    'FORMAT_VERSION',
    'CapacitySpec',
    'Instance',
    'dumps',
    'example1_instance',
    'example3_instance',
    'from_document',
    'load',
    'loads',
    'save',
    'to_document',
    'draw_gamma',
    'generate',
]
