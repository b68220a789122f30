"""Bidirectional motion planners on spheres, mod-2 cohomology of symmetric
squares, and interval bounds for sequential, bidirectional and symmetrized
topological complexity."""

from __future__ import annotations

from . import bounds, cohomology, geometry, gf2, planners, spaces
from .bounds import BoundInterval, compute_bounds, explain, registry_lookup
from .cohomology import (
    cup_length,
    kunneth,
    nakaoka_sp2,
    ring_of_rp,
    ring_of_sphere,
    tensor_power,
    zero_divisor_cup_length,
)
from .planners import plan, plan_pair, plan_tuple, plan_tuple_even
from .spaces import parse_space

__version__ = "0.1.0"
