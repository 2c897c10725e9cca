"""Discrete generalized Morrey norms on uniform grids."""
from .grid import Ball, GridDomain, GridError, GridFunction, lattice_ball_count, points_in_ball, unit_ball_volume
from .io import ParseError, ValidationError, read_function, write_function
from .norm import (
    MorreyParams,
    NormResult,
    capped_norm,
    lp_ball_norm,
    lp_norm_omega,
    morrey_norm,
    vanishing_modulus,
)
from .weights import CappedPower, DoublingUndefined, Power, Table, TruncatedPower, Weight, parse_weight

__version__ = "0.1.0"
