"""Linear canonical transforms, short-time LCT maps and uncertainty checks."""

from ._core import (
    Error,
    Grid,
    ParamMatrix,
    Signal,
    additivity,
    gaussian,
    ilct,
    induced_grid,
    inner_product,
    kernel,
    lct,
    local_energy,
    moments,
    rect,
    run_battery,
    stern_check,
    stlct,
    theorem1_check,
    theorem2_check,
    theorem3_check,
    zero_pad,
)

__all__ = [
    "Error",
    "Grid",
    "ParamMatrix",
    "Signal",
    "additivity",
    "gaussian",
    "ilct",
    "induced_grid",
    "inner_product",
    "kernel",
    "lct",
    "local_energy",
    "moments",
    "rect",
    "run_battery",
    "stern_check",
    "stlct",
    "theorem1_check",
    "theorem2_check",
    "theorem3_check",
    "zero_pad",
]
