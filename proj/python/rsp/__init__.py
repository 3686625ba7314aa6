"""Reverse shortest path solver for unit-disk graphs."""

from ._rsp import (
    Instance,
    RspError,
    decide,
    generate,
    rstar_exact,
    select_bruteforce,
    solve,
)

__all__ = [
    "Instance",
    "RspError",
    "decide",
    "generate",
    "rstar_exact",
    "select_bruteforce",
    "solve",
]
