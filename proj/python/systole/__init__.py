"""Python bindings for the systole library."""

from ._systole import (
    Spec,
    SystoleError,
    builtin_names,
    collar_width_compact,
    compact_upper_bound,
    cusped_upper_bound,
    cut,
    cyclic_cover,
    fpiece_max_systole,
    generators,
    half_collar_width_cusped,
    qpiece_max_systole,
    short_geodesics,
    systole,
    table,
    verify_cover,
    verify_equality,
)

__all__ = [
    "Spec",
    "SystoleError",
    "builtin_names",
    "collar_width_compact",
    "compact_upper_bound",
    "cusped_upper_bound",
    "cut",
    "cyclic_cover",
    "fpiece_max_systole",
    "generators",
    "half_collar_width_cusped",
    "qpiece_max_systole",
    "short_geodesics",
    "systole",
    "table",
    "verify_cover",
    "verify_equality",
]
