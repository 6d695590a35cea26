"""Discrete phase-shift design and link simulation for reconfigurable surfaces."""

from ._core import (
    ConfigError,
    GuardError,
    QuantizationResult,
    Scenario,
    continuous_phases,
    continuous_power_dbm,
    dtpq,
    eipq,
    exhaustive_search,
    far_field_pl_db,
    fixed_threshold,
    load_scenario,
    parse_scenario,
    received_power_dbm,
    residual_spread,
    sweep,
    wave_path_difference,
)

__all__ = [
    "ConfigError",
    "GuardError",
    "QuantizationResult",
    "Scenario",
    "continuous_phases",
    "continuous_power_dbm",
    "dtpq",
    "eipq",
    "exhaustive_search",
    "far_field_pl_db",
    "fixed_threshold",
    "load_scenario",
    "parse_scenario",
    "received_power_dbm",
    "residual_spread",
    "sweep",
    "wave_path_difference",
]
