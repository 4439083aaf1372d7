"""Adaptive modulation in cognitive radio networks (OSA, spectrum sharing, sensing)."""

from ._core import (
    AmcrnError,
    SensingConfig,
    osa_analyze,
    power_gap,
    preset_names,
    preset_text,
    prob_detection,
    prob_false_alarm,
    sensing_analyze,
    ss_analyze,
    sweep,
    sweep_csv,
    threshold_for_detection,
    verify,
)


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


__all__ = [
    "AmcrnError",
    "SensingConfig",
    "db_to_linear",
    "osa_analyze",
    "power_gap",
    "preset_names",
    "preset_text",
    "prob_detection",
    "prob_false_alarm",
    "sensing_analyze",
    "ss_analyze",
    "sweep",
    "sweep_csv",
    "threshold_for_detection",
    "verify",
]
