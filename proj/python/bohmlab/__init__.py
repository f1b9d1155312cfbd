from ._bohm import (
    ConfigError,
    Ensemble,
    Halfplane,
    IntegratorConfig,
    LyapunovResult,
    Model,
    NodeAtInfinity,
    NodeSingularity,
    SeriesSolution,
    StepUnderflow,
    TrajectoryClass,
    TrajectoryRecord,
    dump_series,
    grid_box,
    hh_spectrum,
    integrate,
    lyapunov,
    outer_series,
    relaxation_run,
    sample_born,
    series_extrema,
    stroboscopic_section,
)

__all__ = [
    "ConfigError",
    "Ensemble",
    "Halfplane",
    "IntegratorConfig",
    "LyapunovResult",
    "Model",
    "NodeAtInfinity",
    "NodeSingularity",
    "SeriesSolution",
    "StepUnderflow",
    "TrajectoryClass",
    "TrajectoryRecord",
    "dump_series",
    "grid_box",
    "hh_spectrum",
    "integrate",
    "lyapunov",
    "outer_series",
    "relaxation_run",
    "sample_born",
    "series_extrema",
    "stroboscopic_section",
]
