"""Python access to the risflow simulator core."""

from ._risflow import (
    ChannelParams,
    ConfigError,
    ExperimentConfig,
    SolverFailure,
    Topology,
    UnroutableDemandError,
    absorption_gain,
    channel_gain,
    k_shortest_paths,
    load_config,
    parse_config,
    run_dynamic,
    run_static,
    sample_topology,
    thermal_noise,
)

__all__ = [
    "ChannelParams",
    "ConfigError",
    "ExperimentConfig",
    "SolverFailure",
    "Topology",
    "UnroutableDemandError",
    "absorption_gain",
    "channel_gain",
    "k_shortest_paths",
    "load_config",
    "parse_config",
    "run_dynamic",
    "run_static",
    "sample_topology",
    "thermal_noise",
]
