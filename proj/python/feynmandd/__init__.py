"""FeynmanDD: exact quantum-circuit amplitudes via multi-terminal decision diagrams."""

from ._core import (
    CapacityExceededError,
    Circuit,
    CircuitParseError,
    DegreeTooHighError,
    TooLargeError,
    amplitude,
    gen_file,
    gen_linear_network,
    gen_lrw_family,
    gen_random_circuit,
    parse_circuit,
    serialize_circuit,
    simulate,
    statevector_amplitude,
)

__all__ = [
    "CapacityExceededError",
    "Circuit",
    "CircuitParseError",
    "DegreeTooHighError",
    "TooLargeError",
    "amplitude",
    "gen_file",
    "gen_linear_network",
    "gen_lrw_family",
    "gen_random_circuit",
    "parse_circuit",
    "serialize_circuit",
    "simulate",
    "statevector_amplitude",
]
