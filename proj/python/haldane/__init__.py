from ._haldane import (
    aklt_energy,
    bare_state_decomposition,
    bloch_flow,
    ground,
    normalized_success,
    oracle_fidelity,
    rotation_fidelity,
    sample_protocol,
    version,
)

__all__ = [
    "aklt_energy",
    "bare_state_decomposition",
    "bloch_flow",
    "ground",
    "normalized_success",
    "oracle_fidelity",
    "rotation_fidelity",
    "sample_protocol",
    "version",
]
