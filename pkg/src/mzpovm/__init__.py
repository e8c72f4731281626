"""POVM toolkit and Mach-Zehnder interferometry simulator.

Simulates path detection, interference detection, path marking, quantum
erasure and quantitative erasure as measurement schemes on a photon-probe
pair, extracts the measured input POVM of each scheme, and audits the
uncertainty, duality and erasure trade-off relations they satisfy. A
brute-force oracle (direct joint-state probabilities, seeded random-state
sampling, Bloch-sphere grid optimization) validates every closed form.
"""

from . import (
    cli,
    complementarity,
    errors,
    extraction,
    interferometer,
    linalg,
    oracle,
    povm,
    relations,
    verify,
)

__all__ = [
    "cli",
    "complementarity",
    "errors",
    "extraction",
    "interferometer",
    "linalg",
    "oracle",
    "povm",
    "relations",
    "verify",
]

__version__ = "0.1.0"
