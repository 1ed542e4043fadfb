"""QHJ residue pipeline for quasi-exactly solvable potentials."""

import json

from ._core import (
    AlgebraicState,
    PotentialFamily,
    QhjqesError,
    algebraic_states,
    circular,
    condition_value,
    hyperbolic,
    ledger,
    oracle_spectrum,
    qes_sextic,
    radial_sextic,
    sextic,
)
from ._core import run_command as _run_command

__all__ = [
    "AlgebraicState",
    "PotentialFamily",
    "QhjqesError",
    "algebraic_states",
    "circular",
    "condition_value",
    "hyperbolic",
    "ledger",
    "oracle_spectrum",
    "qes_sextic",
    "radial_sextic",
    "run",
    "sextic",
]


def run(command, config, level=0, sanity=False):
    """Run a CLI command on a config dict; returns (report dict, exit code)."""
    text, code = _run_command(command, json.dumps(config), level, sanity)
    return json.loads(text), code
