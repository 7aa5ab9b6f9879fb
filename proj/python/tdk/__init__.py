"""Exact computations for topological T-duality of torus bundles with flux.

All documents are JSON strings in the same formats the ``tdk`` command
line tool reads and writes.
"""

import json

from ._tdk import (
    DomainError,
    InputError,
    builtin_names,
    check_triple,
    dualize,
    flux_vector,
    is_dualizable,
    is_onn,
    run_cli,
    space_cohomology,
    total_cohomology,
    twisted_dims,
    verify_iso,
)

__all__ = [
    "DomainError",
    "InputError",
    "builtin_names",
    "check_triple",
    "cli",
    "dualize",
    "flux_vector",
    "is_dualizable",
    "is_onn",
    "run_cli",
    "space_cohomology",
    "total_cohomology",
    "twisted_dims",
    "verify_iso",
]


def cli(*args, files=None):
    """Run a tdk command and return (exit_code, parsed JSON report)."""
    code, out, _ = run_cli([str(a) for a in args], files or {})
    return code, json.loads(out)
