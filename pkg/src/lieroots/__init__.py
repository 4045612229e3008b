"""Exact root-system toolkit: root systems, Weyl groups, parabolics, closed
subsets, Cartan-subspace identities and weight systems, with table replays."""

__version__ = "0.1.0"

from .rootsys import (  # noqa: E402
    ExactVec,
    RootSystem,
    build_root_system,
    cartan_matrix,
    coroot,
    is_root,
    pairing,
    positive_roots,
)
from .report import Check, VerificationReport  # noqa: E402

__all__ = [
    "ExactVec",
    "RootSystem",
    "build_root_system",
    "cartan_matrix",
    "coroot",
    "is_root",
    "pairing",
    "positive_roots",
    "Check",
    "VerificationReport",
]
