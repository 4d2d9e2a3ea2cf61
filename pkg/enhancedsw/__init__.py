"""Exact verification of Schur–Weyl dualities for the enhanced tensor space."""

__version__ = "0.1.0"

import logging


def enable_debug_logging() -> None:
    """Enable DEBUG logging for the enhancedsw library.

    Sets the root 'enhancedsw' logger to DEBUG so all modules (linalg,
    ddha, dualities, etc.) emit debug output. Callers can also do this
    manually: logging.getLogger("enhancedsw").setLevel(logging.DEBUG)
    """
    logging.getLogger(__name__).setLevel(logging.DEBUG)


from .ddha import (
    DDHAGenerator,
    RelationReport,
    build_D_bracket_I,
    build_Dnr,
    build_Dnr_l,
    check_ddha_relations,
)
from .dualities import (
    AwJVector,
    MixedTensor,
    centralizer_of_group,
    dimension_table,
    psi_span,
    run_checks,
)
from .exceptions import (
    ClosureOverflowError,
    ConfigError,
    DimensionMismatchError,
    EnhancedSWError,
    PreconditionError,
    SingularMatrixError,
    SizingError,
    UnknownCheckError,
    VerificationError,
)
from .group import LieGeneratorSet, ParabolicElement
from .linalg import Subspace
from .models import CheckResult, DimensionTable, RunConfig
from .tensor import SpaceDescriptor, Tensor

__all__ = [
    "AwJVector",
    "build_D_bracket_I",
    "build_Dnr",
    "build_Dnr_l",
    "centralizer_of_group",
    "check_ddha_relations",
    "CheckResult",
    "ClosureOverflowError",
    "ConfigError",
    "DDHAGenerator",
    "dimension_table",
    "DimensionMismatchError",
    "DimensionTable",
    "enable_debug_logging",
    "EnhancedSWError",
    "LieGeneratorSet",
    "MixedTensor",
    "ParabolicElement",
    "PreconditionError",
    "psi_span",
    "RelationReport",
    "run_checks",
    "RunConfig",
    "SingularMatrixError",
    "SizingError",
    "SpaceDescriptor",
    "Subspace",
    "Tensor",
    "UnknownCheckError",
    "VerificationError",
]
