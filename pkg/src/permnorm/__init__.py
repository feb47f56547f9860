"""Normalisers of primitive permutation groups inside the symmetric group."""

from .errors import (
    BudgetExceeded,
    ContractViolation,
    DegreeMismatch,
    GroupFileError,
    ImprimitiveInput,
    IntransitiveInput,
    NotAHomomorphism,
    NotInGroup,
    NotInOrbit,
    PermnormError,
    TrivialInput,
)
from .perm import Perm, fmt_perm, parse_perm
from .group import (
    GeneratedGroup,
    StabilizerChain,
    build_chain,
    equal_groups,
    minimal_block_system,
    normal_closure,
    orbit_partition,
    reduce_generators,
)
from .oracle import (
    OracleBudget,
    brute_force_intersection,
    brute_force_normaliser,
    verify_normalises,
)

__version__ = "0.1.0"
