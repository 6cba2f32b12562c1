"""Exact decision engine for strong isotropy of semisimple algebraic groups."""

__version__ = "0.1.0"

from .brauer import (
    GenericBrauerClass,
    TypeATorsorData,
    exponent,
    index,
    index_reduction,
    primary_decomposition,
    torsor_a_is_anisotropic,
    torsor_a_lifts,
)
from .classify import (
    Other,
    SemisimpleDescriptor,
    TypeAInner,
    TypeAOuter,
    TypeC,
    TypeD5,
    Verdict,
    classify_semisimple,
    classify_simple,
    product_consistency,
    projected_center,
    typea_engine,
)
from .errors import (
    EnumerationCapExceeded,
    HypothesisError,
    InvalidTorsorError,
    SquarefreeHypothesisError,
    Undecided,
    UsageError,
)
from .lattice import (
    CentralSubgroupSpec,
    CharacterLattice,
    ResidueGroup,
    character_lattice_of,
    residue_image,
    smith_normal_form,
)
from .qform import (
    REAL,
    RationalQuadraticForm,
    SquareClass,
    TwoTorsionBrauerClass,
    hasse_invariant,
    hilbert_symbol,
    is_isotropic,
    is_locally_isotropic,
    quaternion_class,
    signed_discriminant,
    spin_descriptor_of,
    torsor_d5_isotropic,
    witt_invariant,
)
