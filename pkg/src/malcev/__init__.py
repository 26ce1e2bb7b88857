"""Computational toolkit for a family of finitely presented cancellative
monoids with length-preserving relations: normal forms, equality-class
search, Cayley graph analysis, principal right ideal intersections, and
machine-checked group-derivation certificates."""

from .cayley import (
    CayleyBall,
    build_ball,
    check_codeterminism,
    export_dot,
    predecessors,
    vertex_name,
)
from .congruence import (
    CapExceeded,
    DEFAULT_CAP,
    EqualityClass,
    equality_class,
    left_divides,
    partition_agreement,
)
from .group_derivation import (
    DerivationStep,
    ObstructionCertificate,
    OccurrenceMismatch,
    apply_step,
    build_obstruction_script,
    free_reduce,
    validate_script,
    verify_obstruction,
)
from .ideals import (
    AlignmentReport,
    AlignmentViolation,
    IntersectionResult,
    WindowTooSmall,
    brute_force_intersection,
    common_multiples,
    intersect_principal,
    verify_alignment,
)
from .presentation import (
    AmbiguousRewrite,
    ForeignLetter,
    IndexOutOfRange,
    Letter,
    LROverlap,
    NotBalanced,
    PQOverlap,
    Presentation,
    PresentationError,
    Relation,
    UnknownToken,
    UnstructuredPresentation,
    Word,
    build_presentation,
    format_word,
    load_presentation,
    parse_relations,
    parse_word,
    validate_generic,
)
from .rewriting import (
    Element,
    enumerate_elements,
    equal,
    is_intersection_base,
    left_normal_form,
    reduce_word,
)

__version__ = "0.1.0"
