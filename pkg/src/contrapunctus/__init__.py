"""Mathematical counterpoint: strong interval dichotomies of Z_2n, the
admitted-successor calculus on Z_2n[e], counterpoint worlds and their
morphisms, and first-species composition tools."""

from .algebra import (
    AffineMap,
    DualAffineMap,
    DualNumber,
    PitchClass,
    affine_apply,
    affine_compose,
    affine_group,
    affine_invert,
    dual_affine_apply,
    dual_affine_group,
    units,
)
from .dichotomies import (
    BUILTIN_REPRESENTATIVES,
    ClassEntry,
    ClassTable,
    Dichotomy,
    StrongDichotomy,
    all_strong_dichotomies,
    as_strong,
    autocomplementarities,
    builtin_world,
    canonical_rep,
    class_label,
    classify_strong,
    diameter,
    is_strong,
    orbit,
    span,
    stabilizer,
    strong_dichotomy,
    third_distance,
)
from .errors import (
    DissonantInputError,
    DomainError,
    InductionFailedError,
    ModulusMismatchError,
    NoAutocomplementarityError,
    NotRigidError,
    OutOfDomainError,
    ResourceGuardError,
    SchemaError,
    SearchExhaustedError,
    UnknownWorldError,
    UnsatisfiableError,
)
from .scores import (
    CheckReport,
    FirstSpeciesScore,
    IntervalSequence,
    Note,
    Scale,
    Violation,
    check_first_species,
    compose_random,
    from_intervals,
    morph_composition,
    read_score_json,
    score_from_dict,
    score_to_dict,
    to_intervals,
    write_score_json,
)
from .smf import encode_score, write_midi
from .successors import (
    SuccessorTable,
    admitted_successors,
    contrapuntal_automorphisms,
    contrapuntal_overlap,
    forbidden_parallels,
    induced_polarity,
    successor_table,
    world_id,
)
from .worlds import (
    DichotomyMorphism,
    EmbeddingLevel,
    EmbeddingSequence,
    MorphismVerdict,
    StrictDigraph,
    StrictMorphism,
    World,
    WorldMorphism,
    build_world,
    check_dichotomy_morphism,
    embedding_polarity,
    embedding_sequence,
    induce_world_morphism,
    strict_digraph,
    strict_morphisms,
)

__version__ = "0.1.0"
