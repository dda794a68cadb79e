"""Schreier transversals, subgroup bases, separating finite quotients, and
verifiable certificates for finitely presented groups."""

from .cosets import (
    BASE,
    CosetTable,
    Presentation,
    acts_trivially,
    canonical_form,
    contains,
    is_regular,
    low_index_tables,
    presentation_from_text,
    presentation_to_text,
    regular_table,
    separates_prefixes,
    table_from_text,
    table_to_text,
    trace,
)
from .errors import (
    AlphabetMismatch,
    BadBound,
    BadCoset,
    BadGenus,
    BadSeed,
    CertificateFormatError,
    EmptyWord,
    ImageTooLarge,
    InvalidLetter,
    InvalidTable,
    NotInSubgroup,
    ParseError,
    PrefixesNotSeparated,
    RelatorNotKilled,
    SchreierKitError,
    SeedCollision,
)
from .lemma import (
    LemmaCertificate,
    VerificationResult,
    certificate_from_json,
    certificate_to_json,
    find_separating_quotient,
    run_lemma,
    verify_certificate,
)
from .perms import (
    FiniteQuotientHom,
    Perm,
    eval_word,
    image_closure,
    kills_relators,
    perm_from_text,
    perm_to_text,
)
from .rewriting import (
    SubgroupPresentation,
    SurfaceReport,
    back_substitute,
    rewrite_presentation,
    surface_presentation,
    surface_report,
    surface_survey,
)
from .transversal import (
    AlphabetOrientation,
    SchreierTransversal,
    SubgroupBasis,
    basis_through_word,
    basis_to_text,
    check_basis,
    check_transversal,
    evaluate_positions,
    fold_verify,
    respell,
    rewrite_in_basis,
    schreier_basis,
    schreier_transversal,
    transversal_to_text,
)
from .words import (
    Alphabet,
    FreeWord,
    Letter,
    concat_reduce,
    empty_word,
    free_reduce,
    invert,
    is_reduced,
    letter_word,
    parse_word,
    prefixes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
