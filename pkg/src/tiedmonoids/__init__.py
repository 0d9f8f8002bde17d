"""Diagram monoids, ramified (tied) monoids, presentations and exact
counting, with a CLI and a content-addressed closure cache."""

from .diagrams import (
    BrauerNormalForm,
    Diagram,
    MonoidTable,
    Permutation,
    arrangement_permutation,
    brauer_normal_form,
    closure,
    generator,
    tie_diagram,
)
from .errors import (
    BoundExceededError,
    BudgetExceededError,
    DomainError,
    GroundMismatchError,
    IndexRangeError,
    MalformedPartitionError,
    UnknownFamilyError,
)
from .presentations import (
    Assignment,
    Presentation,
    Relation,
    canonical_assignment,
    catalog,
    eval_word,
    extended_tie_word,
    overline,
    tie_saturate,
    verify_presentation,
    word_equal,
)
from .ramified import (
    BalancedFactorization,
    Ramified,
    build_family,
    embed,
    etilde,
    evaluate_word,
    factor_balanced,
    factor_ramified_brauer,
    flags,
    ftilde,
    htilde,
    ltilde,
    rid,
    size_formula,
    two_balanced_count,
    two_balanced_count_exact,
)
from .setpartitions import (
    DoublePartition,
    SetPartition,
    atom,
    bell,
    canonicalize,
    enumerate_linear,
    enumerate_partitions,
    fitzgerald_decompose,
    is_linear,
    stirling2,
)
from .tiedjones import (
    FWord,
    TJNormal,
    boxed_count,
    catalan_triangle,
    enumerate_fwords,
    h_inverse,
    h_map,
    separability_degree,
    tj_normalize,
)
from .words import Token, Word, parse_word, format_word

__version__ = "0.1.0"
