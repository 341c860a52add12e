"""Finite-precision p-adic algebra toolkit.

Layers, bottom up: fixed-precision arithmetic in Eisenstein local rings
(:mod:`padicfam.padic`), truncated power series with Weierstrass
preparation and interpolation (:mod:`padicfam.series`), weight-space
coordinates (:mod:`padicfam.weights`), the pseudo-representation calculus
with rank-2 reconstruction (:mod:`padicfam.pseudo`), synthetic module
presentations with specialization sweeps (:mod:`padicfam.modules`),
cyclotomic idempotents and the inversion involution
(:mod:`padicfam.cyclotomic`), and the q-expansion harness
(:mod:`padicfam.qexp`).  The :mod:`padicfam.cli` front end exposes each
operation for batch runs.
"""

from .errors import PadicError
from .padic import OKElement, RingParams, int_valuation
from .series import (
    DEFAULT_ORDER,
    FormalSeries,
    WeierstrassFactorization,
    newton_interpolate,
    series_from_text,
    series_to_text,
)
from .weights import (
    ClassicalPointSet,
    NebenCharacter,
    classical_points,
    neben_decompose,
    slope_from_up_eigenvalue,
)
from .pseudo import (
    GroupWord,
    MatrixRep2,
    PseudoRep,
    ReconstructionResult,
    check_wiles_relations,
    enumerate_words,
    glue_crt,
    lift_to_series,
    matrix_rep_from_text,
    matrix_rep_to_text,
    parse_word,
    reconstruct,
    sample_reduced_words,
    trace_to_AD,
)
from .modules import (
    ModulePresentation,
    Specialization,
    SweepReport,
    char_ideal,
    lambda_constancy_sweep,
    lambda_of_module,
    module_from_text,
    module_to_text,
    mu_of_module,
    mu_zero_criterion,
    specialize_at,
)
from .cyclotomic import (
    DeltaElement,
    character_value,
    cyclotomic_recombine,
    cyclotomic_split,
    idempotent,
    idempotent_decompose,
    iota_involution,
)
from .qexp import (
    FamilySamples,
    IntegralityReport,
    QExpansion,
    WindowVerdict,
    check_edixhoven_window,
    check_supersingular,
    check_up_square_condition,
    family_from_manifest,
    ingest_qexp,
    interpolate_family,
    qexp_from_text,
    qexp_to_text,
    slope_of,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
