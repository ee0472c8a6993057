"""frobdet: exact determinantal representations over small finite fields.

The package computes, entirely in exact arithmetic over F_p, the square
presentation matrices that realize plane curves and Frobenius split
hypersurfaces as (set-theoretic) determinantal varieties, together with
the arithmetic side-tests (Frobenius splitting, ordinarity) gating the
constructions, and verifies every determinant identity exactly.
"""

from .errors import (
    DegenerateSamples,
    DegreeIncompatible,
    FreenessCheckFailed,
    FrobdetError,
    GenusZero,
    Mismatch,
    NoStabilization,
    NonInjectivePower,
    NotACurve,
    NotHomogeneous,
    NotSkew,
    NotSquare,
    OddSize,
    ParseError,
    SizeCap,
    VarMismatch,
    ZeroInverse,
    ZeroModP,
)
from .fields import FieldElement, FiniteField, find_irreducible, is_prime
from .poly import HomogPoly, monomials_of_degree, parse_poly
from .quotient import QuotientRing, reduce_mod_form
from .hypersurface import (
    HasseWittMatrix,
    Hypersurface,
    degree_bound_check,
    fedder_split_test,
    genus,
    hasse_witt,
    is_ordinary,
    is_smooth,
)
from .graded import (
    BettiData,
    GradedModule,
    PresentationMatrix,
    coordinate_ring_module,
    exact_differentials_module,
    frobenius_pushforward_module,
    hilbert_function,
    is_ulrich_presentation,
    minimal_generators,
    presentation,
    regularity_from_betti,
    saturate,
)
from .detrep import (
    DetCertificate,
    degree_profile_check,
    det_bareiss,
    det_exact,
    det_interpolated,
    pfaffian,
    poly_divexact,
    schwartz_zippel_check,
    skew_equivalence_probe,
    verify_det_power,
)
from .pipeline import (
    AnalysisReport,
    PipelineOptions,
    analyze,
    exit_code_for,
    infer_mode,
    parse_input,
    random_search,
    run_corpus,
    run_curve_pipeline,
    run_hypersurface_pipeline,
)

__version__ = "0.1.0"
