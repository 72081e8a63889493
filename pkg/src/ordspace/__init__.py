"""Exact computations with left-orderings of Z^2, SOL, Tararin groups and Z wr Z."""

__version__ = "0.1.0"

from .qfield import QuadExt, FieldMismatchError, NotHyperbolicError, hyperbolic_eigendata
from .groups import (
    FreeAbelian2,
    Sol,
    Tararin,
    WreathZZ,
    Z2,
    SolElt,
    TararinElt,
    WreathElt,
    Ball,
    BallTooLargeError,
    FamilyMismatchError,
    ball,
    identity,
    generators,
    multiply,
    inverse,
    conjugate,
    word_to_element,
)
from .orders import (
    Tie,
    Z2Line,
    SolConrad,
    SolAffine,
    TararinSigns,
    WreathLexTop,
    WreathOrbit,
    InvalidOrderError,
    MissingStabSignError,
    sign_of,
    is_pseudo,
    canonical,
    flip,
    conjugate_order,
    enumerate_tararin,
    sol_biorders,
    validate_order,
    order_to_json,
    order_from_json,
)
from .lospace import (
    Witness,
    AgreementReport,
    Distance,
    agreement,
    dist,
    is_conradian_on_ball,
    is_biinvariant_on_ball,
    tararin_conjugation_orbits,
    convergence_check,
)
from .realization import (
    AffineAction,
    WreathCosetAction,
    ConvexJumpAction,
    LinePoint,
    induced_order,
    trichotomy,
    translation_number,
)
