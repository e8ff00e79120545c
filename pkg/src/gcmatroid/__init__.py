"""Grassmann-Cayley algebra, bracket ring and matroid variety certificates over exact rationals."""
from .brackets import (
    BracketEvaluator,
    BracketMonomial,
    BracketPolynomial,
    RankMismatch,
    equal_mod_plucker,
    evaluate,
    generic_expand,
    gp_relation,
    normalize_bracket,
    permutation_sign,
    proportional_mod_plucker,
)
from .certificates import (
    NamedPolynomial,
    NontrivialityCertificate,
    SamplingError,
    UnknownFamily,
    WitnessSearchFailed,
    catalog,
    cb_valid_subsets,
    certify_cb,
    certify_family,
    certify_not_in_N,
    curve_membership_det,
    sample,
    saturation_certificate_pencil,
    veronese_matrix,
    witness,
)
from .constructions import (
    DegenerateConfiguration,
    build_caminata_schaffler,
    build_cb_grid,
    build_more_points,
    build_pascal,
    build_pencil,
)
from .exact import DimensionError, RatMatrix, Scalar, det, rank
from .gc import (
    Extensor,
    FormalExtensor,
    GcSyntaxError,
    eval_numeric,
    expand_polynomial,
    expand_symbolic,
    join,
    meet,
    parse,
    to_text,
)
from .matroid import ConfigError, Matroid, PointConfig, matroid_from_config, same_matroid

__version__ = "0.1.0"
