"""shiftq: exact symbolic toolkit for truncations of shifted quantum affine
algebras — quantum Cartan matrices and their inverses, factored l-weights,
A/T-series eigenvalues, star/sharp/tilde maps, truncatability and truncation
parameters, and the explicit rank-one module with its descent conditions.

All arithmetic is exact: scalars live in the field of rational functions over
Q in q^(1/2) and declared parameters, and every identity check is an identity
of rational functions.
"""

from .cartan import CartanDatum, btilde_eval, build_cartan, qcartan_inverse, qint
from .engine import (
    HEigenvalues,
    PolynomialProfile,
    RelationReport,
    at_series_eig,
    extract_polynomial,
    fundamental_t,
    h_eigenvalues,
    script_a_eig,
    verify_at_ratio,
    verify_gklo,
    verify_lemma_poly,
)
from .errors import (
    CartanMismatch,
    ConstantTermNotOne,
    DivisionByZero,
    InvalidType,
    NonInvertibleSeries,
    NonzeroConstantTerm,
    NotPolynomial,
    NotPolynomialSeries,
    NotTruncatable,
    ShiftQError,
    SingularMatrix,
    ZeroFlavor,
    ZeroParameter,
    ZeroScale,
    ZeroSpectralParameter,
)
from .lweight import (
    Coweight,
    LWeight,
    LWeightProfile,
    bar_shift,
    classify,
    group_ops,
    prefundamental,
    realize_series,
    star_sharp_map,
    tilde_map,
)
from .parsing import ParseError, parse_lweight, parse_scalar
from .scalars import ParamField, Scalars, field_arith, substitute_power
from .series import (
    DEFAULT_ORDER,
    Direction,
    PowerSeries,
    geometric,
    linear_power,
    series_arith,
    series_exp,
    series_log,
    series_rescale,
)
from .sl2 import DescentReport, ModuleReport, Sl2NegPrefundModule, build_module
from .truncation import (
    TruncationReport,
    plan_truncation,
    solve_truncatable,
    top_scalars,
    truncation_parameter,
    verify_flavor_z,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
