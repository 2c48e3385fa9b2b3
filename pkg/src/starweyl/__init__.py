"""starweyl: exact computer algebra for star products on flat and linear
Poisson structures, ordering operators, operator representations, and
seminorm diagnostics for the locally convex Weyl algebra.

Conventions (orientation of the standard form, z = -i*h presets, bracket
signs) are derived and pinned in docs/conventions.md.
"""

from .errors import (
    BoxOverflowError,
    IncompatibleError,
    NonFiniteError,
    NotInvertibleError,
    ParseError,
    StarWeylError,
    TruncationError,
)
from .scalars import (
    DEFAULT_TRUNCATION,
    FormalScalar,
    GaussianRational,
    NumericScalar,
)
from .poly import Generators, Polynomial, poly_from_text, poly_mul, total_degree
from .parse import parse_expression, scalar_from_text
from .star import (
    BilinearForm,
    OrderingOperator,
    TensorSquare,
    apply_equivalence,
    hbar_coefficient,
    jacobi_defect,
    minus_i_hbar,
    n_operator,
    ordering_operator,
    p_lambda,
    poisson_bracket,
    poisson_standard,
    standard_form,
    star,
    star_standard,
    star_term_count,
    star_weyl,
    weyl_form,
)
from .ops import DifferentialOperator, formal_adjoint, std_rep, weyl_rep
from .lie import (
    BchReport,
    LieAlgebra,
    LieSeries,
    UEElement,
    bch,
    bch_exponential,
    check_bch_property,
    gutt_star,
    hbar_exponential,
    heisenberg3,
    kks_bracket,
    pbw_symmetrize,
    pbw_symmetrize_inverse,
    sl2,
    ue_normal_order,
)
from .seminorms import (
    ContinuityReport,
    ConvergenceReport,
    DefectReport,
    SeminormSpec,
    TruncatedElement,
    exponential_convergence_report,
    inner_automorphism_defect,
    seminorm_pR,
    star_continuity_report,
    translation_automorphism_defect,
    truncated_exponential,
    weyl_relation_defect,
)
from .bruteforce import DensePolynomial, naive_bch_via_ue, naive_star
from .session import RESERVED_NAMES, ConfigError, Session
from .verify import CRITERIA, SUITES, VerifyResult, run_suite

__version__ = "0.1.0"
