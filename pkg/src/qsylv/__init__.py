"""qsylv: two-sided quaternion matrix equations by two independent routes.

The package solves ``a1 x1 b1 + a2 x2 b2 = c`` over the quaternions — plus
eight identity-specialized variants and two conjugate-transpose variants —
both by closed-form pseudoinverse products and by entrywise noncommutative
Cramer-style formulas (bordered minor sums of Gram matrices), and
cross-verifies the two.
"""

from .errors import (
    ConstraintViolated,
    DimensionMismatch,
    DimensionTooLarge,
    Inconsistent,
    InconsistentDeterminants,
    InvalidSize,
    NotHermitian,
    NotSquare,
    ParseError,
    QsylvError,
    ZeroDivisor,
)
from .mpinv import MpResult, mp, mp_cramer, mp_oracle, proj_l, proj_p, proj_q, proj_r
from .qmatrix import (
    QMatrix,
    block2x2,
    complex_embed,
    complex_unembed,
    ctranspose,
    fro_norm,
    hstack,
    is_hermitian,
    rank,
    scalar_lmul,
    scalar_rmul,
    vstack,
)
from .quaternion import Quaternion
from .rcdet import (
    IndexSubset,
    bordered_cdet_sum,
    bordered_rdet_sum,
    cdet,
    enumerate_subsets,
    hdet,
    max_det_dim,
    principal_minor_sum,
    rdet,
)
from .solvers import (
    AuxData,
    CheckResult,
    DEFAULT_TOL,
    EquationKind,
    FreeParams,
    GenSylvesterProblem,
    PairSolution,
    SolveReport,
    apply_lhs,
    check_consistency,
    cramer_ax,
    cramer_axb,
    cramer_xb,
    derive_aux,
    free_param_shapes,
    residual,
    solve,
    solve_cramer,
    solve_direct,
    solve_general,
)

__version__ = "0.1.0"

__all__ = [
    "AuxData",
    "CheckResult",
    "ConstraintViolated",
    "DEFAULT_TOL",
    "DimensionMismatch",
    "DimensionTooLarge",
    "EquationKind",
    "FreeParams",
    "GenSylvesterProblem",
    "Inconsistent",
    "InconsistentDeterminants",
    "IndexSubset",
    "InvalidSize",
    "MpResult",
    "NotHermitian",
    "NotSquare",
    "PairSolution",
    "ParseError",
    "QMatrix",
    "QsylvError",
    "Quaternion",
    "SolveReport",
    "ZeroDivisor",
    "apply_lhs",
    "block2x2",
    "bordered_cdet_sum",
    "bordered_rdet_sum",
    "cdet",
    "check_consistency",
    "complex_embed",
    "complex_unembed",
    "cramer_ax",
    "cramer_axb",
    "cramer_xb",
    "ctranspose",
    "derive_aux",
    "enumerate_subsets",
    "free_param_shapes",
    "fro_norm",
    "hdet",
    "hstack",
    "is_hermitian",
    "max_det_dim",
    "mp",
    "mp_cramer",
    "mp_oracle",
    "principal_minor_sum",
    "proj_l",
    "proj_p",
    "proj_q",
    "proj_r",
    "rank",
    "rdet",
    "residual",
    "scalar_lmul",
    "scalar_rmul",
    "solve",
    "solve_cramer",
    "solve_direct",
    "solve_general",
    "vstack",
    "__version__",
]
