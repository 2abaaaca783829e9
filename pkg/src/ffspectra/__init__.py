"""Finite-field arithmetic and second-order zero differential spectra.

Modules:

* :mod:`ffspectra.field` -- GF(p^n) contexts, elements and vectorized ops
* :mod:`ffspectra.solvers` -- trinomial, quadratic, cubic and linearized solvers
* :mod:`ffspectra.spectra` -- DDT / FBCT brute-force tables and classifiers
* :mod:`ffspectra.closed_forms` -- per-cell closed forms and their verifiers
* :mod:`ffspectra.cli` -- the ``ffspectra`` command
"""

from .closed_forms import (
    Prediction,
    TheoremId,
    VerifyReport,
    predict_binomial,
    predict_cubic,
    predict_do,
    predict_inverse_like,
    predict_inverse_like_t3,
    predict_quarter_family,
    predict_ternary_gold,
    predict_x21,
    verify_theorem,
)
from .errors import FFSpectraError
from .field import FieldCtx, FieldElement, mk_field
from .solvers import (
    LinearizedMap,
    TrinomialInstance,
    affine_solution_count,
    classify_cubic_char2,
    companion_rank_kernel,
    linearized_kernel,
    solve_quadratic_char2,
    solve_trinomial,
)
from .spectra import (
    CubicForm,
    DOPoly,
    Lut,
    Monomial,
    SparsePoly,
    SpectrumTable,
    ddt_table,
    differential_uniformity,
    fbct_table,
    is_apn,
    is_partial_apn,
    is_pn,
    sozd_table,
    sozd_uniformity,
)

__version__ = "0.1.0"
