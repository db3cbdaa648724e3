"""Exact generators and discrepancy machinery for radical-inverse sequences.

The package covers one-dimensional van der Corput sequences and their
relatives (permuted digits, Cantor bases, digital matrix constructions,
golden-ratio expansions, Kakutani rotations, symmetrized interleavings),
multi-dimensional Halton and Hammersley point sets, and both routes to
their discrepancies: closed formulas built from piecewise-linear digit
functions, and brute-force sweeps over exact rational point sets.  Every
closed formula has a sweeping oracle next to it, and the `corput` command
line drives both and compares them case by case.

All coordinates are exact: `Fraction` values or `ExactPoint` records that
carry the digit expansion alongside the rational value, so two independent
computations of the same quantity can be compared with `==` rather than a
tolerance.
"""

from .digits import (
    CantorBase,
    ExactPoint,
    Expansion,
    from_cantor_digits,
    from_digits,
    greedy_expansion_digits,
    to_cantor_digits,
    to_digits,
    truncate,
    zeckendorf,
)
from .generators import (
    CantorVdc,
    Golden,
    Gvdc,
    IndexTransformed,
    Kakutani,
    Sequence,
    Symmetrized,
    Vdc,
    kakutani_step,
    parse_sequence,
    radical_inverse,
)
from .perms import (
    Perm,
    PermSeq,
    identity,
    intricate,
    linear,
    parse_perm,
    parse_permseq,
    random_perm,
    random_permseq,
    tau,
)
from .psi import (
    PiecewiseLinear,
    PsiSet,
    alpha,
    alpha_pm,
    beta_gamma,
    build_phi,
    psi_set,
)
from .discrepancy import (
    StarResult,
    diaphony_pair,
    extreme_1d,
    l1_1d,
    l2_product,
    l2_prefix_sweep_1d,
    local_delta,
    lp_1d,
    star_1d,
    star_md_exact,
    star_prefix_sweep,
)
from .formulas import (
    bf_star_b2,
    d_recursion_b2,
    declerck_star,
    descent_error,
    evaluate_bound,
    faure_l2_b2,
    gvdc_formulas,
    gvdc_l2_f_l1,
    hammersley_lp,
    l_min,
    nut_formulas,
    sym_l2_b2,
    y3_star,
)
from .digital import (
    GeneratorMatrix,
    GnutSeq,
    MatrixSeq,
    PolyVdc,
    StrictUpper,
    digital_point,
    gnut_point,
    net_t_points,
    niederreiter_matrices,
    random_strict_upper,
)
from .multidim import (
    HaltonSeq,
    HaltonSpec,
    halton_point,
    hammersley_2d,
    hammersley_sd,
    parse_multidim,
)
from .analysis import (
    BirkhoffProfile,
    ScanProfile,
    SigmaStats,
    birkhoff_sum,
    bounded_remainder_scan,
    clt_empirical,
    klp_sandwich_check,
    serial_star,
    sigma_stats,
    th2f83_error,
)

__all__ = [
    "BirkhoffProfile",
    "CantorBase",
    "CantorVdc",
    "ExactPoint",
    "Expansion",
    "GeneratorMatrix",
    "GnutSeq",
    "Golden",
    "Gvdc",
    "HaltonSeq",
    "HaltonSpec",
    "IndexTransformed",
    "Kakutani",
    "MatrixSeq",
    "Perm",
    "PermSeq",
    "PiecewiseLinear",
    "PolyVdc",
    "PsiSet",
    "ScanProfile",
    "Sequence",
    "SigmaStats",
    "StarResult",
    "StrictUpper",
    "Symmetrized",
    "Vdc",
    "alpha",
    "alpha_pm",
    "beta_gamma",
    "bf_star_b2",
    "birkhoff_sum",
    "bounded_remainder_scan",
    "build_phi",
    "clt_empirical",
    "d_recursion_b2",
    "declerck_star",
    "descent_error",
    "diaphony_pair",
    "digital_point",
    "evaluate_bound",
    "extreme_1d",
    "faure_l2_b2",
    "from_cantor_digits",
    "from_digits",
    "gnut_point",
    "greedy_expansion_digits",
    "gvdc_formulas",
    "gvdc_l2_f_l1",
    "halton_point",
    "hammersley_2d",
    "hammersley_lp",
    "hammersley_sd",
    "identity",
    "intricate",
    "kakutani_step",
    "klp_sandwich_check",
    "l1_1d",
    "l2_prefix_sweep_1d",
    "l2_product",
    "l_min",
    "linear",
    "local_delta",
    "lp_1d",
    "net_t_points",
    "niederreiter_matrices",
    "nut_formulas",
    "parse_multidim",
    "parse_perm",
    "parse_permseq",
    "parse_sequence",
    "psi_set",
    "radical_inverse",
    "random_perm",
    "random_permseq",
    "random_strict_upper",
    "serial_star",
    "sigma_stats",
    "star_1d",
    "star_md_exact",
    "star_prefix_sweep",
    "sym_l2_b2",
    "tau",
    "th2f83_error",
    "to_cantor_digits",
    "to_digits",
    "truncate",
    "y3_star",
    "zeckendorf",
]
