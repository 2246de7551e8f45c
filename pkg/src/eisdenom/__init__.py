"""Exact arithmetic for the denominators of Eisenstein cohomology classes of
the modular group, with the downstream consequences: higher Rademacher
symbols, partial zeta values of real quadratic orders and the sharp universal
bound on their denominators.
"""

from .bernoulli import (
    bernoulli_number,
    bernoulli_poly,
    dirichlet_L_neg,
    faulhaber,
    gen_bernoulli_quadratic,
    kronecker,
    padic_val,
    zeta_denominator,
    zeta_neg,
    zeta_numerator,
)
from .eis import (
    EisensteinCocycle,
    basic_cycle_pairing,
    eisenstein_cocycle,
    eisenstein_denominator,
    lift_pairing_limit,
    p_defect,
    p_defect_nu,
    padic_l_ratio,
    pair_lift_value,
    window_pairing,
)
from .modsym import (
    Cusp,
    Formal,
    SymbolChain,
    boundary_class,
    build_lift,
    closed_basic_cell,
    hecke_tp,
    hecke_up,
    hecke_uv_sum,
    hecke_vp,
    integrality_report,
    is_cycle,
    manin_decompose,
)
from .padic import (
    Lp_neg,
    PadicInt,
    congruence_cor_case1,
    congruence_cor_case2,
    irregular_index,
    skula_bound_ok,
    teichmuller,
)
from .qexp import eisenstein_q, numeric_pair, numeric_pair_chain
from .quadfield import (
    NarrowClass,
    QuadOrder,
    fundamental_unit_tp,
    invariant_quadratic,
    narrow_classes,
    partial_zeta_neg,
    rademacher,
    sharpness_search,
)
from .sympoly import HomPoly, LiftParams, act, difference_primitive, integral_primitive, pair_dual

__version__ = "0.1.0"
