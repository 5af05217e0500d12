"""Legendre-family elliptic curves: exact arithmetic, heights, periods, torsion."""

__version__ = "0.1.0"

from .projective import BigRational, RationalProjectivePoint, normalize_projective
from .intpoly import IntPolynomial, poly_compose, poly_eval
from .legendre import (
    LegendreCurve,
    LegendreFiberPoint,
    ProductFiberPoint,
    add,
    mul_n,
    neg,
    on_curve,
    rational_torsion_order,
)
from .heights import (
    NTEstimate,
    lambda_height,
    neron_tate,
    neron_tate_product,
    segre_height,
    silverman_tate_ratio,
    szpiro_ullmo_bound,
    total_height,
    weil_height,
)
from .analytic import (
    ComplexFiberPoint,
    ComplexProductPoint,
    PeriodPair,
    TorusCoordinate,
    e_values,
    exp_map,
    hyper_F,
    in_sigma,
    j_invariant,
    lambda_of_tau,
    monodromy_shift_0,
    monodromy_shift_1,
    periods,
    r_of_tau,
    rho_tilde,
    tau_of_lambda,
    weierstrass_p,
    weierstrass_p_prime,
    xi_map,
)
from .duppoly import DuplicationTriple, base_triple, dup_apply, lift_triple, triple
from .torsion import (
    TorusBox,
    count_roots_in_box,
    fiber_torsion_points,
    kronecker_orbit_gap,
    torsion_on_section,
)
from .families import FamilySpec, builtin_family_x2, resolve_family
from .experiments import (
    RunRecord,
    build_record,
    persist_run,
    run_height_inequality,
    run_silverman_tate,
    run_specialization_ratio,
)
