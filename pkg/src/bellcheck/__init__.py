"""Cl(3) geometric-algebra audit of hidden-variable spin models."""

from .clifford import (
    BASIS_BLADES,
    BASIS_LABELS,
    E_X,
    E_XY,
    E_Y,
    E_YZ,
    E_Z,
    E_ZX,
    GRADES,
    I_BLADE,
    ONE,
    Multivector,
    cross_product,
    dot,
    dual,
    even_subalgebra_iso_check,
    geometric_product,
    grade_project,
    normalized,
    reverse,
    unit_vector,
    wedge,
)
from .models import (
    FLIPPED,
    NATURAL,
    ConstraintAverages,
    HiddenState,
    MeterModel,
    UpdateRule,
    apply_update,
    bell_observable,
    constraint_check,
    effective_outcome,
    expectation_over_mu,
    hemisphere_update,
    meter_outcome,
    observable_value,
    pair_product,
)
from .quantum import (
    chsh_value,
    product_state_correlation,
    sequential_probabilities,
    singlet_correlation,
    singlet_state,
    spin_op,
    tensor,
)
from .scenarios import (
    McResult,
    ScenarioReport,
    closed_grid,
    run_bell_toy,
    run_chsh,
    run_constraint_check,
    run_epr_scan,
    run_sequential,
    run_three_particle_search,
    search_update_rules,
)

__version__ = "0.1.0"
