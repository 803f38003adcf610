"""Executable audits of the trivector hidden-variable model.

Each scenario compares a model prediction against the quantum reference and
compiles a ScenarioReport.  Averages over the two-point hidden state mu are
exact enumerations; only the continuous lambda of Bell's toy model is
estimated by seeded Monte Carlo, with standard errors reported.

Verdict booleans record comparison outcomes (does the model match the
reference?).  Each scenario also fills `expected`, the designation of which
verdicts are gated and what value they must take for the run to count as
reproducing the documented behaviour; `gate_passed()` folds that into the
process exit code.  Verdicts absent from `expected` are informational.

Report keys of the form "<group>:<field>" describe one grid point or one
searched configuration; plain keys are scenario-level values.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import quantum
from .clifford import Multivector, Vec3, unit_vector
from .models import (
    FLIPPED,
    NATURAL,
    HiddenState,
    MeterModel,
    MU_STATES,
    UpdateRule,
    bell_observable,
    constraint_check,
    expectation_over_mu,
    expectation_over_mu_scalar,
    hemisphere_samples,
    meter_outcome,
    pair_product,
    random_unit_vectors,
)

EXACT_TOL = 1e-12
FEASIBILITY_TOL = 1e-9

E_Z: Vec3 = (0.0, 0.0, 1.0)
E_X: Vec3 = (1.0, 0.0, 0.0)

SEQUENTIAL_MODELS = ("clifford", "bell-static", "bell-hemisphere")
EPR_MODES = ("original", "anticorrelated")

BELL_UPDATE_NOTE = (
    "static-lambda results cover the sign observable of Eq. (9) in Bell, "
    "Physics 1, 195 (1964); the alternative observable of Eq. (4) there is "
    "said to avoid the repeated-measurement defect but is not modelled "
    "here, so that claim is unverified"
)


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _dir_xz(theta: float) -> Vec3:
    """Unit vector at angle theta from e_z toward e_x, in the x-z plane."""
    return (math.sin(theta), 0.0, math.cos(theta))


def closed_grid(start: float, stop: float, step: float) -> list[float]:
    """Grid start + k*step, closed on both ends (no accumulation drift)."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    span = stop - start
    if span < 0.0:
        raise ValueError("stop must not precede start")
    count = int(math.floor(span / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


@dataclass(frozen=True)
class McResult:
    """One Monte Carlo estimate; samples is the estimator's denominator."""

    estimate: float
    standard_error: float
    samples: int


@dataclass
class ScenarioReport:
    scenario_name: str
    parameters: dict
    exact_results: dict
    mc_results: dict[str, McResult]
    qm_reference: dict[str, float]
    verdicts: dict[str, bool]
    seed: int
    # Gating designation: verdict name -> value required for exit code 0.
    # Not part of the serialized report; names absent here are informational.
    expected: dict[str, bool] = field(default_factory=dict)

    def gate_passed(self) -> bool:
        if not self.expected:
            return all(self.verdicts.values())
        return all(self.verdicts.get(name) == want for name, want in self.expected.items())

    def to_json_dict(self) -> dict:
        def convert(value):
            if isinstance(value, Multivector):
                return value.render()
            if isinstance(value, bool):
                return value
            if isinstance(value, (int, np.integer)):
                return int(value)
            if isinstance(value, (float, np.floating)):
                return _round12(float(value))
            if isinstance(value, (list, tuple)):
                return [convert(v) for v in value]
            return value

        return {
            "scenario_name": self.scenario_name,
            "parameters": {k: convert(v) for k, v in self.parameters.items()},
            "exact_results": {k: convert(v) for k, v in self.exact_results.items()},
            "mc_results": {
                k: {
                    "estimate": _round12(m.estimate),
                    "standard_error": _round12(m.standard_error),
                    "samples": int(m.samples),
                }
                for k, m in self.mc_results.items()
            },
            "qm_reference": {k: convert(v) for k, v in self.qm_reference.items()},
            "verdicts": dict(self.verdicts),
            "seed": int(self.seed),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "ScenarioReport":
        return cls(
            scenario_name=data["scenario_name"],
            parameters=dict(data["parameters"]),
            exact_results=dict(data["exact_results"]),
            mc_results={
                k: McResult(m["estimate"], m["standard_error"], m["samples"])
                for k, m in data["mc_results"].items()
            },
            qm_reference=dict(data["qm_reference"]),
            verdicts=dict(data["verdicts"]),
            seed=data["seed"],
        )


def _proportion(flags: np.ndarray) -> McResult:
    n = int(flags.size)
    if n == 0:
        raise ValueError("no samples left after conditioning")
    p = float(np.count_nonzero(flags)) / n
    se = math.sqrt(p * (1.0 - p) / n)
    return McResult(p, se, n)


def _mean(values: np.ndarray) -> McResult:
    n = int(values.size)
    if n < 2:
        raise ValueError("need at least two samples for a standard error")
    est = float(np.mean(values))
    se = float(np.std(values, ddof=1)) / math.sqrt(n)
    return McResult(est, se, n)


# ---------------------------------------------------------------------------
# EPR-Bohm correlation scan
# ---------------------------------------------------------------------------


def run_epr_scan(angle_grid: Sequence[float],
                 meter_b_mode: str = "original") -> ScenarioReport:
    """Exact averaged pair product against the singlet correlation -a.b.

    Mode "original" defines both meters as mu . n: the scalar part of the
    averaged product reproduces -cos(theta) at every angle, with a residual
    grade-2 term that the report records.  Mode "anticorrelated" forces
    B = -A, as perfect anticorrelation of individual outcomes demands; the
    scalar part then comes out as +cos(theta), the wrong sign wherever
    cos(theta) is nonzero.
    """
    if not angle_grid:
        raise ValueError("angle grid must be nonempty")
    if meter_b_mode not in EPR_MODES:
        raise ValueError(f"meter_b_mode must be one of {EPR_MODES}")

    meter_a = MeterModel()
    meter_b = MeterModel(def_sign=1 if meter_b_mode == "original" else -1)

    exact: dict = {}
    qm_ref: dict[str, float] = {}
    verdicts: dict[str, bool] = {}
    all_ok = True
    for theta in angle_grid:
        b_dir = _dir_xz(theta)
        averaged = expectation_over_mu(
            lambda mu: pair_product(meter_a, meter_b, E_Z, b_dir, mu))
        scalar = averaged.scalar_part
        bivector = averaged.grade(2)
        qm = quantum.singlet_correlation(E_Z, b_dir)

        g = f"theta={_fmt(theta)}"
        exact[f"{g}:model_scalar"] = scalar
        exact[f"{g}:model_bivector"] = bivector
        exact[f"{g}:bivector_norm"] = bivector.coeff_norm()
        qm_ref[f"{g}:qm"] = qm
        if meter_b_mode == "original":
            ok = abs(scalar - qm) <= EXACT_TOL
            verdicts[f"{g}:matches_qm"] = ok
        else:
            ok = abs(scalar - math.cos(theta)) <= EXACT_TOL
            verdicts[f"{g}:wrong_sign"] = ok
        all_ok = all_ok and ok

    verdicts["all_points_as_predicted"] = all_ok
    return ScenarioReport(
        scenario_name="epr-scan",
        parameters={
            "meter_b_mode": meter_b_mode,
            "meter_a_def_sign": meter_a.def_sign,
            "meter_b_def_sign": meter_b.def_sign,
            "n_points": len(angle_grid),
            "angles": [float(t) for t in angle_grid],
        },
        exact_results=exact,
        mc_results={},
        qm_reference=qm_ref,
        verdicts=verdicts,
        seed=0,
        expected={name: True for name in verdicts},
    )


# ---------------------------------------------------------------------------
# CHSH at the canonical angles
# ---------------------------------------------------------------------------

CHSH_ANGLES = (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)  # a, a', b, b'


def _static_sign_correlation(a: Vec3, b: Vec3, lams: np.ndarray) -> McResult:
    """E[sign(a.lam) * (-sign(b.lam))] over a batch of shared lambdas."""
    a_out = np.where(lams @ np.asarray(a) >= 0.0, 1, -1)
    b_out = -np.where(lams @ np.asarray(b) >= 0.0, 1, -1)
    return _mean((a_out * b_out).astype(float))


def run_chsh(samples: int = 100_000, seed: int = 42) -> ScenarioReport:
    """CHSH combination at a = 0, a' = 90deg, b = 45deg, b' = 135deg.

    Records the quantum value (2*sqrt(2)), the exactly enumerated scalar
    part of the trivector model (identical, since that scalar equals -a.b),
    and a Monte Carlo CHSH for the static-lambda sign model, which as a
    local deterministic model must respect the bound 2.
    """
    if samples < 0:
        raise ValueError("samples must be >= 0")
    a, a2, b, b2 = (_dir_xz(t) for t in CHSH_ANGLES)

    qm = quantum.chsh_value(a, a2, b, b2)

    meter = MeterModel()

    def model_corr(x: Vec3, y: Vec3) -> float:
        return expectation_over_mu(
            lambda mu: pair_product(meter, meter, x, y, mu)).scalar_part

    model_chsh = (abs(model_corr(a, b) - model_corr(a, b2))
                  + abs(model_corr(a2, b) + model_corr(a2, b2)))

    tsirelson = 2.0 * math.sqrt(2.0)
    exact = {"model_scalar_chsh": model_chsh}
    qm_ref = {"chsh": qm, "local_bound": 2.0, "tsirelson_bound": tsirelson}
    verdicts = {
        "qm_chsh_at_tsirelson": abs(qm - tsirelson) <= 1e-9,
        "model_scalar_chsh_matches_qm": abs(model_chsh - qm) <= EXACT_TOL,
    }
    expected = {name: True for name in verdicts}

    mc: dict[str, McResult] = {}
    if samples > 0:
        rng = np.random.default_rng(seed)
        terms = {}
        for name, (x, y) in {
            "E_ab": (a, b), "E_ab2": (a, b2), "E_a2b": (a2, b), "E_a2b2": (a2, b2),
        }.items():
            terms[name] = _static_sign_correlation(x, y, random_unit_vectors(rng, samples))
            mc[f"bell_static_{name}"] = terms[name]
        s_est = (abs(terms["E_ab"].estimate - terms["E_ab2"].estimate)
                 + abs(terms["E_a2b"].estimate + terms["E_a2b2"].estimate))
        s_se = math.sqrt(sum(t.standard_error ** 2 for t in terms.values()))
        mc["bell_static_chsh"] = McResult(s_est, s_se, samples)
        verdicts["bell_static_within_local_bound"] = s_est <= 2.0 + 3.0 * s_se
        expected["bell_static_within_local_bound"] = True

    return ScenarioReport(
        scenario_name="chsh",
        parameters={"samples": samples, "angles": list(CHSH_ANGLES)},
        exact_results=exact,
        mc_results=mc,
        qm_reference=qm_ref,
        verdicts=verdicts,
        seed=seed,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# Sequential measurements on a single particle
# ---------------------------------------------------------------------------


def _sequential_qm_refs() -> dict[str, float]:
    plus_z = quantum.ket_z(1)
    seq = quantum.sequential_probabilities
    p_z = seq(plus_z, [E_Z], [1])
    p_zz = seq(plus_z, [E_Z, E_Z], [1, 1])
    p_zx = seq(plus_z, [E_Z, E_X], [1, 1])
    p_zxz = seq(plus_z, [E_Z, E_X, E_Z], [1, 1, 1])
    return {
        "P_zz": p_zz / p_z,
        "P_zx": p_zx / p_z,
        "P_zxz": p_zxz / p_zx,
    }


def run_sequential(model: str = "clifford",
                   rule: UpdateRule | None = None,
                   samples: int = 100_000,
                   seed: int = 42) -> ScenarioReport:
    """Repeated measurements z then {x or z} on one "up along z" particle.

    clifford: the hidden state after the first measurement is mu with the
    update rule applied, so P(z then z both up) and P(z then x both up) are
    both 1 - flip_prob: no rule reaches the quantum pair (1, 1/2).  The z/x
    choice is the experimenter's, so the rule cannot depend on it.

    bell-static / bell-hemisphere: the sign model with a fixed lambda keeps
    the first two conditionals right but forces the third z outcome after a
    ++ history, where a hemisphere redraw around each measured axis restores
    the quantum 1/2.
    """
    if model not in SEQUENTIAL_MODELS:
        raise ValueError(f"model must be one of {SEQUENTIAL_MODELS}")

    qm_ref = _sequential_qm_refs()
    exact: dict = {}
    mc: dict[str, McResult] = {}
    verdicts: dict[str, bool] = {}
    expected: dict[str, bool] = {}
    parameters: dict = {"model": model, "samples": samples}

    if model == "clifford":
        if rule is None:
            raise ValueError("the clifford model needs an update rule")
        p_flip = rule.prob(1, "z")
        parameters["flip_prob_after_z"] = p_flip
        exact["P_zz"] = 1.0 - p_flip
        exact["P_zx"] = 1.0 - p_flip
        m_zz = abs(exact["P_zz"] - qm_ref["P_zz"]) <= EXACT_TOL
        m_zx = abs(exact["P_zx"] - qm_ref["P_zx"]) <= EXACT_TOL
        verdicts["P_zz_matches_qm"] = m_zz
        verdicts["P_zx_matches_qm"] = m_zx
        verdicts["defect_demonstrated"] = not (m_zz and m_zx)
        expected["defect_demonstrated"] = True
        qm_ref.pop("P_zxz")
        return ScenarioReport("sequential", parameters, exact, mc, qm_ref,
                              verdicts, seed, expected)

    if samples < 10_000:
        raise ValueError("stochastic models need samples >= 10000")
    parameters["note"] = BELL_UPDATE_NOTE
    rng = np.random.default_rng(seed)

    if model == "bell-static":
        # Conditionals over the static posterior region; signs of lambda
        # components are independent for orthogonal axes, so the first two
        # are exact by symmetry while the third is pinned to 1.
        exact["P_zz"] = 1.0
        exact["P_zx"] = 0.5
        exact["P_zxz"] = 1.0
        lam = random_unit_vectors(rng, samples)
        up_z = lam[:, 2] >= 0.0
        first = lam[up_z]
        mc["P_zz"] = _proportion(first[:, 2] >= 0.0)
        mc["P_zx"] = _proportion(first[:, 0] >= 0.0)
        both = first[first[:, 0] >= 0.0]
        mc["P_zxz"] = _proportion(both[:, 2] >= 0.0)
    else:
        # Hemisphere redraw around each measured axis.
        exact["P_zz"] = 1.0
        exact["P_zx"] = 0.5
        exact["P_zxz"] = 0.5
        lam0 = random_unit_vectors(rng, samples)
        n1 = int(np.count_nonzero(lam0[:, 2] >= 0.0))
        lam1 = hemisphere_samples(E_Z, 1, rng, n1)
        mc["P_zz"] = _proportion(lam1[:, 2] >= 0.0)
        mc["P_zx"] = _proportion(lam1[:, 0] >= 0.0)
        n2 = int(np.count_nonzero(lam1[:, 0] >= 0.0))
        lam2 = hemisphere_samples(E_X, 1, rng, n2)
        mc["P_zxz"] = _proportion(lam2[:, 2] >= 0.0)

    for name in ("P_zz", "P_zx", "P_zxz"):
        match_exact = abs(exact[name] - qm_ref[name]) <= EXACT_TOL
        est = mc[name]
        match_mc = abs(est.estimate - qm_ref[name]) <= 3.0 * est.standard_error
        verdicts[f"{name}_matches_qm"] = match_exact
        verdicts[f"{name}_mc_matches_qm"] = match_mc
        want = not (model == "bell-static" and name == "P_zxz")
        expected[f"{name}_matches_qm"] = want
        expected[f"{name}_mc_matches_qm"] = want
    if model == "bell-static":
        verdicts["third_measurement_defect"] = not verdicts["P_zxz_matches_qm"]
        expected["third_measurement_defect"] = True

    return ScenarioReport("sequential", parameters, exact, mc, qm_ref,
                          verdicts, seed, expected)


# ---------------------------------------------------------------------------
# Exhaustive search over post-measurement update rules
# ---------------------------------------------------------------------------


def search_update_rules(grid_step: float = 0.01) -> ScenarioReport:
    """Grid search over the flip probability applied after a z measurement.

    The particle leaves the first z measurement in the state mu = +I (the
    "up" outcome was selected), so the only parameter that can influence the
    second outcome is the post-z flip probability p: both follow-up
    probabilities equal 1 - p exactly.  The joint quantum targets
    {P(z up again) = 1, P(x up) = 1/2} require p = 0 and p = 1/2 at once,
    and the exhaustive grid confirms the feasible set is empty.  Two relaxed
    target pairs act as controls for the search machinery itself.
    """
    if not 0.0 < grid_step <= 0.1:
        raise ValueError("grid_step must be in (0, 0.1]")

    grid = closed_grid(0.0, 1.0, grid_step)
    exact: dict = {}
    verdicts: dict[str, bool] = {}
    expected: dict[str, bool] = {}
    feasible, relaxed_repeat, relaxed_uniform = [], [], []
    for p in grid:
        p_zz = 1.0 - p
        p_zx = 1.0 - p
        g = f"p={_fmt(p)}"
        exact[f"{g}:P_zz"] = p_zz
        exact[f"{g}:P_zx"] = p_zx
        ok = abs(p_zz - 1.0) <= FEASIBILITY_TOL and abs(p_zx - 0.5) <= FEASIBILITY_TOL
        verdicts[f"{g}:feasible"] = ok
        expected[f"{g}:feasible"] = False
        if ok:
            feasible.append(p)
        if abs(p_zz - 1.0) <= FEASIBILITY_TOL and abs(p_zx - 1.0) <= FEASIBILITY_TOL:
            relaxed_repeat.append(p)
        if abs(p_zz - 0.5) <= FEASIBILITY_TOL and abs(p_zx - 0.5) <= FEASIBILITY_TOL:
            relaxed_uniform.append(p)

    exact["feasible_count"] = len(feasible)
    exact["relaxed_repeat_count"] = len(relaxed_repeat)
    exact["relaxed_uniform_count"] = len(relaxed_uniform)
    if relaxed_repeat:
        exact["relaxed_repeat_first"] = relaxed_repeat[0]
    if relaxed_uniform:
        exact["relaxed_uniform_first"] = relaxed_uniform[0]
    verdicts["feasible_set_empty"] = not feasible
    verdicts["relaxed_repeat_nonempty"] = bool(relaxed_repeat)
    verdicts["relaxed_uniform_nonempty"] = bool(relaxed_uniform)
    expected["feasible_set_empty"] = True
    expected["relaxed_repeat_nonempty"] = True
    expected["relaxed_uniform_nonempty"] = True

    return ScenarioReport(
        scenario_name="update-rule-search",
        parameters={"grid_step": grid_step, "n_grid": len(grid),
                    "targets": "P_zz=1 and P_zx=0.5"},
        exact_results=exact,
        mc_results={},
        qm_reference={"P_zz": 1.0, "P_zx": 0.5},
        verdicts=verdicts,
        seed=0,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# Three-particle sign-convention exhaustion
# ---------------------------------------------------------------------------

_METER_OPTIONS = (
    MeterModel(1, NATURAL), MeterModel(1, FLIPPED),
    MeterModel(-1, NATURAL), MeterModel(-1, FLIPPED),
)


def _assignment_code(meters: Sequence[MeterModel]) -> str:
    ds = "".join("+" if m.def_sign == 1 else "-" for m in meters)
    interp = "".join("N" if m.interp == NATURAL else "F" for m in meters)
    return f"{ds}/{interp}"


def _algebraic_pair_expectation(ma: MeterModel, mb: MeterModel) -> float:
    return expectation_over_mu(
        lambda mu: pair_product(ma, mb, E_Z, E_Z, mu)).scalar_part


def _outcome_pair_expectation(ma: MeterModel, mb: MeterModel) -> float:
    return expectation_over_mu_scalar(
        lambda mu: float(meter_outcome(ma, E_Z, mu) * meter_outcome(mb, E_Z, mu)))


def run_three_particle_search() -> ScenarioReport:
    """Exhaust every sign convention against the product state pattern +-+.

    The searched space is def_sign in {+1,-1} and leg interpretation in
    {natural, flipped} per meter (64 assignments), with the shared hidden
    state uniform on {+I, -I}.  Consistency is judged on the algebraic pair
    expectations (scalar part of the averaged geometric product), which is
    how the model computes correlations: those equal -dsX*dsY per pair and
    can never hit the targets (-1, +1, -1) for (A,B), (A,C), (B,C), since
    the three products multiply to +1 while the targets multiply to -1.
    Interpreted +-1 outcome expectations and the per-mu outcome patterns
    are recorded alongside; a two-meter control over pattern +- shows that
    pair-by-pair fixes do exist, and the forced third-meter convention
    C(+-I) = -+ I e_z repairs (A,C) while breaking (B,C).
    """
    pattern = (1, -1, 1)
    qm_ref = {
        "E_AB": quantum.product_state_correlation(pattern, (0, 1), E_Z),
        "E_AC": quantum.product_state_correlation(pattern, (0, 2), E_Z),
        "E_BC": quantum.product_state_correlation(pattern, (1, 2), E_Z),
        "control_E_AB": quantum.product_state_correlation((1, -1), (0, 1), E_Z),
    }
    pair_names = (("E_AB", 0, 1), ("E_AC", 0, 2), ("E_BC", 1, 2))

    exact: dict = {}
    verdicts: dict[str, bool] = {}
    expected: dict[str, bool] = {}

    visited = 0
    consistent: list[str] = []
    best: tuple[float, str, dict[str, float]] | None = None
    for meters in itertools.product(_METER_OPTIONS, repeat=3):
        visited += 1
        code = _assignment_code(meters)
        g = f"assign={code}"
        errors: dict[str, float] = {}
        ok = True
        for name, i, j in pair_names:
            alg = _algebraic_pair_expectation(meters[i], meters[j])
            out = _outcome_pair_expectation(meters[i], meters[j])
            exact[f"{g}:{name}_alg"] = alg
            exact[f"{g}:{name}_out"] = out
            errors[name] = abs(alg - qm_ref[name])
            ok = ok and errors[name] <= EXACT_TOL
        total_err = sum(errors.values())
        exact[f"{g}:err_total"] = total_err

        at_plus = tuple(meter_outcome(m, E_Z, HiddenState(1)) for m in meters)
        at_minus = tuple(meter_outcome(m, E_Z, HiddenState(-1)) for m in meters)
        verdicts[f"{g}:pattern_at_mu_plus"] = at_plus == pattern
        verdicts[f"{g}:pattern_at_mu_minus"] = at_minus == pattern
        verdicts[f"{g}:marginals_deterministic"] = (at_plus == pattern and at_minus == pattern)
        expected[f"{g}:marginals_deterministic"] = False
        verdicts[f"{g}:consistent"] = ok
        expected[f"{g}:consistent"] = False
        if ok:
            consistent.append(code)
        key = (total_err, code)
        if best is None or key < (best[0], best[1]):
            best = (total_err, code, errors)

    control_consistent = 0
    for meters in itertools.product(_METER_OPTIONS, repeat=2):
        code = _assignment_code(meters)
        g = f"ctrl={code}"
        alg = _algebraic_pair_expectation(meters[0], meters[1])
        exact[f"{g}:E_AB_alg"] = alg
        ok = abs(alg - qm_ref["control_E_AB"]) <= EXACT_TOL
        verdicts[f"{g}:consistent"] = ok
        if ok:
            control_consistent += 1

    # The repaired convention: A natural, B same sign but flipped legs,
    # C with the opposite definition sign and flipped legs.
    forced_a = MeterModel(1, NATURAL)
    forced_b = MeterModel(1, FLIPPED)
    forced_c = MeterModel(-1, FLIPPED)
    forced_ac = _algebraic_pair_expectation(forced_a, forced_c)
    forced_bc = _algebraic_pair_expectation(forced_b, forced_c)
    exact["forced_E_AC_alg"] = forced_ac
    exact["forced_E_BC_alg"] = forced_bc
    verdicts["forced_ac_matches_qm"] = abs(forced_ac - qm_ref["E_AC"]) <= EXACT_TOL
    verdicts["forced_bc_matches_qm"] = abs(forced_bc - qm_ref["E_BC"]) <= EXACT_TOL
    expected["forced_ac_matches_qm"] = True
    expected["forced_bc_matches_qm"] = False

    exact["configurations_visited"] = visited
    exact["consistent_assignments"] = len(consistent)
    exact["control_consistent_count"] = control_consistent
    assert best is not None
    exact["best_assignment"] = best[1]
    for name, _, _ in pair_names:
        exact[f"best_err_{name[2:]}"] = best[2][name]
    exact["best_err_total"] = best[0]

    verdicts["consistent_set_empty"] = not consistent
    verdicts["control_consistent_nonempty"] = control_consistent > 0
    verdicts["search_visited_declared_count"] = visited == 64
    expected["consistent_set_empty"] = True
    expected["control_consistent_nonempty"] = True
    expected["search_visited_declared_count"] = True

    return ScenarioReport(
        scenario_name="three-particle",
        parameters={"pattern": "+-+", "direction": "ez",
                    "search_space": len(_METER_OPTIONS) ** 3},
        exact_results=exact,
        mc_results={},
        qm_reference=qm_ref,
        verdicts=verdicts,
        seed=0,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# Commutator / normalization audit
# ---------------------------------------------------------------------------


def run_constraint_check(direction_pairs: Sequence[tuple[Vec3, Vec3]],
                         meter_a: MeterModel = MeterModel(),
                         meter_b: MeterModel = MeterModel()) -> ScenarioReport:
    """Exact commutator and square averages for each direction pair.

    A viable model needs a vanishing averaged commutator for all pairs and
    a squared observable averaging to +1; here the commutator misses for
    every non-parallel pair and the square averages to the scalar -1
    always, both recorded as data.
    """
    pairs = list(direction_pairs)
    if not pairs:
        raise ValueError("need at least one direction pair")

    parameters: dict = {
        "meter_a_def_sign": meter_a.def_sign,
        "meter_b_def_sign": meter_b.def_sign,
        "n_pairs": len(pairs),
    }
    exact: dict = {}
    verdicts: dict[str, bool] = {}
    expected: dict[str, bool] = {}
    commutator_violations = 0
    normalization_violations = 0
    for i, (a, b) in enumerate(pairs):
        a = unit_vector(a)
        b = unit_vector(b)
        g = f"pair[{i}]"
        parameters[g] = (f"a=({_fmt(a[0])}; {_fmt(a[1])}; {_fmt(a[2])}) "
                         f"b=({_fmt(b[0])}; {_fmt(b[1])}; {_fmt(b[2])})")
        audit = constraint_check(meter_a, meter_b, a, b)
        exact[f"{g}:commutator"] = audit.commutator_avg
        exact[f"{g}:commutator_norm"] = audit.commutator_avg.coeff_norm()
        exact[f"{g}:square"] = audit.square_avg
        exact[f"{g}:square_scalar"] = audit.square_avg.scalar_part

        commutes = audit.commutator_avg.is_zero(EXACT_TOL)
        square_residual = audit.square_avg - Multivector.scalar(1.0)
        normalized_ok = square_residual.is_zero(EXACT_TOL)
        verdicts[f"{g}:commutator_zero"] = commutes
        verdicts[f"{g}:normalization_holds"] = normalized_ok
        # Prediction straight from the inputs: only parallel pairs commute,
        # and the normalization target is never met.
        dot_ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
        expected[f"{g}:commutator_zero"] = abs(abs(dot_ab) - 1.0) <= FEASIBILITY_TOL
        expected[f"{g}:normalization_holds"] = False
        if not commutes:
            commutator_violations += 1
        if not normalized_ok:
            normalization_violations += 1

    exact["commutator_violations"] = commutator_violations
    exact["normalization_violations"] = normalization_violations
    verdicts["normalization_violated_for_all"] = normalization_violations == len(pairs)
    expected["normalization_violated_for_all"] = True

    return ScenarioReport(
        scenario_name="constraint-check",
        parameters=parameters,
        exact_results=exact,
        mc_results={},
        qm_reference={"commutator_target": 0.0, "square_target": 1.0},
        verdicts=verdicts,
        seed=0,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# Bell toy model behaviour
# ---------------------------------------------------------------------------


def run_bell_toy(samples: int = 100_000, seed: int = 42) -> ScenarioReport:
    """Hemisphere-update postulate checks plus the third-measurement contrast.

    Validates the hemisphere sampler marginals (mean of n.lambda = 1/2 on
    the selected side, full support on that side, azimuthal symmetry), then
    compares the static and hemisphere variants on P(z up | history ++):
    the static posterior pins the answer to 1 while the redraw recovers the
    quantum 1/2.
    """
    if samples < 10_000:
        raise ValueError("stochastic models need samples >= 10000")
    rng = np.random.default_rng(seed)

    qm_third = _sequential_qm_refs()["P_zxz"]
    exact = {
        "hemisphere_mean_cos": 0.5,
        "hemisphere_support": 1.0,
        "hemisphere_mean_transverse": 0.0,
        "static_third": 1.0,
        "hemisphere_third": 0.5,
    }
    mc: dict[str, McResult] = {}

    lams = hemisphere_samples(E_Z, 1, rng, samples)
    mc["hemisphere_mean_cos"] = _mean(lams[:, 2])
    mc["hemisphere_support"] = _proportion(lams[:, 2] > 0.0)
    mc["hemisphere_mean_transverse"] = _mean(lams[:, 0])

    lam0 = random_unit_vectors(rng, samples)
    first = lam0[lam0[:, 2] >= 0.0]
    both = first[first[:, 0] >= 0.0]
    mc["static_third"] = _proportion(both[:, 2] >= 0.0)

    n1 = int(np.count_nonzero(lam0[:, 2] >= 0.0))
    lam1 = hemisphere_samples(E_Z, 1, rng, n1)
    n2 = int(np.count_nonzero(lam1[:, 0] >= 0.0))
    lam2 = hemisphere_samples(E_X, 1, rng, n2)
    mc["hemisphere_third"] = _proportion(lam2[:, 2] >= 0.0)

    verdicts = {
        "hemisphere_mean_cos_ok": abs(mc["hemisphere_mean_cos"].estimate - 0.5) <= 0.01,
        "hemisphere_support_ok": mc["hemisphere_support"].estimate == 1.0,
        "hemisphere_transverse_ok": abs(mc["hemisphere_mean_transverse"].estimate) <= 0.01,
        "static_third_is_one": mc["static_third"].estimate == 1.0,
        "static_third_fails_qm": (abs(mc["static_third"].estimate - qm_third)
                                  > 3.0 * mc["static_third"].standard_error),
        "hemisphere_third_matches_qm": (abs(mc["hemisphere_third"].estimate - qm_third)
                                        <= 3.0 * mc["hemisphere_third"].standard_error),
    }

    return ScenarioReport(
        scenario_name="bell-toy",
        parameters={"samples": samples, "pole": "ez", "note": BELL_UPDATE_NOTE},
        exact_results=exact,
        mc_results=mc,
        qm_reference={"P_third": qm_third},
        verdicts=verdicts,
        seed=seed,
        expected={name: True for name in verdicts},
    )
