import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bellcheck.clifford import (
    BASIS_BLADES,
    E_X,
    E_XY,
    E_Y,
    E_YZ,
    E_Z,
    E_ZX,
    GRADES,
    I_BLADE,
    ONE,
    PRODUCT_INDEX,
    PRODUCT_SIGN,
    QUATERNION_IMAGES,
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

import oracles

coeff = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
multivectors = st.tuples(*([coeff] * 8)).map(Multivector)
directions = (
    st.tuples(coeff, coeff, coeff)
    .filter(lambda v: math.sqrt(sum(c * c for c in v)) > 1e-3)
    .map(normalized)
)


def mv_from(**slots):
    labels = ["s", "ex", "ey", "ez", "exy", "eyz", "ezx", "I"]
    coeffs = [0.0] * 8
    for name, value in slots.items():
        coeffs[labels.index(name)] = value
    return Multivector(tuple(coeffs))


# -- geometric product -------------------------------------------------------


def test_orthogonal_generators_anticommute_into_bivector():
    assert geometric_product(E_X, E_Y) == E_XY
    assert geometric_product(E_Y, E_X) == -E_XY


def test_pseudoscalar_squares_to_minus_one():
    assert geometric_product(I_BLADE, I_BLADE) == Multivector.scalar(-1.0)


def test_unit_vector_squares_to_scalar_one():
    assert geometric_product(E_X, E_X) == ONE


def test_product_table_matches_matrix_representation():
    for i, bi in enumerate(BASIS_BLADES):
        ei = tuple(1.0 if k == i else 0.0 for k in range(8))
        for j, bj in enumerate(BASIS_BLADES):
            ej = tuple(1.0 if k == j else 0.0 for k in range(8))
            assert geometric_product(bi, bj).coeffs == oracles.ref_product(ei, ej)


def test_table_entries_are_unit_signs():
    for row in PRODUCT_SIGN:
        assert set(row) <= {1, -1}
    for row in PRODUCT_INDEX:
        assert sorted(row) == list(range(8))


@given(multivectors, multivectors, multivectors)
@settings(max_examples=200)
def test_associativity(x, y, z):
    lhs = geometric_product(geometric_product(x, y), z)
    rhs = geometric_product(x, geometric_product(y, z))
    assert (lhs - rhs).max_abs_coeff() <= 1e-10


@given(multivectors, multivectors)
def test_product_agrees_with_matrix_oracle(x, y):
    got = geometric_product(x, y).coeffs
    want = oracles.ref_product(x.coeffs, y.coeffs)
    assert max(abs(a - b) for a, b in zip(got, want)) <= 1e-12


@given(multivectors)
def test_pseudoscalar_is_central(x):
    diff = geometric_product(I_BLADE, x) - geometric_product(x, I_BLADE)
    assert diff.max_abs_coeff() <= 1e-12


def test_pseudoscalar_central_on_blades_exactly():
    for blade in BASIS_BLADES:
        diff = geometric_product(I_BLADE, blade) - geometric_product(blade, I_BLADE)
        assert diff.max_abs_coeff() == 0.0


@given(directions)
def test_vector_square_is_squared_norm(v):
    mv = Multivector.from_vector(v)
    norm_sq = sum(c * c for c in v)
    assert geometric_product(mv, mv).approx_eq(Multivector.scalar(norm_sq), 1e-12)


# -- grade projection --------------------------------------------------------


@given(multivectors)
def test_grade_projections_sum_to_identity(x):
    total = Multivector.zero()
    for k in range(4):
        part = grade_project(x, k)
        for idx, c in enumerate(part.coeffs):
            if c != 0.0:
                assert GRADES[idx] == k
        total = total + part
    assert total == x


# -- inner (grade-lowering) product ------------------------------------------


def test_dot_trivector_with_vector_is_full_product():
    assert dot(I_BLADE, E_Z) == E_XY
    assert dot(I_BLADE, E_X) == E_YZ


def test_dot_vector_with_itself_is_scalar():
    assert dot(E_X, E_X) == ONE


@given(directions)
def test_dot_equals_product_for_trivector_times_vector(n):
    # Both sides are the same pure bivector for mu = +-I.
    mv = Multivector.from_vector(n)
    for sign in (1.0, -1.0):
        mu = Multivector.pseudoscalar(sign)
        assert dot(mu, mv) == geometric_product(mu, mv)


# -- wedge ---------------------------------------------------------------


def test_wedge_orthogonal_vectors():
    assert wedge(E_X, E_Y) == E_XY


def test_wedge_self_is_zero():
    assert wedge(E_X, E_X) == Multivector.zero()


def test_wedge_in_plane_angle():
    theta = math.pi / 3
    b = Multivector.from_vector((math.cos(theta), math.sin(theta), 0.0))
    expected = mv_from(exy=math.sin(theta))
    assert wedge(E_X, b).approx_eq(expected)


@given(directions, directions)
def test_wedge_antisymmetric_on_vectors(a, b):
    av, bv = Multivector.from_vector(a), Multivector.from_vector(b)
    assert (wedge(av, bv) + wedge(bv, av)).max_abs_coeff() <= 1e-12


# -- duality -----------------------------------------------------------------


def test_dual_examples():
    assert dual(I_BLADE) == ONE
    assert dual(E_Z) == -E_XY
    assert dual(dual(E_X)) == -E_X


@given(multivectors)
def test_dual_involution_is_negation(x):
    assert (dual(dual(x)) + x).max_abs_coeff() <= 1e-12


# -- reverse -----------------------------------------------------------------


def test_reverse_sign_rule():
    assert reverse(E_XY) == -E_XY
    assert reverse(I_BLADE) == -I_BLADE
    assert reverse(ONE + E_X) == ONE + E_X


@given(multivectors, multivectors)
def test_reverse_antiautomorphism(x, y):
    lhs = reverse(geometric_product(x, y))
    rhs = geometric_product(reverse(y), reverse(x))
    assert (lhs - rhs).max_abs_coeff() <= 1e-10


# -- cross product -----------------------------------------------------------


def test_cross_product_examples():
    assert cross_product((1, 0, 0), (0, 1, 0)) == (0.0, 0.0, 1.0)
    assert cross_product((1, 0, 0), (1, 0, 0)) == (0.0, 0.0, 0.0)
    assert cross_product((1, 0, 0), (0, 0, 1)) == (0.0, -1.0, 0.0)


@given(directions, directions)
def test_cross_product_is_dual_of_wedge(a, b):
    w = wedge(Multivector.from_vector(a), Multivector.from_vector(b))
    via_duality = dual(w)
    assert via_duality.grade(1) == via_duality  # pure vector
    got = cross_product(a, b)
    assert max(abs(p - q) for p, q in zip(via_duality.vector_part(), got)) <= 1e-12


# -- quaternion even subalgebra ----------------------------------------------


def test_quaternion_product_table_exact():
    i, j, k = (QUATERNION_IMAGES[n] for n in ("i", "j", "k"))
    table = {
        (i, i): -ONE, (j, j): -ONE, (k, k): -ONE,
        (i, j): k, (j, i): -k,
        (j, k): i, (k, j): -i,
        (k, i): j, (i, k): -j,
    }
    for (a, b), want in table.items():
        assert geometric_product(a, b) == want


def test_iso_check_passes_and_detects_swapped_images():
    assert even_subalgebra_iso_check(200) is True
    swapped = dict(QUATERNION_IMAGES)
    swapped["j"], swapped["k"] = swapped["k"], swapped["j"]
    assert even_subalgebra_iso_check(10, images=swapped) is False


def test_iso_check_rejects_bad_sample_count():
    with pytest.raises(ValueError):
        even_subalgebra_iso_check(0)


# -- vectors and rendering ---------------------------------------------------


def test_unit_vector_accepts_unit_and_rejects_others():
    assert unit_vector((0, 0, 1)) == (0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        unit_vector((0, 0, 1.001))
    with pytest.raises(ValueError):
        normalized((0, 0, 0))


def test_vector_embedding_roundtrip():
    v = (0.3, -0.4, 0.5)
    mv = Multivector.from_vector(v)
    assert mv.grade(1) == mv
    assert mv.vector_part() == v


def test_render_format():
    assert Multivector.zero().render() == "0"
    assert mv_from(s=-1.0, exy=0.5).render() == "-1·s + 0.5·exy"
    assert mv_from(s=1.0, eyz=-0.25).render() == "1·s - 0.25·eyz"
    # 12 significant digits
    assert mv_from(ex=1 / 3).render() == "0.333333333333·ex"


def test_multivector_requires_eight_coefficients():
    with pytest.raises(ValueError):
        Multivector((1.0, 2.0))
