import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pearllab import geom
from pearllab.geom import (
    AXIAL,
    CASE_B_MATRIX,
    CASE_B_RHS,
    DELTA_STANDARD,
    SIGMA,
    BinaryForm,
    Surd,
    act,
    axial_disc,
    boundary_moment_error,
    case_b_contradiction,
    check_group_element,
    configuration,
    constant_disc,
    discriminant_cubic,
    expm_traceless,
    frame_rotation,
    gamma_delta,
    h1_class,
    lie_action_matrix,
    loop_closes,
    maslov_bookkeeping,
    maslov_via_winding,
    moment_map,
    moment_map_exact,
    moment_norm,
    realness_residual,
    rotate_roots,
    secant_projection,
    sym3_action,
    torus_chiang_intersection,
    torus_point_form,
    twisted_cubic_coordinates,
    verify_lagrangian_orbit,
    winding_number,
)

floats = st.floats(-2.0, 2.0, allow_nan=False)


@st.composite
def su2(draw):
    q = np.array([draw(floats) for _ in range(4)])
    if np.linalg.norm(q) < 1e-3:
        q = np.array([1.0, 0, 0, 0])
    a, b, c, d = q / np.linalg.norm(q)
    alpha, beta = complex(a, b), complex(c, d)
    return np.array([[alpha, -beta.conjugate()], [beta, alpha.conjugate()]])


@st.composite
def sl2(draw):
    a, b, c = (complex(draw(floats), draw(floats)) for _ in range(3))
    if abs(a) < 0.1:
        a = 1.0
    return np.array([[a, b], [c, (1 + b * c) / a]])


@st.composite
def cubics(draw):
    v = [complex(draw(floats), draw(floats)) for _ in range(4)]
    if max(abs(x) for x in v) < 1e-2:
        v[0] = 1.0
    return BinaryForm(v)


def forms_of_degree(n):
    return st.lists(st.tuples(floats, floats), min_size=n + 1, max_size=n + 1).map(
        lambda cs: BinaryForm([complex(a, b) for a, b in cs] if any(a or b for a, b in cs) else [1] + [0] * n)
    )


def poly_value(form, x, y):
    n = form.degree
    return sum(c * x ** (n - k) * y**k for k, c in enumerate(form.coeffs))


# ---- exact data


def test_surd():
    s = Surd(12, 1)
    assert complex(s) == pytest.approx(1j * math.sqrt(12))
    assert Surd.of(-3) == Surd(9, 2)
    with pytest.raises(ValueError):
        Surd(-1)


def test_binary_form_validation():
    with pytest.raises(ValueError):
        BinaryForm([0, 0, 0])
    with pytest.raises(ValueError):
        BinaryForm([1])


@pytest.mark.parametrize("name", ["delta", "T", "O", "I"])
def test_configurations_are_lagrangian(name):
    form = configuration(name)
    assert moment_map_exact(form) == 0
    assert verify_lagrangian_orbit(name)
    assert moment_norm(form) <= 1e-12


def test_configuration_lookup():
    assert configuration("Δ") is configuration("delta")
    assert configuration("i").degree == 12
    with pytest.raises(KeyError):
        configuration("cube")


def test_exact_fast_path_value():
    # x^3 alone: all weight at the north pole
    assert moment_map_exact(BinaryForm.exact_form([1, 0, 0, 0])) == 3
    assert moment_map_exact(BinaryForm([1, 1, 0, 0])) is None
    assert moment_map_exact(BinaryForm.exact_form([1, 1, 0, 0])) is None


def test_perturbed_delta_is_not_lagrangian():
    assert moment_norm(BinaryForm([1, 0, 3, 0.1])) > 1e-3


def test_delta_standard_is_lagrangian():
    assert moment_map_exact(DELTA_STANDARD) == 0


# ---- the SL(2) action


def test_act_is_substitution():
    g = np.array([[2, 1], [3, 2]])
    f = BinaryForm([1, -2, 0, 5])
    x, y = 0.3 - 0.2j, 1.1 + 0.4j
    lhs = poly_value(act(g, f), x, y)
    rhs = poly_value(f, g[0, 0] * x + g[1, 0] * y, g[0, 1] * x + g[1, 1] * y)
    assert lhs == pytest.approx(rhs)


def test_group_element_checked():
    with pytest.raises(ValueError):
        check_group_element(np.eye(3))
    with pytest.raises(ValueError):
        check_group_element(2 * np.eye(2))
    with pytest.raises(ValueError):
        sym3_action(np.eye(2), configuration("T"))


@settings(max_examples=50, deadline=None)
@given(sl2(), sl2(), forms_of_degree(3))
def test_left_action(g, h, f):
    a = act(g, act(h, f)).coeffs
    b = act(g @ h, f).coeffs
    assert np.allclose(a, b, atol=1e-8 * max(1.0, np.abs(a).max()))


@settings(max_examples=50, deadline=None)
@given(su2(), st.integers(2, 6).flatmap(forms_of_degree))
def test_moment_map_equivariance(g, f):
    lhs = moment_map(act(g, f))
    rhs = g @ moment_map(f) @ np.linalg.inv(g)
    assert np.allclose(lhs, rhs, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(su2())
def test_su2_orbit_stays_lagrangian(g):
    for name in ("delta", "T", "O"):
        assert moment_norm(act(g, configuration(name))) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(sl2(), cubics())
def test_discriminant_invariance(g, f):
    moved = act(g, f)
    a, b = discriminant_cubic(moved), discriminant_cubic(f)
    # terms are quartic in the coefficients, so compare at that scale
    scale = max(np.abs(moved.coeffs).max(), np.abs(f.coeffs).max()) ** 4
    assert abs(a - b) <= 1e-9 * max(1.0, scale)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(floats, floats), min_size=3, max_size=3), st.tuples(floats, floats))
def test_discriminant_root_product(roots, lead):
    # oracle: a^4 prod (r_i - r_j)^2 for a prod (x - r_i y)
    a = complex(*lead) or 1.0
    rs = [complex(*r) for r in roots]
    coeffs = a * np.poly(rs)
    expected = a**4 * np.prod([(rs[i] - rs[j]) ** 2 for i in range(3) for j in range(i + 1, 3)])
    assert discriminant_cubic(coeffs) == pytest.approx(expected, abs=1e-8, rel=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.tuples(floats, floats, floats, floats), forms_of_degree(3))
def test_lie_action_matrix_is_derivative(xs, f):
    X = np.array([[complex(xs[0], xs[1]), xs[2]], [xs[3], -complex(xs[0], xs[1])]])
    t = 1e-6
    numeric = (act(expm_traceless(t * X), f).coeffs - act(expm_traceless(-t * X), f).coeffs) / (2 * t)
    assert np.allclose(lie_action_matrix(X, 3) @ f.coeffs, numeric, atol=1e-5)


@settings(max_examples=30, deadline=None)
@given(su2(), st.lists(st.tuples(floats, floats), min_size=3, max_size=3))
def test_rotate_roots_moves_roots(g, roots):
    rs = [complex(*r) for r in roots]
    f = BinaryForm(np.poly(rs))
    moved = rotate_roots(g, f)
    # a root [x:y] of f goes to g [x:y]
    for r in rs:
        v = g @ np.array([r, 1.0])
        v = v / np.linalg.norm(v)
        assert abs(poly_value(moved, *v)) <= 1e-8 * np.abs(moved.coeffs).max()


def test_expm_closed_form():
    for sigma in SIGMA.values():
        assert np.allclose(sigma @ sigma, -np.eye(2))
        t = 0.7
        assert np.allclose(expm_traceless(t * sigma), math.cos(t) * np.eye(2) + math.sin(t) * sigma)
    N = np.array([[0, 1], [0, 0]])
    assert np.allclose(expm_traceless(N), np.eye(2) + N)


# ---- the stabiliser and frames


def test_gamma_delta_is_the_stabiliser():
    elems = gamma_delta()
    assert len(elems) == 12
    mats = [g for g, _ in elems]
    for g in mats:
        assert np.allclose(g @ g.conj().T, np.eye(2))
        assert act(g, DELTA_STANDARD).projectively_equal(DELTA_STANDARD, 1e-12)
    for g, cg in elems:
        for h, ch in elems:
            gh = g @ h
            assert h1_class(gh) == (cg + ch) % 4


def test_h1_class_rejects_outsiders():
    with pytest.raises(ValueError):
        h1_class(expm_traceless(0.3 * SIGMA[2]))


def test_frame_rotation():
    g0 = frame_rotation()
    assert np.allclose(g0 @ g0.conj().T, np.eye(2))
    assert abs(np.linalg.det(g0) - 1) < 1e-12
    assert act(g0, DELTA_STANDARD).projectively_equal(configuration("delta"), 1e-12)


# ---- axial discs


@pytest.mark.parametrize("frame", ["standard", "printed"])
@pytest.mark.parametrize("kind,maslov,cls", [("maslov2", 2, 1), ("maslov4", 4, 2)])
def test_axial_disc(kind, maslov, cls, frame):
    d = axial_disc(kind, 1024, frame)
    w = maslov_via_winding(d, 1e-6)
    assert w.maslov == maslov
    assert abs(w.winding - maslov / 2) <= 1e-6
    assert boundary_moment_error(d) <= 1e-9
    assert loop_closes(d)
    assert h1_class(d.monodromy) == cls


def test_maslov4_lift_is_explicit():
    d = axial_disc("maslov4", 256)
    assert d.exponent_shift == pytest.approx(0.5)
    for t, f in d.boundary:
        assert np.allclose(f.coeffs, [1, 0, 0, -cmath.exp(1j * t)], atol=1e-12)


def test_disc_winding_is_stable_in_samples():
    for n in (256, 512, 2048):
        assert maslov_via_winding(axial_disc("maslov2", n)).maslov == 2


def test_disc_argument_errors():
    with pytest.raises(ValueError):
        axial_disc("maslov6")
    with pytest.raises(ValueError):
        axial_disc("maslov2", 100)
    with pytest.raises(ValueError):
        axial_disc("maslov2", 1024, "rotated")
    assert set(AXIAL) == {"maslov2", "maslov4"}


def test_constant_disc():
    w = maslov_via_winding(constant_disc())
    assert w.maslov == 0 and w.winding == 0


def test_winding_number():
    t = np.linspace(0, 2 * math.pi, 1025)
    assert winding_number(np.exp(-3j * t)) == pytest.approx(-3)
    with pytest.raises(ValueError):
        winding_number(np.exp(1j * t) - 1)
    with pytest.raises(ValueError):
        winding_number(np.exp(300j * t))


# ---- secant projection


@settings(max_examples=40, deadline=None)
@given(floats, floats, floats, floats)
def test_twisted_cubic_is_indeterminate(a, b, c, d):
    s, t = complex(a, b), complex(c, d)
    if abs(s) + abs(t) < 1e-2:
        s = 1.0
    p = secant_projection([s**3, s * s * t, s * t * t, t**3])
    assert p.indeterminate


def test_twisted_cubic_coordinates():
    f = BinaryForm([1, 3, 3, 1])  # (x + y)^3
    assert np.allclose(twisted_cubic_coordinates(f), [1, 1, 1, 1])
    assert secant_projection(twisted_cubic_coordinates(f)).indeterminate


def test_secant_of_maslov4_boundary_is_real():
    d = axial_disc("maslov4", 256)
    for f in d.forms:
        p = secant_projection(twisted_cubic_coordinates(f))
        assert not p.indeterminate
        assert realness_residual(p.point) <= 1e-12


def test_realness_residual():
    assert realness_residual(np.array([1j, 2j, -1j])) <= 1e-15
    assert realness_residual(np.array([1, 1j, 0])) > 0.1


# ---- torus intersection


def test_torus_intersection():
    res = torus_chiang_intersection()
    assert len(res.families) == 2
    assert res.perturbed_count == 4
    for f in res.families:
        assert f.residual <= 1e-10
        assert math.cos(f.theta1) == pytest.approx(-1 / math.sqrt(3), abs=1e-10)
        assert f.theta3 == pytest.approx(-f.theta1, abs=1e-10)


def test_intersection_points_lie_on_both():
    res = torus_chiang_intersection()
    for fam in res.families:
        for phi in (0.0, 0.4, 2.0):
            u = fam.point(phi)
            assert np.allclose(np.abs(u), 1)
            form = torus_point_form(fam, phi)
            assert moment_norm(form) <= 1e-10


def test_intersection_tolerance_is_respected():
    with pytest.raises(RuntimeError):
        torus_chiang_intersection(tol=0.0)


# ---- Maslov bookkeeping and case (b)


def test_bookkeeping():
    b = maslov_bookkeeping(4, 1, 3)
    assert b.mu_tilde_eq1 == 2 and b.mu_tilde_eq2 == 4
    assert not b.consistent
    b = maslov_bookkeeping(4, 0, 6)
    assert b.consistent
    assert isinstance(maslov_bookkeeping(2, 0, 1).mu_tilde_eq2, Fraction)


def test_case_b_certificate():
    c = case_b_contradiction()
    assert c.inconsistent
    assert (c.rank, c.augmented_rank) == (3, 4)
    for j in range(4):
        assert sum(y * row[j] for y, row in zip(c.certificate, CASE_B_MATRIX)) == 0
    assert sum(y * v for y, v in zip(c.certificate, CASE_B_RHS)) == c.certificate_value != 0


def test_case_b_consistent_system():
    c = case_b_contradiction(((1, 0), (0, 1)), (1, 1))
    assert not c.inconsistent
    assert c.certificate == ()


def test_module_tolerances_are_defaults():
    assert geom.RESIDUAL_TOL == 1e-10
    assert geom.WINDING_TOL == 1e-6
