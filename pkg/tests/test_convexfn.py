from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tropicon import (
    BOTTOM,
    ONE,
    TOP,
    DiffAffine,
    EpiSet,
    Hull,
    PointOnEpigraph,
    SeparationFailed,
    Vector,
    contains,
    convexity_check,
    epi_project,
    evaluate,
    hull_eval,
    hull_from_supports,
    level_hyperplane,
    meet,
    oplus,
    otimes,
    probes_below,
    scalar,
    supporting_function,
    vector,
    vlres,
)
from tropicon.convexfn import _normalize, _supporting_function
from tropicon.plot import GALLERY

RELU = EpiSet([(vector([0]), scalar(0)), (vector([2]), scalar(2)), (vector([-5]), scalar(0))])


def pt(*x):
    return vector(list(x))


def coeffs(u):
    return ([str(a) for a in u.w_prime], str(u.d_prime), [str(a) for a in u.w_second], str(u.d_second))


# -- oracles ----------------------------------------------------------------------

def ray_oracle(E, y, nu, reach=40):
    """nu and Q by scanning points (z_j, lam_j + t) of the epigraph, t = 0..reach."""
    yb = y.extend(nu)
    best_nu, best_q = BOTTOM, Vector([BOTTOM] * len(yb))
    for z, lam in E.graph_points:
        for t in range(reach + 1):
            v = z.extend(otimes(lam, scalar(t)))
            c = meet(vlres(v, yb), ONE)
            best_nu = oplus(best_nu, c)
            best_q = Vector([oplus(a, otimes(b, c)) for a, b in zip(best_q, v)])
    return best_q, best_nu


def value_oracle(E, weights=range(-12, 1)):
    """min lam over integer weight vectors with maximum 0, keyed by the combined point."""
    table = {}
    options = [BOTTOM] + [scalar(w) for w in weights]
    for ws in product(options, repeat=len(E.graph_points)):
        if max(ws) != ONE:
            continue
        x = Vector([BOTTOM] * E.n)
        lam = BOTTOM
        for (z, l), w in zip(E.graph_points, ws):
            x = Vector([oplus(a, otimes(b, w)) for a, b in zip(x, z)])
            lam = oplus(lam, otimes(l, w))
        if x not in table or lam < table[x]:
            table[x] = lam
    return table


def epigraphs(n=1, max_points=3, lo=-5, hi=5):
    coord = st.one_of(st.integers(lo, hi).map(scalar), st.just(BOTTOM)) if n > 1 else st.integers(lo, hi).map(scalar)
    point = st.tuples(st.lists(coord, min_size=n, max_size=n).map(Vector), st.integers(lo, hi).map(scalar))
    return st.lists(point, min_size=1, max_size=max_points).map(EpiSet)


# -- epigraph projection -------------------------------------------------------------

def test_epigraph_projection_example():
    r = epi_project(RELU, pt(0), scalar(-1))
    assert r.q == pt(-1, -1)
    assert r.nu == scalar(-1)
    assert (r.q, r.nu) == ray_oracle(RELU, pt(0), scalar(-1))


def test_point_above_the_graph_is_in_the_upper_set():
    assert epi_project(RELU, pt(0), scalar(3)).nu == ONE


def test_far_point_has_subunit_nu():
    assert epi_project(RELU, pt(-10), scalar(-10)).nu < ONE


@given(epigraphs(), st.integers(-8, 8), st.integers(-8, 8))
def test_epigraph_projection_matches_ray_scan_1d(E, y, nu):
    r = epi_project(E, pt(y), scalar(nu))
    assert (r.q, r.nu) == ray_oracle(E, pt(y), scalar(nu))


@given(epigraphs(n=2), st.tuples(st.integers(-6, 6), st.integers(-6, 6)), st.integers(-8, 8))
def test_epigraph_projection_matches_ray_scan_2d(E, y, nu):
    r = epi_project(E, pt(*y), scalar(nu))
    assert (r.q, r.nu) == ray_oracle(E, pt(*y), scalar(nu))


# -- induced function -------------------------------------------------------------------

def test_induced_function_of_relu_samples():
    for x in range(-5, 3):
        assert RELU.value(pt(x)) == scalar(max(x, 0))
    for x in (-6, 3, "-inf"):
        assert RELU.value(pt(x)) == TOP


@given(epigraphs(max_points=3))
def test_induced_function_matches_weight_enumeration(E):
    table = value_oracle(E)
    for x in range(-5, 6):
        assert E.value(pt(x)) == table.get(pt(x), TOP)


@given(epigraphs(), st.integers(-6, 6), st.integers(-8, 8))
def test_epigraph_is_upward_closed(E, x, lam):
    if E.contains(pt(x), scalar(lam)):
        assert E.contains(pt(x), scalar(lam + 3))
        assert E.value(pt(x)) <= scalar(lam)


# -- supporting functions ---------------------------------------------------------------

def test_supporting_function_example():
    u = supporting_function(RELU, pt(0), scalar(-1))
    assert coeffs(u) == (["0"], "0", ["-1"], "-1")
    assert evaluate(u, pt(0)) == scalar(0)
    for z, lam in RELU.graph_points:
        assert evaluate(u, z) == lam


def test_supporting_function_far_below():
    u = supporting_function(RELU, pt(2), scalar(-5))
    assert not evaluate(u, pt(2)) <= scalar(-5)
    assert all(evaluate(u, z) <= lam for z, lam in RELU.graph_points)


def test_supporting_function_outside_the_domain():
    E = EpiSet([(pt(0, 0), scalar(0)), (pt(2, 1), scalar(3))])
    y, nu = pt(0, "-inf"), scalar(4)
    assert E.value(y) == TOP
    u, trace = _supporting_function(E, y, nu)
    # the ray generator covers the value coordinate, so mu is finite here
    assert trace["branch"] == "normalized"
    assert evaluate(u, y) > nu
    assert all(evaluate(u, z) <= lam for z, lam in E.graph_points)


@pytest.mark.parametrize("nu, alpha", [(scalar(4), scalar(5)), (BOTTOM, ONE)])
def test_zero_value_coefficient_is_rescaled_above_nu(nu, alpha):
    u0 = DiffAffine(pt(0, 0), BOTTOM, pt("-inf", 0), BOTTOM)
    y = pt(0, "-inf")
    u, branch, a = _normalize(u0, BOTTOM, y, nu)
    assert branch == "scaled" and a == alpha
    assert evaluate(u, y) > nu


def test_degenerate_rescaling_fails_loudly():
    u0 = DiffAffine(pt(0, 0), BOTTOM, pt(0, 0), BOTTOM)
    with pytest.raises(SeparationFailed):
        _normalize(u0, BOTTOM, pt(0, "-inf"), scalar(1))


def test_points_on_the_epigraph_are_refused():
    with pytest.raises(PointOnEpigraph):
        supporting_function(RELU, pt(0), scalar(0))


@given(st.integers(1, 2).flatmap(lambda n: st.tuples(epigraphs(n=n, max_points=4),
                                                     st.lists(st.one_of(st.integers(-7, 7).map(scalar), st.just(BOTTOM)),
                                                              min_size=n, max_size=n),
                                                     st.one_of(st.integers(-9, 9).map(scalar), st.just(BOTTOM)))))
def test_supporting_function_contract(inst):
    E, y, nu = inst
    y = Vector(y)
    assume(not E.contains(y, nu))
    u, trace = _supporting_function(E, y, nu)
    assert not evaluate(u, y) <= nu
    assert all(evaluate(u, z) <= lam for z, lam in E.graph_points)


# -- hulls ------------------------------------------------------------------------------

GRID = [Fraction(-6) + Fraction(k, 4) for k in range(41)]


def test_hull_from_probes_reproduces_relu():
    probes = probes_below(RELU, [pt(x) for x in (-5, -2, 0, 1, 2)])
    assert [str(nu) for _, nu in probes] == ["-1", "-1", "-1", "0", "1"]
    F = hull_from_supports(RELU, probes)
    for x in GRID:
        assert hull_eval(F, pt(x)) == scalar(max(x, 0))


def test_hull_is_a_lower_bound_and_monotone_in_probes():
    xs = [pt(x) for x in (-5, -2, 0, 1, 2)]
    small = hull_from_supports(RELU, probes_below(RELU, xs[:1]))
    big = hull_from_supports(RELU, probes_below(RELU, xs))
    for x in GRID:
        assert hull_eval(small, pt(x)) <= hull_eval(big, pt(x)) <= RELU.value(pt(x))


def test_empty_hull_is_bottom():
    assert hull_eval(Hull([]), pt(3)) == BOTTOM
    assert hull_from_supports(RELU, []).pieces == ()


def test_hull_of_the_gallery_shapes_is_their_pointwise_max():
    pieces = [DiffAffine(pt(a), scalar(b), pt(c), scalar(d)) for a, b, c, d in GALLERY.values()]
    F = Hull(pieces)
    for x in GRID:
        assert hull_eval(F, pt(x)) == max(evaluate(u, pt(x)) for u in pieces)
    assert F(pt(0)) == hull_eval(F, pt(0))


@given(epigraphs(max_points=3), st.integers(-6, 6))
def test_hull_level_sets_are_hyperplane_intersections(E, t):
    F = hull_from_supports(E, probes_below(E, [pt(x) for x in range(-5, 6)]))
    for x in range(-6, 7):
        inside = hull_eval(F, pt(x)) <= scalar(t)
        assert inside == all(contains(level_hyperplane(u, scalar(t)), pt(x)) for u in F.pieces)


# -- convexity check ----------------------------------------------------------------------

def exhaustive_violation(samples):
    pts = dict(samples)
    for (x1, f1), (x2, f2) in product(samples, repeat=2):
        for a, b in product([BOTTOM] + [scalar(w) for w in range(-4, 1)], repeat=2):
            if oplus(a, b) != ONE:
                continue
            x = Vector([oplus(otimes(p, a), otimes(q, b)) for p, q in zip(x1, x2)])
            if x in pts and not pts[x] <= oplus(otimes(f1, a), otimes(f2, b)):
                return True
    return False


def test_max_is_convex():
    samples = [(pt(x), scalar(max(x, 0))) for x in range(-4, 5)]
    assert convexity_check(samples, trials=None)
    assert not exhaustive_violation(samples)


def test_min_is_not_convex():
    samples = [(pt(x), scalar(min(x, 0))) for x in (-1, 0, 1)]
    report = convexity_check(samples, trials=None)
    assert not report
    w = report.witness
    assert exhaustive_violation(samples)
    x = Vector([oplus(otimes(p, w["alpha"]), otimes(q, w["beta"])) for p, q in zip(w["x1"], w["x2"])])
    assert x == w["x"]
    assert not w["f(x)"] <= w["bound"]


def test_single_sample_is_vacuously_convex():
    assert convexity_check([(pt(0), scalar(1))])


@settings(max_examples=30)
@given(epigraphs(max_points=3))
def test_induced_functions_pass_the_convexity_check(E):
    samples = [(pt(x), E.value(pt(x))) for x in range(-5, 6)]
    assert convexity_check(samples, trials=None)
