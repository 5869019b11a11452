import math
import random

import pytest

from libknots.bounds import (
    CHEN,
    ORSON_POWELL,
    STABILIZATION_AS_STATED,
    bound_report,
    eq_gds_lower,
    eq_gds_lower_directed,
    eq_gss_lower,
    eq_stab_lower,
    gds_lower,
    gss_lower,
    stab_lower,
)
from libknots.diagram import BraidWord, KnotDiagram, braid_closure, connect_sum, connect_sum_all, parse_pd, pretzel
from libknots.errors import MalformedInput, MultiComponent
from libknots.invariants import signature_at, signature_function
from libknots.symmetric import DirectedSIKnot, SymmetricDiagram, build_Kn, equivariant_double, full_diagram

TREFOIL = parse_pd("PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]")
KNOT_8_20 = pretzel([3, -3, 2])
KNOT_9_46 = pretzel([3, 3, -3])


def test_classical_bounds_of_the_trefoil():
    assert gds_lower(TREFOIL) == 2
    assert gss_lower(TREFOIL) == 2
    assert stab_lower(TREFOIL, 0) == 1
    assert stab_lower(TREFOIL, 3) == 0


def test_unknot_has_no_obstruction():
    K = KnotDiagram.unknot()
    assert gds_lower(K) == 0
    assert gss_lower(K, even=True) == 0
    assert stab_lower(K, 0) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sums_of_8_20(n):
    assert gds_lower(connect_sum_all([KNOT_8_20] * n)) == n


@pytest.mark.parametrize("m", [1, 2, 3])
def test_sums_of_9_46(m):
    K = connect_sum_all([KNOT_9_46] * m)
    assert gds_lower(K) == 0
    assert gss_lower(K) == 2 * m
    assert stab_lower(K, 0) == m
    assert stab_lower(K, 0, as_stated=True) == 2 * m


def test_even_rounding():
    assert gss_lower(KNOT_8_20) == 1
    assert gss_lower(KNOT_8_20, even=True) == 2


def test_negative_genus_is_rejected():
    with pytest.raises(MalformedInput):
        stab_lower(TREFOIL, -1)


def test_report_for_a_knot():
    report = bound_report(KNOT_9_46)
    assert report.gss_lower.value == 2
    assert report.gss_lower.theorem == CHEN
    assert report.gds_lower.theorem == ORSON_POWELL
    assert report.stab_lower.value == 1
    assert report.eq_gds_lower is None
    assert report.half_axis is None

    stated = bound_report(KNOT_9_46, h=1, as_stated=True)
    assert stated.stab_lower.value == 1
    assert stated.stab_lower.theorem == STABILIZATION_AS_STATED


@pytest.mark.parametrize("n", [1, 2])
def test_Kn_is_double_slice_but_not_equivariantly(n):
    k = build_Kn(n)
    assert gds_lower(full_diagram(k.diagram)) == 0
    assert eq_gds_lower(k.diagram) == n
    for half_axis in ("h0", "h1"):
        assert eq_gds_lower_directed(k.model_copy(update={"half_axis": half_axis})) >= n


def test_equivariant_bounds_of_a_double():
    k = equivariant_double(TREFOIL)
    assert eq_gds_lower(k.diagram) == 4
    assert eq_gss_lower(k.diagram) == 4
    assert eq_stab_lower(k.diagram, 0) == 2

    trivial = DirectedSIKnot(diagram=SymmetricDiagram.trivial())
    assert eq_gds_lower(trivial.diagram) == 0

    report = bound_report(k, h=0)
    assert report.half_axis == "h0"
    assert report.eq_gds_lower.value == 4
    assert report.eq_gds_lower_directed.value == 4
    assert report.eq_stab_lower.value == 2


def _random_knots(seed: int, count: int) -> list[KnotDiagram]:
    rng = random.Random(seed)
    knots = []
    while len(knots) < count:
        strands = rng.choice((2, 3))
        letters = tuple(rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, 8)))
        try:
            knots.append(braid_closure(BraidWord(strands=strands, letters=letters)))
        except MultiComponent:
            continue
    return knots


def test_bounds_do_not_drop_under_connect_sum():
    # K1 # -K1 has no signature obstruction, so only pairs whose signature
    # functions never take opposite signs are compared
    checked = 0
    knots = _random_knots(seed=17, count=40)
    for K1, K2 in zip(knots[::2], knots[1::2]):
        s1, s2 = signature_function(K1), signature_function(K2)
        edges = sorted({0.0, 2 * math.pi, *s1.breakpoints, *s2.breakpoints})
        thetas = [(a + b) / 2 for a, b in zip(edges, edges[1:])] + edges[1:-1]
        if any(signature_at(s1, t) * signature_at(s2, t) < 0 for t in thetas):
            continue
        K = connect_sum(K1, K2)
        for bound in (gds_lower, gss_lower, lambda k: stab_lower(k, 0)):
            assert bound(K) >= max(bound(K1), bound(K2))
        checked += 1
    assert checked >= 5
