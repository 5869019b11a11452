import math
import random

import pytest

from libknots.catalog import builtin
from libknots.diagram import (
    BraidWord,
    KnotDiagram,
    braid_closure,
    connect_sum,
    connect_sum_all,
    inverse,
    mirror,
    parse_diagram,
    parse_pd,
    pretzel,
)
from libknots.errors import MultiComponent
from libknots.exactalg import LaurentPoly
from libknots.invariants import (
    StepFunction,
    alexander,
    branched_cover_homology,
    determinant,
    max_abs_signature,
    min_generators,
    sample,
    signature,
    signature_at,
    signature_function,
    svg_plot,
    unit_roots,
)

TREFOIL = parse_pd("PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]")
FIGURE_EIGHT = parse_diagram("BR(3; 1 -2 1 -2)")
KNOT_8_20 = pretzel([3, -3, 2])
KNOT_9_46 = pretzel([3, 3, -3])


def _random_knots(seed: int, count: int) -> list[KnotDiagram]:
    rng = random.Random(seed)
    knots = []
    while len(knots) < count:
        strands = rng.choice((2, 3))
        length = rng.randint(1, 8)
        letters = tuple(rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length))
        try:
            knots.append(braid_closure(BraidWord(strands=strands, letters=letters)))
        except MultiComponent:
            continue
    return knots


def _midpoints(*steps: StepFunction) -> list[float]:
    edges = sorted({0.0, 2 * math.pi, *(b for step in steps for b in step.breakpoints)})
    return [(a + b) / 2 for a, b in zip(edges, edges[1:]) if b - a > 1e-9]


def test_trefoil():
    assert determinant(TREFOIL) == 3
    assert signature(TREFOIL) == -2
    assert alexander(TREFOIL) == LaurentPoly.symmetric([1, -1, 1])
    assert branched_cover_homology(TREFOIL).invariant_factors == (3,)
    assert str(branched_cover_homology(TREFOIL)) == "Z/3"
    assert min_generators(TREFOIL) == 1

    step = signature_function(TREFOIL)
    assert step.breakpoints == pytest.approx((math.pi / 3, 5 * math.pi / 3))
    assert step.values == (0, -2, 0)
    assert step.jumps == (-1, -1)
    assert step.max_abs() == 2


def test_unknot():
    K = KnotDiagram.unknot()
    assert determinant(K) == 1
    assert signature(K) == 0
    assert alexander(K) == LaurentPoly.one()
    assert branched_cover_homology(K).order == 1
    assert str(branched_cover_homology(K)) == "0"
    assert signature_function(K) == StepFunction()
    assert max_abs_signature(K) == 0


def test_figure_eight():
    assert determinant(FIGURE_EIGHT) == 5
    assert signature(FIGURE_EIGHT) == 0
    assert unit_roots(FIGURE_EIGHT) == []
    assert max_abs_signature(FIGURE_EIGHT) == 0


def test_8_20_needs_the_value_at_the_root():
    step = signature_function(KNOT_8_20)
    assert all(value == 0 for value in step.values)
    assert [abs(j) for j in step.jumps] == [1, 1]
    assert max_abs_signature(KNOT_8_20) == 1


def test_9_46_homology():
    homology = branched_cover_homology(KNOT_9_46)
    assert homology.invariant_factors == (3, 3)
    assert homology.order == determinant(KNOT_9_46) == 9
    assert max_abs_signature(KNOT_9_46) == 0


def test_signature_additivity():
    knots = _random_knots(seed=11, count=100)
    for K1, K2 in zip(knots[::2], knots[1::2]):
        s1, s2 = signature_function(K1), signature_function(K2)
        s = signature_function(connect_sum(K1, K2))
        for theta in _midpoints(s1, s2, s):
            assert signature_at(s, theta) == signature_at(s1, theta) + signature_at(s2, theta)


def test_mirror_antisymmetry_and_inverse_cancellation():
    for K in _random_knots(seed=5, count=50):
        assert signature_function(mirror(K)) == -signature_function(K)
        cancelled = connect_sum(K, inverse(K))
        assert max_abs_signature(cancelled) == 0
        assert determinant(cancelled) == determinant(K) ** 2


def test_connect_sum_of_8_20():
    for n in (1, 2, 3):
        assert max_abs_signature(connect_sum_all([KNOT_8_20] * n)) == n


def test_constant_between_roots():
    for entry in builtin():
        K = entry.knot()
        step = signature_function(K)
        for start, end, value in step.intervals():
            for k in range(1, 17):
                theta = start + (end - start) * k / 17
                assert sample(K, theta) == value


def test_consistency_with_determinant():
    for entry in builtin():
        K = entry.knot()
        det = determinant(K)
        assert abs(alexander(K)(-1)) == det
        assert branched_cover_homology(K).order == det


def test_signature_at():
    step = signature_function(TREFOIL)
    assert signature_at(step, math.pi) == signature(TREFOIL)
    assert signature_at(step, math.pi / 3) == -1
    assert signature_at(step, 0.1) == 0
    assert signature_at(step, -0.1) == 0


def test_step_function_csv_and_plot():
    step = signature_function(TREFOIL)
    rows = step.to_csv().splitlines()
    assert rows[0] == "theta_start,theta_end,value"
    assert len(rows) == 4
    assert rows[2].endswith(",-2")

    svg = svg_plot(step)
    assert "<svg" in svg
