import random

import pytest

from libknots.catalog import builtin
from libknots.diagram import BraidWord, KnotDiagram, braid_closure, connect_sum, parse_diagram, parse_pd
from libknots.errors import FixedPointCount, MalformedInput, MultiComponent, PairingError
from libknots.exactalg import LaurentPoly
from libknots.invariants import alexander, determinant, signature, signature_function
from libknots.symmetric import (
    DirectedSIKnot,
    SymmetricDiagram,
    antipode,
    build_Kn,
    equivariant_connect_sum,
    equivariant_double,
    full_diagram,
    half_knot,
    half_knots,
    is_normal_position,
    mirror_symmetric,
    parse_symmetric,
    rho_flip,
    upward,
)

TREFOIL = parse_pd("PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]")
FIGURE_EIGHT = parse_diagram("BR(3; 1 -2 1 -2)")
DELTA_TREFOIL = LaurentPoly.symmetric([1, -1, 1])


def _seed() -> SymmetricDiagram:
    return builtin().require("8_20_tau").symmetric


def _random_symmetric(seed: int, count: int) -> list[DirectedSIKnot]:
    rng = random.Random(seed)
    pool = [DirectedSIKnot(diagram=_seed()), DirectedSIKnot(diagram=mirror_symmetric(_seed()))]
    while len(pool) < 6:
        letters = tuple(rng.choice((1, -1)) * rng.randint(1, 2) for _ in range(rng.randint(2, 6)))
        try:
            pool.append(equivariant_double(braid_closure(BraidWord(strands=3, letters=letters))))
        except MultiComponent:
            continue
    return [equivariant_connect_sum(rng.choice(pool), rng.choice(pool)) for _ in range(count)]


def _same_invariants(K1: KnotDiagram, K2: KnotDiagram) -> bool:
    return (
        alexander(K1) == alexander(K2)
        and determinant(K1) == determinant(K2)
        and signature_function(K1) == signature_function(K2)
    )


def test_parse_and_serialize():
    d = _seed()
    assert parse_symmetric(d.serialize()) == d.model_copy(update={"name": None})
    assert len(d.half_tangle) == 3
    assert [point.kind for point in d.axis_points] == ["T", "F", "F", "T"]


def test_parse_errors():
    with pytest.raises(MalformedInput):
        parse_symmetric("SYM[X(1,2,3,4)")
    with pytest.raises(MalformedInput):
        parse_symmetric("SYM[X(1,2,3,4) | Q(1)]")
    with pytest.raises(FixedPointCount):
        parse_symmetric("SYM[X(1,2,3,4) | F(1)]")
    with pytest.raises(PairingError):
        parse_symmetric("SYM[X(1,2,3,3) | F(1) F(4)]")


def test_8_20_tau_is_8_20():
    d = _seed()
    K = full_diagram(d)
    assert K.crossing_count == 8
    assert alexander(K) == DELTA_TREFOIL * DELTA_TREFOIL
    assert determinant(K) == 9
    assert not is_normal_position(d)


def test_half_knot_of_the_trivial_diagram():
    k = DirectedSIKnot(diagram=SymmetricDiagram.trivial())
    assert full_diagram(k.diagram).crossing_count == 0
    for K in half_knots(k):
        assert K.crossing_count == 0
    assert half_knot(k, arc=2).crossing_count == 0


def test_half_knot_arc_choice():
    with pytest.raises(MalformedInput):
        half_knot(DirectedSIKnot(diagram=_seed()), arc=3)


def test_equivariant_double():
    k = equivariant_double(TREFOIL)
    K = full_diagram(k.diagram)
    assert K.crossing_count == 6
    assert alexander(K) == DELTA_TREFOIL * DELTA_TREFOIL
    assert signature(K) == 2 * signature(TREFOIL)
    for half in half_knots(k):
        assert alexander(half) == DELTA_TREFOIL
        assert determinant(half) == 3

    assert equivariant_double(KnotDiagram.unknot()).diagram == SymmetricDiagram.trivial()


@pytest.mark.parametrize("half_axis", ["h0", "h1"])
def test_half_knot_is_independent_of_the_arc(half_axis):
    for k in (
        equivariant_double(TREFOIL),
        build_Kn(1),
        DirectedSIKnot(diagram=SymmetricDiagram.trivial()),
    ):
        k = k.model_copy(update={"half_axis": half_axis})
        assert _same_invariants(half_knot(k, arc=1), half_knot(k, arc=2))


def test_rho_flip_and_direction():
    d = equivariant_double(TREFOIL).diagram
    assert rho_flip(rho_flip(d)) == d
    assert alexander(full_diagram(rho_flip(d))) == alexander(full_diagram(d))

    k = DirectedSIKnot(diagram=d, direction="down")
    assert upward(k).direction == "up"
    assert upward(upward(k)) == upward(k)
    assert antipode(k).half_axis == "h1"
    assert antipode(antipode(k)) == k


def test_mirror_symmetric():
    d = equivariant_double(TREFOIL).diagram
    assert signature(full_diagram(mirror_symmetric(d))) == 4
    assert signature(full_diagram(mirror_symmetric(mirror_symmetric(d)))) == -4

    seed = _seed()
    assert alexander(full_diagram(mirror_symmetric(seed))) == alexander(full_diagram(seed))


def test_equivariant_connect_sum():
    k = equivariant_double(TREFOIL)
    s = equivariant_connect_sum(k, k)
    assert s.half_axis == "h0" and s.direction == "up"
    K = full_diagram(s.diagram)
    assert K.crossing_count == 12
    assert alexander(K) == DELTA_TREFOIL * DELTA_TREFOIL * DELTA_TREFOIL * DELTA_TREFOIL
    assert signature(K) == -8


def test_build_Kn():
    k = build_Kn(1)
    assert k.diagram.name == "K_1"
    K = full_diagram(k.diagram)
    assert K.crossing_count == 32
    delta = alexander(full_diagram(_seed()))
    assert alexander(K) == delta * delta * delta * delta
    assert build_Kn(1, seed=_seed()) == k
    with pytest.raises(MalformedInput):
        build_Kn(0)


def test_half_knot_of_random_sums_is_independent_of_the_arc():
    for k in _random_symmetric(seed=3, count=5):
        for half_axis in ("h0", "h1"):
            k = k.model_copy(update={"half_axis": half_axis})
            assert _same_invariants(half_knot(k, arc=1), half_knot(k, arc=2))


def test_half_knot_of_an_equivariant_sum():
    seed = DirectedSIKnot(diagram=_seed())
    for k1, k2 in (
        (equivariant_double(TREFOIL), seed),
        (seed, equivariant_double(FIGURE_EIGHT)),
        (equivariant_double(TREFOIL), equivariant_double(FIGURE_EIGHT)),
    ):
        s = equivariant_connect_sum(k1, k2)
        assert _same_invariants(half_knot(s), connect_sum(half_knot(k1), half_knot(k2)))


def test_equivariant_connect_sum_is_associative():
    k1 = equivariant_double(TREFOIL)
    k2 = DirectedSIKnot(diagram=_seed())
    k3 = equivariant_double(FIGURE_EIGHT)
    left = equivariant_connect_sum(equivariant_connect_sum(k1, k2), k3)
    right = equivariant_connect_sum(k1, equivariant_connect_sum(k2, k3))
    assert _same_invariants(full_diagram(left.diagram), full_diagram(right.diagram))
    for a, b in zip(half_knots(left), half_knots(right)):
        assert _same_invariants(a, b)
