"""Lower bounds on double-slice, super-slice and stabilization distances.

Every value is a lower bound. Stabilization bounds are clamped at 0 and may be
half-integers before clamping; all other bounds are integers.
"""

from pydantic import BaseModel, ConfigDict

from libknots.diagram import KnotDiagram
from libknots.errors import MalformedInput
from libknots.invariants import max_abs_signature, min_generators
from libknots.symmetric import DirectedSIKnot, SymmetricDiagram, full_diagram, half_knot
from libknots.util import logger

ORSON_POWELL = "Orson-Powell"
CHEN = "Chen"
HALF_AXIS = "half-axis (min over h0, h1)"
DIRECTED = "directed half-axis"
STABILIZATION = "stabilization distance >= g_ss/2 - h"
STABILIZATION_AS_STATED = "stabilization distance >= g_ss - h (as stated)"


# --- models ---
class Bound(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: int | float
    theorem: str
    source: str

    def __int__(self) -> int:
        return int(self.value)


class BoundReport(BaseModel):
    gds_lower: Bound
    gss_lower: Bound
    stab_lower: Bound
    eq_gds_lower: Bound | None = None
    eq_gds_lower_directed: Bound | None = None
    eq_gss_lower: Bound | None = None
    eq_gss_lower_directed: Bound | None = None
    eq_stab_lower: Bound | None = None
    h: int = 0
    half_axis: str | None = None


def _even(value: int) -> int:
    return value + value % 2


# --- classical bounds ---
def gds_lower(K: KnotDiagram) -> int:
    return max_abs_signature(K)


def gss_lower(K: KnotDiagram, even: bool = False) -> int:
    value = max(min_generators(K), gds_lower(K))
    return _even(value) if even else value


def _gss_bound(K: KnotDiagram, even: bool) -> Bound:
    generators, gds = min_generators(K), gds_lower(K)
    value = max(generators, gds)
    return Bound(
        value=_even(value) if even else value,
        theorem=CHEN if generators >= gds else ORSON_POWELL,
        source="min generators of H1(double branched cover)" if generators >= gds else "max |signature|",
    )


def _stab(gss: int, h: int, as_stated: bool) -> float:
    if h < 0:
        raise MalformedInput(f"surface genus must be nonnegative, got {h}", h=h)
    if as_stated:
        logger.warning(
            "Using the stronger stabilization bound g_ss - h, which is not what the proof establishes"
        )
        return float(max(0, gss - h))
    return max(0.0, gss / 2 - h)


def stab_lower(K: KnotDiagram, h: int, even: bool = False, as_stated: bool = False) -> float:
    return _stab(gss_lower(K, even), h, as_stated)


# --- equivariant bounds ---
def _half(d: SymmetricDiagram, half_axis: str) -> KnotDiagram:
    return half_knot(DirectedSIKnot(diagram=d, half_axis=half_axis))


def eq_gds_lower_directed(k: DirectedSIKnot) -> int:
    return max(gds_lower(full_diagram(k.diagram)), gds_lower(half_knot(k)))


def eq_gds_lower(d: SymmetricDiagram) -> int:
    halves = min(gds_lower(_half(d, "h0")), gds_lower(_half(d, "h1")))
    return max(gds_lower(full_diagram(d)), halves)


def eq_gss_lower_directed(k: DirectedSIKnot, even: bool = False) -> int:
    return max(gss_lower(full_diagram(k.diagram), even), gss_lower(half_knot(k), even))


def eq_gss_lower(d: SymmetricDiagram, even: bool = False) -> int:
    halves = min(gss_lower(_half(d, "h0"), even), gss_lower(_half(d, "h1"), even))
    return max(gss_lower(full_diagram(d), even), halves)


def eq_stab_lower(
    d: SymmetricDiagram, h: int, even: bool = False, as_stated: bool = False
) -> float:
    return _stab(eq_gss_lower(d, even), h, as_stated)


# --- reports ---
def bound_report(
    target: KnotDiagram | DirectedSIKnot,
    h: int = 0,
    even: bool = False,
    as_stated: bool = False,
) -> BoundReport:
    """All bounds that apply to *target*; equivariant ones only for symmetric input."""
    k = target if isinstance(target, DirectedSIKnot) else None
    K = full_diagram(k.diagram) if k else target

    gds = gds_lower(K)
    gss = _gss_bound(K, even)
    stab_theorem = STABILIZATION_AS_STATED if as_stated else STABILIZATION
    report = BoundReport(
        gds_lower=Bound(value=gds, theorem=ORSON_POWELL, source="max |signature|"),
        gss_lower=gss,
        stab_lower=Bound(
            value=_stab(int(gss.value), h, as_stated), theorem=stab_theorem, source="gss_lower"
        ),
        h=h,
    )
    if k is None:
        return report

    halves = {axis: _half(k.diagram, axis) for axis in ("h0", "h1")}
    half_gds = {axis: gds_lower(K0) for axis, K0 in halves.items()}
    half_gss = {axis: gss_lower(K0, even) for axis, K0 in halves.items()}
    logger.debug(f"Half-axis bounds: g_ds {half_gds}, g_ss {half_gss}")

    eq_gds = max(gds, min(half_gds.values()))
    eq_gss = max(int(gss.value), min(half_gss.values()))
    report.eq_gds_lower = Bound(value=eq_gds, theorem=HALF_AXIS, source="gds_lower of half-axis knots")
    report.eq_gds_lower_directed = Bound(
        value=max(gds, half_gds[k.half_axis]), theorem=DIRECTED, source=f"gds_lower of {k.half_axis} knot"
    )
    report.eq_gss_lower = Bound(value=eq_gss, theorem=HALF_AXIS, source="gss_lower of half-axis knots")
    report.eq_gss_lower_directed = Bound(
        value=max(int(gss.value), half_gss[k.half_axis]),
        theorem=DIRECTED,
        source=f"gss_lower of {k.half_axis} knot",
    )
    report.eq_stab_lower = Bound(
        value=_stab(eq_gss, h, as_stated), theorem=stab_theorem, source="eq_gss_lower"
    )
    report.half_axis = k.half_axis
    return report
