import io
import math
from fractions import Fraction
from functools import lru_cache

from matplotlib.figure import Figure
from pydantic import BaseModel, ConfigDict

from libknots.config import settings
from libknots.diagram import KnotDiagram
from libknots.errors import NearSingular, SamplingError
from libknots.exactalg import (
    IntMatrix,
    LaurentPoly,
    UnitRoot,
    alexander_from_seifert,
    det_exact,
    hermitian_signature,
    hermitian_signature_at_root,
    isolate_unit_roots,
    signature_at_cos,
    smith_normal_form,
)
from libknots.seifert import seifert_matrix
from libknots.util import logger

TWO_PI = 2 * math.pi


# --- models ---
class StepFunction(BaseModel):
    """Signature function on (0, 2pi).

    ``values[i]`` holds on the open interval ending at ``breakpoints[i]``
    (the last one runs up to 2pi) and ``jumps[i]`` is the value at
    ``breakpoints[i]`` itself.
    """

    model_config = ConfigDict(frozen=True)

    breakpoints: tuple[float, ...] = ()
    values: tuple[int, ...] = (0,)
    jumps: tuple[int, ...] = ()

    def intervals(self) -> list[tuple[float, float, int]]:
        edges = [0.0, *self.breakpoints, TWO_PI]
        return [(edges[i], edges[i + 1], v) for i, v in enumerate(self.values)]

    def max_abs(self) -> int:
        return max(abs(v) for v in (*self.values, *self.jumps))

    def __neg__(self) -> "StepFunction":
        return StepFunction(
            breakpoints=self.breakpoints,
            values=tuple(-v for v in self.values),
            jumps=tuple(-v for v in self.jumps),
        )

    def to_csv(self) -> str:
        rows = ["theta_start,theta_end,value"]
        rows += [f"{a:.12f},{b:.12f},{v}" for a, b, v in self.intervals()]
        return "\n".join(rows) + "\n"


class HomologyGroup(BaseModel):
    """Finite abelian group by its nontrivial invariant factors."""

    model_config = ConfigDict(frozen=True)

    invariant_factors: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


# --- Seifert form ---
@lru_cache(maxsize=256)
def _seifert_form(K: KnotDiagram) -> tuple[tuple[int, ...], ...]:
    # S-equivalence invariants do not need det(V) != 0
    return tuple(tuple(row) for row in seifert_matrix(K).entries)


def seifert_form(K: KnotDiagram) -> IntMatrix:
    """Seifert matrix of K on its canonical surface (a fresh copy, safe to modify)."""
    return [list(row) for row in _seifert_form(K)]


def _symmetrised(V: IntMatrix) -> IntMatrix:
    return [[V[i][j] + V[j][i] for j in range(len(V))] for i in range(len(V))]


# --- signature function ---
def _simple_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational with small power-of-two denominator strictly inside (lo, hi)."""
    denominator = 1
    while True:
        candidate = Fraction(math.floor(lo * denominator) + 1, denominator)
        if candidate < hi:
            return candidate
        denominator *= 2


def _interval_value(V: IntMatrix, lo: Fraction, hi: Fraction) -> int:
    """Signature at cos(theta) = x/2 for x strictly inside (lo, hi)."""
    windows = [(Fraction(1, 4), Fraction(3, 4))]
    for k in range(settings.numerics.resampleAttempts):
        # shrinking windows alternately near either end of the interval
        width = Fraction(1, 2 ** (k + 3))
        start = width if k % 2 == 0 else 1 - 2 * width
        windows.append((start, start + width))

    last_error = None
    for a, b in windows:
        x = _simple_between(lo + (hi - lo) * a, lo + (hi - lo) * b)
        try:
            return signature_at_cos(V, x / 2)
        except NearSingular as e:
            logger.debug(f"Re-sampling near x={float(x):.6f}: {e.message}")
            last_error = e
    raise SamplingError(
        f"every sample in ({float(lo):.9f}, {float(hi):.9f}) is singular",
        lo=str(lo),
        hi=str(hi),
        cause=last_error.to_dict() if last_error else None,
    )


def signature_function_from_matrix(V: IntMatrix) -> StepFunction:
    if not V:
        return StepFunction()
    delta = alexander_from_seifert(V)
    roots = isolate_unit_roots(delta)

    # x = 2 cos(theta) runs from 2 down to -2 as theta runs over (0, pi]
    upper = [Fraction(2)] + [root.lo for root in roots]
    lower = [root.hi for root in roots] + [Fraction(-2)]
    half = []
    for k, (hi, lo) in enumerate(zip(upper, lower)):
        if k == len(roots):
            # the interval around pi is sampled at pi itself
            half.append(signature_at_cos(V, Fraction(-1)))
        else:
            half.append(_interval_value(V, lo, hi))
    jumps = [hermitian_signature_at_root(V, root) for root in roots]

    thetas = [root.theta for root in roots]
    return StepFunction(
        breakpoints=tuple(thetas + [TWO_PI - t for t in reversed(thetas)]),
        values=tuple(half + half[-2::-1]),
        jumps=tuple(jumps + jumps[::-1]),
    )


def signature_function(K: KnotDiagram) -> StepFunction:
    return signature_function_from_matrix(seifert_form(K))


def signature_at(step: StepFunction, theta: float) -> int:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    for i, breakpoint in enumerate(step.breakpoints):
        if math.isclose(theta, breakpoint, rel_tol=0, abs_tol=1e-12):
            return step.jumps[i]
        if theta < breakpoint:
            return step.values[i]
    return step.values[-1]


def sample(K: KnotDiagram, theta: float) -> int:
    return hermitian_signature(seifert_form(K), theta)


def max_abs_signature(K: KnotDiagram) -> int:
    return signature_function(K).max_abs()


def signature(K: KnotDiagram) -> int:
    """Classical signature sigma(-1)."""
    return signature_at_cos(seifert_form(K), Fraction(-1))


# --- determinant and homology ---
def determinant(K: KnotDiagram) -> int:
    return abs(det_exact(_symmetrised(seifert_form(K))))


def branched_cover_homology(K: KnotDiagram) -> HomologyGroup:
    S = _symmetrised(seifert_form(K))
    if not S:
        return HomologyGroup()
    factors = [d for d in smith_normal_form(S).diagonal if d != 1]
    return HomologyGroup(invariant_factors=tuple(factors))


def min_generators(K: KnotDiagram) -> int:
    return branched_cover_homology(K).rank


def alexander(K: KnotDiagram) -> LaurentPoly:
    return alexander_from_seifert(seifert_form(K))


def unit_roots(K: KnotDiagram) -> list[UnitRoot]:
    return isolate_unit_roots(alexander(K))


# --- plotting ---
def svg_plot(step: StepFunction, width: int | None = None, height: int | None = None) -> str:
    width = width or settings.output.svgWidth
    height = height or settings.output.svgHeight
    figure = Figure(figsize=(width / 100, height / 100), dpi=100)
    axes = figure.subplots()
    edges = [0.0, *step.breakpoints, TWO_PI]
    axes.stairs(step.values, edges, baseline=None, color="tab:blue")
    if step.breakpoints:
        axes.plot(step.breakpoints, step.jumps, "o", color="tab:red", markersize=3)
    axes.set_xlim(0, TWO_PI)
    axes.set_xticks([0, math.pi / 2, math.pi, 3 * math.pi / 2, TWO_PI])
    axes.set_xticklabels(["0", "π/2", "π", "3π/2", "2π"])
    axes.set_xlabel("θ")
    axes.set_ylabel("σ")
    axes.grid(alpha=0.3)
    figure.tight_layout()

    buffer = io.StringIO()
    figure.savefig(buffer, format="svg")
    return buffer.getvalue()
