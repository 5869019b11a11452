"""Strongly invertible knots drawn symmetrically about a vertical axis.

The involution is the pi-rotation about the vertical axis line in the
projection plane: it reflects x -> -x and exchanges over and under. A
:class:`SymmetricDiagram` stores only the right half. Its crossings are
unoriented PD tuples (starting at either end of the under-strand) and the
axis is listed bottom to top. The listing is cyclic: infinity sits between
the last and the first point.

Axis points come in two kinds:

``F(a)``
    one of the two fixed points; the right arc ``a`` continues through it
    into its own mirror image.
``T(lo, hi, over|under)``
    a crossing centred on the axis whose two strands are exchanged by the
    involution. ``lo``/``hi`` are its lower and upper right legs and the flag
    says whether the strand through the upper right leg passes over.

Mirror copies of right labels are written ``a'`` and numbered ``a + M``
where M is the largest right label.
"""

import re
from collections import Counter
from typing import Iterable, Literal, Sequence

from pydantic import BaseModel, ConfigDict

from libknots.diagram import Crossing, KnotDiagram
from libknots.errors import (
    CatalogMissing,
    FixedPointCount,
    MalformedInput,
    MultiComponent,
    PairingError,
)
from libknots.util import logger, split_top_level

HalfAxis = Literal["h0", "h1"]
Direction = Literal["up", "down"]


# --- models ---
class AxisPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["F", "T"]
    label: int = 0
    lo: int = 0
    hi: int = 0
    # strand through the upper right leg passes over
    over: bool = False

    @classmethod
    def fixed(cls, label: int) -> "AxisPoint":
        return cls(kind="F", label=label)

    @classmethod
    def transversal(cls, lo: int, hi: int, over: bool) -> "AxisPoint":
        return cls(kind="T", lo=lo, hi=hi, over=over)

    @property
    def labels(self) -> tuple[int, ...]:
        return (self.label,) if self.kind == "F" else (self.lo, self.hi)

    def relabel(self, mapping) -> "AxisPoint":
        if self.kind == "F":
            return self.model_copy(update={"label": mapping(self.label)})
        return self.model_copy(update={"lo": mapping(self.lo), "hi": mapping(self.hi)})

    def __str__(self) -> str:
        if self.kind == "F":
            return f"F({self.label})"
        return f"T({self.lo},{self.hi},{'over' if self.over else 'under'})"


class SymmetricDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    half_tangle: tuple[Crossing, ...] = ()
    axis_points: tuple[AxisPoint, ...] = ()
    name: str | None = None

    @classmethod
    def new(
        cls,
        half_tangle: Iterable[Sequence[int]],
        axis_points: Iterable[AxisPoint],
        name: str | None = None,
    ) -> "SymmetricDiagram":
        d = cls(
            half_tangle=tuple(tuple(x) for x in half_tangle),  # type: ignore[misc]
            axis_points=tuple(axis_points),
            name=name,
        )
        validate_symmetry(d)
        return d

    @classmethod
    def trivial(cls) -> "SymmetricDiagram":
        return cls(axis_points=(AxisPoint.fixed(1), AxisPoint.fixed(1)), name="unknot")

    @property
    def max_label(self) -> int:
        labels = [a for x in self.half_tangle for a in x]
        labels += [a for point in self.axis_points for a in point.labels]
        return max(labels, default=0)

    @property
    def fixed_indices(self) -> tuple[int, int]:
        """Axis indices of the lower (P) and upper (Q) fixed point."""
        lower, upper = (i for i, point in enumerate(self.axis_points) if point.kind == "F")
        return lower, upper

    def serialize(self) -> str:
        tangle = " ".join(f"X({a},{b},{c},{d})" for a, b, c, d in self.half_tangle)
        axis = " ".join(str(point) for point in self.axis_points)
        return f"SYM[{tangle} | {axis}]"

    def __str__(self) -> str:
        return self.serialize()


class DirectedSIKnot(BaseModel):
    """A symmetric diagram with a chosen, oriented half-axis.

    ``h0`` is the axis segment between the fixed points that avoids
    infinity. ``up`` runs h0 from P to Q and h1 from Q through infinity to P.
    """

    model_config = ConfigDict(frozen=True)

    diagram: SymmetricDiagram
    half_axis: HalfAxis = "h0"
    direction: Direction = "up"

    def serialize(self) -> str:
        return f"{self.diagram.serialize()} {self.half_axis} {self.direction}"


# --- parsing ---
_SYM = re.compile(r"^SYM\s*\[(.*)\|(.*)\]$", re.S)
_AXIS_POINT = re.compile(r"([FT])\s*\(([^\)]*)\)")


def parse_symmetric(text: str, name: str | None = None) -> SymmetricDiagram:
    match = _SYM.match(text.strip())
    if not match:
        raise MalformedInput(f"not a symmetric diagram: {text!r}, expected 'SYM[... | ...]'")

    tangle_text, axis_text = match.groups()
    half_tangle = _tuples(tangle_text)
    points = []
    for kind, body in _AXIS_POINT.findall(axis_text):
        parts = split_top_level(body)
        try:
            if kind == "F" and len(parts) == 1:
                points.append(AxisPoint.fixed(int(parts[0])))
            elif kind == "T" and len(parts) == 3 and parts[2] in ("over", "under"):
                points.append(AxisPoint.transversal(int(parts[0]), int(parts[1]), parts[2] == "over"))
            else:
                raise ValueError(body)
        except ValueError as e:
            raise MalformedInput(f"cannot read axis point {kind}({body})") from e
    if _AXIS_POINT.sub("", axis_text).strip():
        raise MalformedInput(f"unexpected text on the axis: {axis_text.strip()!r}")
    return SymmetricDiagram.new(half_tangle, points, name=name)


def _tuples(text: str) -> list[tuple[int, ...]]:
    tuples = []
    for body in re.findall(r"X\s*\(([^\)]*)\)", text):
        try:
            tuples.append(tuple(int(a) for a in split_top_level(body)))
        except ValueError as e:
            raise MalformedInput(f"cannot read crossing X({body})") from e
    if re.sub(r"X\s*\(([^\)]*)\)", "", text).strip(" ,\n\t"):
        raise MalformedInput(f"unexpected text in half tangle: {text.strip()!r}")
    return tuples


# --- full diagram ---
class _Assembly:
    """Unmerged PD tuples of the whole diagram: right, mirror, then axis crossings."""

    def __init__(self, d: SymmetricDiagram) -> None:
        M = self.shift = d.max_label
        self.tuples: list[Crossing] = list(d.half_tangle)
        self.tuples += [(x[3] + M, x[2] + M, x[1] + M, x[0] + M) for x in d.half_tangle]
        # axis index -> (tuple index, slots of the two upper legs)
        self.axis: dict[int, tuple[int, set[int]]] = {}
        for i, point in enumerate(d.axis_points):
            if point.kind != "T":
                continue
            lo, hi = point.lo, point.hi
            if point.over:
                self.tuples.append((lo, hi, hi + M, lo + M))
                upper = {1, 2}
            else:
                self.tuples.append((hi, hi + M, lo + M, lo))
                upper = {0, 1}
            self.axis[i] = (len(self.tuples) - 1, upper)


def validate_symmetry(d: SymmetricDiagram) -> None:
    if any(len(x) != 4 for x in d.half_tangle):
        raise MalformedInput("every crossing needs four labels")
    labels = [a for x in d.half_tangle for a in x]
    labels += [a for point in d.axis_points for a in point.labels]
    if any(a < 1 for a in labels):
        raise MalformedInput("labels must be positive integers")

    fixed = sum(1 for point in d.axis_points if point.kind == "F")
    if fixed != 2:
        raise FixedPointCount(f"expected exactly 2 fixed points, found {fixed}", found=fixed)

    counts = Counter(labels)
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise PairingError(
            f"right-half labels must have exactly two ends, offending labels: {bad}",
            labels=bad,
        )
    full_diagram(d)


def is_normal_position(d: SymmetricDiagram) -> bool:
    """True if the unbounded half-axis meets the diagram only at the fixed points."""
    lower, upper = d.fixed_indices
    return all(
        lower < i < upper for i, point in enumerate(d.axis_points) if point.kind == "T"
    )


def _merged_tuples(d: SymmetricDiagram) -> list[Crossing]:
    assembly = _Assembly(d)
    merge = {point.label + assembly.shift: point.label for point in d.axis_points if point.kind == "F"}
    tuples = [tuple(merge.get(a, a) for a in x) for x in assembly.tuples]
    if tuples:
        present = {a for x in tuples for a in x}
        for point in d.axis_points:
            if point.kind == "F" and point.label not in present:
                raise MultiComponent(
                    f"the arc through F({point.label}) meets no crossing", label=point.label
                )
    return tuples  # type: ignore[return-value]


def full_diagram(d: SymmetricDiagram) -> KnotDiagram:
    tuples = _merged_tuples(d)
    return KnotDiagram.from_unoriented(tuples, name=d.name)


# --- half-axis knots ---
def _walk(tuples: Sequence[Crossing], start: int) -> tuple[list[tuple[int, int, int]], int]:
    """Follow the strand leaving a fixed point on arc *start* to the next fixed point."""
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for x, crossing in enumerate(tuples):
        for p, a in enumerate(crossing):
            occurrences.setdefault(a, []).append((x, p))

    passages = []
    label, came = start, None
    while True:
        ahead = [slot for slot in occurrences.get(label, []) if slot != came]
        if not ahead:
            return passages, label
        x, p = ahead[0]
        q = (p + 2) % 4
        passages.append((x, p, q))
        label, came = tuples[x][q], (x, q)
        if len(passages) > 2 * len(tuples):
            raise PairingError("strand from the fixed point never returns to the axis")


def _half_axis_indices(d: SymmetricDiagram, half_axis: HalfAxis) -> list[tuple[int, bool]]:
    """Axis points met by the half-axis running from Q back to P.

    Each entry is (axis index, True if the half-axis runs downwards there).
    """
    lower, upper = d.fixed_indices
    transversal = [i for i, point in enumerate(d.axis_points) if point.kind == "T"]
    if half_axis == "h0":
        return [(i, True) for i in reversed(transversal) if lower < i < upper]
    above = [(i, False) for i in transversal if i > upper]
    below = [(i, False) for i in transversal if i < lower]
    return above + below


def half_knot(k: DirectedSIKnot, arc: int = 1) -> KnotDiagram:
    """The knot formed by one arc of K between the fixed points and the half-axis."""
    if arc not in (1, 2):
        raise MalformedInput(f"arc must be 1 or 2, got {arc}")
    d = k.diagram
    assembly = _Assembly(d)
    lower, upper = d.fixed_indices
    start = d.axis_points[lower].label
    if arc == 2:
        start += assembly.shift
    passages, end = _walk(assembly.tuples, start)
    finish = d.axis_points[upper].label
    if end not in (finish, finish + assembly.shift):
        raise PairingError(f"arc {arc} from the lower fixed point ends on label {end}", label=end)

    axis_path = _half_axis_indices(d, k.half_axis)
    on_axis = {assembly.axis[i][0] for i, _ in axis_path}
    visits = Counter(x for x, _, _ in passages)
    route = [ps for ps in passages if visits[ps[0]] == 2 or ps[0] in on_axis]

    through = {x: (p, q) for x, p, q in passages}
    for i, downwards in axis_path:
        x, upper_slots = assembly.axis[i]
        if x not in through:
            raise PairingError(f"axis crossing {d.axis_points[i]} is not met by the arc")
        free = [s for s in range(4) if s not in through[x]]
        up = next(s for s in free if s in upper_slots)
        down = next(s for s in free if s != up)
        route.append((x, up, down) if downwards else (x, down, up))

    if not route:
        return KnotDiagram.unknot()

    slots: dict[int, list[int]] = {}
    for j, (x, _, exit_slot) in enumerate(route):
        slots.setdefault(x, [0, 0, 0, 0])[exit_slot] = j + 1
        following, entry, _ = route[(j + 1) % len(route)]
        slots.setdefault(following, [0, 0, 0, 0])[entry] = j + 1
    logger.debug(
        f"Half-axis knot ({k.half_axis}, arc {arc}) keeps {len(slots)} crossing(s)"
    )
    return KnotDiagram.from_unoriented(list(slots.values()))


# --- operations on symmetric diagrams ---
def rho_flip(d: SymmetricDiagram) -> SymmetricDiagram:
    """Turn the picture upside down (pi-rotation about a horizontal line)."""
    points = [
        point if point.kind == "F" else point.model_copy(update={"lo": point.hi, "hi": point.lo})
        for point in reversed(d.axis_points)
    ]
    return SymmetricDiagram(
        half_tangle=tuple((x[3], x[2], x[1], x[0]) for x in d.half_tangle),
        axis_points=tuple(points),
        name=d.name,
    )


def mirror_symmetric(d: SymmetricDiagram) -> SymmetricDiagram:
    points = [
        point if point.kind == "F" else point.model_copy(update={"over": not point.over})
        for point in d.axis_points
    ]
    return SymmetricDiagram(
        half_tangle=tuple((x[1], x[2], x[3], x[0]) for x in d.half_tangle),
        axis_points=tuple(points),
        name=f"-{d.name}" if d.name else None,
    )


def antipode(k: DirectedSIKnot) -> DirectedSIKnot:
    return k.model_copy(update={"half_axis": "h1" if k.half_axis == "h0" else "h0"})


def upward(k: DirectedSIKnot) -> DirectedSIKnot:
    if k.direction == "up":
        return k
    return DirectedSIKnot(diagram=rho_flip(k.diagram), half_axis=k.half_axis, direction="up")


def _compact(
    tangle: Sequence[Crossing], points: Sequence[AxisPoint], name: str | None
) -> SymmetricDiagram:
    used = sorted({a for x in tangle for a in x} | {a for p in points for a in p.labels})
    mapping = {a: n for n, a in enumerate(used, start=1)}
    return SymmetricDiagram.new(
        [tuple(mapping[a] for a in x) for x in tangle],
        [p.relabel(mapping.__getitem__) for p in points],
        name=name,
    )


def _cyclic_after(points: Sequence[AxisPoint], index: int) -> list[AxisPoint]:
    return list(points[index + 1 :]) + list(points[:index])


def equivariant_connect_sum(k1: DirectedSIKnot, k2: DirectedSIKnot) -> DirectedSIKnot:
    """Band k1 and k2 together at the head of k1's half-axis and the tail of k2's."""
    k1, k2 = upward(k1), upward(k2)
    d1, d2 = k1.diagram, k2.diagram
    lower1, upper1 = d1.fixed_indices
    lower2, upper2 = d2.fixed_indices
    head = upper1 if k1.half_axis == "h0" else lower1
    tail = lower2 if k2.half_axis == "h0" else upper2

    shift = d1.max_label
    joined = d1.axis_points[head].label
    dropped = d2.axis_points[tail].label + shift

    def move(a: int) -> int:
        a += shift
        return joined if a == dropped else a

    tangle = list(d1.half_tangle) + [tuple(move(a) for a in x) for x in d2.half_tangle]
    second = [p.relabel(move) for p in d2.axis_points]
    points = _cyclic_after(d1.axis_points, head) + _cyclic_after(second, tail)

    name = f"{d1.name}#{d2.name}" if d1.name and d2.name else None
    return DirectedSIKnot(diagram=_compact(tangle, points, name), half_axis="h0", direction="up")


def equivariant_connect_sum_all(knots: Sequence[DirectedSIKnot]) -> DirectedSIKnot:
    result = knots[0]
    for k in knots[1:]:
        result = equivariant_connect_sum(result, k)
    return result


def equivariant_double(K: KnotDiagram) -> DirectedSIKnot:
    """K # rK with the involution exchanging the two summands."""
    if not K.pd:
        return DirectedSIKnot(diagram=SymmetricDiagram.trivial())
    cut = 2 * K.crossing_count + 1
    tangle = [list(x) for x in K.pd]
    (c, p), _ = K.orientation[1]
    tangle[c][p] = cut
    name = f"D({K.name})" if K.name else None
    diagram = SymmetricDiagram.new(
        tangle, [AxisPoint.fixed(1), AxisPoint.fixed(cut)], name=name
    )
    return DirectedSIKnot(diagram=diagram)


def build_Kn(n: int, seed: SymmetricDiagram | None = None) -> DirectedSIKnot:
    """Equivariant sum of 2n copies of -(8_20, tau) and n equivariant doubles of 8_20."""
    if n < 1:
        raise MalformedInput(f"n must be positive, got {n}")
    if seed is None:
        from libknots.catalog import open_catalog

        entry = open_catalog().get("8_20_tau")
        if entry is None or entry.symmetric is None:
            raise CatalogMissing("symmetric data for 8_20 ('8_20_tau') is not in the catalog")
        seed = entry.symmetric

    flipped = DirectedSIKnot(diagram=mirror_symmetric(seed))
    double = equivariant_double(full_diagram(seed))
    summands = []
    for _ in range(n):
        summands += [flipped, flipped, double]
    result = equivariant_connect_sum_all(summands)
    return result.model_copy(
        update={"diagram": result.diagram.model_copy(update={"name": f"K_{n}"})}
    )


def half_knots(k: DirectedSIKnot) -> tuple[KnotDiagram, KnotDiagram]:
    """Half-axis knots for h0 and h1, in that order."""
    return (
        half_knot(k.model_copy(update={"half_axis": "h0"})),
        half_knot(k.model_copy(update={"half_axis": "h1"})),
    )
