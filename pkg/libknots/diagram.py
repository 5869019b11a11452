"""Oriented knot diagrams backed by planar diagram (PD) codes.

A crossing is a 4-tuple of arc labels listed counterclockwise, starting with
the incoming under-strand. Position 2 is therefore always the outgoing
under-strand; the over-strand runs 3 -> 1 at a positive crossing and 1 -> 3 at
a negative one.
"""

import re
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict

from libknots.errors import (
    ArcDegreeError,
    MalformedInput,
    MultiComponent,
    OrientationError,
)
from libknots.util import fingerprint as _sha256
from libknots.util import logger

Crossing = tuple[int, int, int, int]
Slot = tuple[int, int]


# --- models ---
class BraidWord(BaseModel):
    model_config = ConfigDict(frozen=True)

    strands: int
    letters: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"BR({self.strands}; {' '.join(map(str, self.letters))})"


class KnotDiagram(BaseModel):
    """A validated, normalised single-component oriented diagram.

    Use :meth:`from_pd` or :meth:`from_unoriented` instead of the constructor;
    both check arc degrees and connectivity and relabel arcs 1..2c in the
    order they are met when walking the knot from crossing 0.
    """

    model_config = ConfigDict(frozen=True)

    pd: tuple[Crossing, ...] = ()
    signs: tuple[int, ...] = ()
    name: str | None = None

    @classmethod
    def unknot(cls, name: str | None = None) -> "KnotDiagram":
        return cls(name=name)

    @classmethod
    def from_pd(
        cls, crossings: Iterable[Sequence[int]], name: str | None = None
    ) -> "KnotDiagram":
        pd = _check_tuples(crossings)
        if not pd:
            return cls(name=name)
        walk, signs = _oriented_walk(pd)
        return cls(pd=_relabel(pd, walk), signs=tuple(signs), name=name)

    @classmethod
    def from_unoriented(
        cls, crossings: Iterable[Sequence[int]], name: str | None = None
    ) -> "KnotDiagram":
        """Accept tuples whose first entry is either end of the under-strand."""
        pd = _check_tuples(crossings)
        if not pd:
            return cls(name=name)
        pd = _orient(pd)
        return cls.from_pd(pd, name=name)

    @property
    def crossing_count(self) -> int:
        return len(self.pd)

    def over_in(self, c: int) -> int:
        return 3 if self.signs[c] > 0 else 1

    def over_out(self, c: int) -> int:
        return 1 if self.signs[c] > 0 else 3

    def is_head(self, c: int, p: int) -> bool:
        """True if the arc in slot (c, p) runs into crossing c."""
        return p == 0 or p == self.over_in(c)

    def occurrences(self) -> dict[int, list[Slot]]:
        return _occurrences(self.pd)

    @property
    def orientation(self) -> dict[int, tuple[Slot, Slot]]:
        """Arc label -> (tail slot, head slot)."""
        arcs = {}
        for label, slots in self.occurrences().items():
            first, second = slots
            arcs[label] = (second, first) if self.is_head(*first) else (first, second)
        return arcs

    def writhe(self) -> int:
        return sum(self.signs)

    def serialize(self) -> str:
        return "PD[" + ", ".join(f"X({a},{b},{c},{d})" for a, b, c, d in self.pd) + "]"

    def fingerprint(self) -> str:
        return _sha256(self.serialize())

    def __str__(self) -> str:
        return self.serialize()


# --- validation helpers ---
def _check_tuples(crossings: Iterable[Sequence[int]]) -> tuple[Crossing, ...]:
    pd = []
    for index, crossing in enumerate(crossings):
        crossing = tuple(crossing)
        if len(crossing) != 4:
            raise MalformedInput(
                f"crossing {index} has {len(crossing)} labels, expected 4", crossing=index
            )
        if any(not isinstance(a, int) or a < 1 for a in crossing):
            raise MalformedInput(
                f"crossing {index} has a label that is not a positive integer",
                crossing=index,
            )
        pd.append(crossing)

    counts: dict[int, int] = {}
    for crossing in pd:
        for label in crossing:
            counts[label] = counts.get(label, 0) + 1
    bad = sorted(label for label, count in counts.items() if count != 2)
    if bad:
        raise ArcDegreeError(
            f"arc labels must appear exactly twice, offending labels: {bad}", labels=bad
        )
    return tuple(pd)


def _occurrences(pd: Sequence[Crossing]) -> dict[int, list[Slot]]:
    slots: dict[int, list[Slot]] = {}
    for c, crossing in enumerate(pd):
        for p, label in enumerate(crossing):
            slots.setdefault(label, []).append((c, p))
    return slots


def _other(slots: dict[int, list[Slot]], label: int, here: Slot) -> Slot:
    first, second = slots[label]
    return second if first == here else first


def _oriented_walk(pd: Sequence[Crossing]) -> tuple[list[Slot], list[int]]:
    """Follow the knot from the under-in slot of crossing 0.

    Returns the entry slots in travel order and the crossing signs.
    """
    slots = _occurrences(pd)
    signs = [0] * len(pd)
    walk: list[Slot] = []
    entry = (0, 0)
    while True:
        walk.append(entry)
        c, p = entry
        if p == 2:
            raise OrientationError(
                f"crossing {c} is entered through its outgoing under-strand", crossing=c
            )
        if p in (1, 3):
            signs[c] = 1 if p == 3 else -1
        exit_slot = (c, (p + 2) % 4)
        entry = _other(slots, pd[c][exit_slot[1]], exit_slot)
        if entry == (0, 0):
            break
        if len(walk) > 2 * len(pd):
            raise OrientationError("walk does not close up", crossings=len(pd))

    if len(walk) < 2 * len(pd) or 0 in signs:
        raise MultiComponent(
            f"the code closes after {len(walk)} of {2 * len(pd)} arcs",
            visited=len(walk),
            arcs=2 * len(pd),
        )
    return walk, signs


def _relabel(pd: Sequence[Crossing], walk: Sequence[Slot]) -> tuple[Crossing, ...]:
    mapping = {pd[c][p]: k + 1 for k, (c, p) in enumerate(walk)}
    return tuple(tuple(mapping[a] for a in crossing) for crossing in pd)  # type: ignore[misc]


def _orient(pd: Sequence[Crossing]) -> tuple[Crossing, ...]:
    slots = _occurrences(pd)
    flipped = set()
    visited = 0
    entry = (0, 0)
    while True:
        visited += 1
        c, p = entry
        if p == 2:
            flipped.add(c)
        exit_slot = (c, (p + 2) % 4)
        entry = _other(slots, pd[c][exit_slot[1]], exit_slot)
        if entry == (0, 0) or visited > 2 * len(pd):
            break

    if visited != 2 * len(pd):
        raise MultiComponent(
            f"the code closes after {visited} of {2 * len(pd)} arcs",
            visited=visited,
            arcs=2 * len(pd),
        )
    if flipped:
        logger.debug(f"Reoriented {len(flipped)} crossing(s) to start at the under-in strand")
    return tuple(
        (x[2], x[3], x[0], x[1]) if c in flipped else x for c, x in enumerate(pd)
    )


# --- parsing ---
_X_TUPLE = re.compile(r"X\s*[\(\[]([^\)\]]*)[\)\]]")
_LIST_TUPLE = re.compile(r"\[([^\[\]]*)\]")
_BRAID = re.compile(r"^BR\s*[\(\[]\s*(\d+)\s*[;,]\s*\{?([^\)\]\}]*)\}?\s*[\)\]]$")
_PRETZEL = re.compile(r"^P\s*\(([^\)]*)\)$")


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(token) for token in re.split(r"[\s,]+", text.strip()) if token]
    except ValueError as e:
        raise MalformedInput(f"cannot read {what} {text!r}: {e}") from e


def parse_pd(text: str, name: str | None = None) -> KnotDiagram:
    text = text.strip()
    if "X" in text:
        tuples = [_ints(body, "crossing") for body in _X_TUPLE.findall(text)]
        leftover = _X_TUPLE.sub("", text)
        if not re.fullmatch(r"(PD)?[\s\[\]\(\),]*", leftover):
            raise MalformedInput(f"unexpected text in PD code: {leftover.strip()!r}")
    elif text in ("", "PD[]", "[]"):
        tuples = []
    elif text.startswith("["):
        tuples = [_ints(body, "crossing") for body in _LIST_TUPLE.findall(text)]
        if not tuples and text.replace("[", "").replace("]", "").strip():
            raise MalformedInput(f"cannot read PD table {text!r}")
    else:
        raise MalformedInput(f"not a PD code: {text!r}")

    try:
        return KnotDiagram.from_pd(tuples, name=name)
    except OrientationError:
        return KnotDiagram.from_unoriented(tuples, name=name)


def parse_braid(text: str) -> BraidWord:
    match = _BRAID.match(text.strip())
    if not match:
        raise MalformedInput(f"not a braid word: {text!r}, expected 'BR(n; i1 i2 ...)'")
    return BraidWord(strands=int(match.group(1)), letters=tuple(_ints(match.group(2), "braid letters")))


def parse_diagram(text: str, name: str | None = None) -> KnotDiagram:
    """Read any of the supported presentations: PD code, braid word, pretzel."""
    stripped = text.strip()
    if stripped.startswith("BR"):
        diagram = braid_closure(parse_braid(stripped))
    elif stripped.startswith("P("):
        match = _PRETZEL.match(stripped)
        if not match:
            raise MalformedInput(f"not a pretzel presentation: {text!r}")
        diagram = pretzel(_ints(match.group(1), "pretzel twists"))
    else:
        return parse_pd(stripped, name=name)
    return diagram.model_copy(update={"name": name})


# --- constructions ---
def braid_closure(b: BraidWord, name: str | None = None) -> KnotDiagram:
    n = b.strands
    if n < 1:
        raise MalformedInput(f"a braid needs at least one strand, got {n}")
    bad = [letter for letter in b.letters if not 0 < abs(letter) < n]
    if bad:
        raise MalformedInput(f"letters {bad} out of range for {n} strands", letters=bad)

    permutation = list(range(n))
    for letter in b.letters:
        i = abs(letter) - 1
        permutation[i], permutation[i + 1] = permutation[i + 1], permutation[i]
    # the closure is a knot iff the permutation is a single n-cycle
    seen, position = 1, permutation[0]
    while position != 0:
        seen += 1
        position = permutation[position]
    if seen != n:
        raise MultiComponent(
            f"braid closure has more than one component ({seen} of {n} strands in the first)",
            strands=n,
        )

    current = list(range(1, n + 1))
    fresh = n + 1
    crossings = []
    for letter in b.letters:
        i = abs(letter) - 1
        l_in, r_in = current[i], current[i + 1]
        l_out, r_out = fresh, fresh + 1
        fresh += 2
        if letter > 0:
            crossings.append((r_in, r_out, l_out, l_in))
        else:
            crossings.append((l_in, r_in, r_out, l_out))
        current[i], current[i + 1] = l_out, r_out

    closing = {top: bottom for bottom, top in enumerate(current, start=1)}
    crossings = [tuple(closing.get(a, a) for a in x) for x in crossings]
    return KnotDiagram.from_pd(crossings, name=name)


def pretzel(twists: Sequence[int], name: str | None = None) -> KnotDiagram:
    """Standard diagram of the pretzel knot with the given column twists."""
    if not twists or any(t == 0 for t in twists):
        raise MalformedInput(f"pretzel twists must be nonzero, got {list(twists)}")

    # slots: 0 = NE, 1 = NW, 2 = SW, 3 = SE
    edges: list[tuple[tuple[int, int, int], tuple[int, int, int]]] = []
    columns = len(twists)
    for i, t in enumerate(twists):
        for j in range(abs(t) - 1):
            edges.append(((i, j, 2), (i, j + 1, 1)))
            edges.append(((i, j, 3), (i, j + 1, 0)))
    for i, t in enumerate(twists):
        k = (i + 1) % columns
        edges.append(((i, 0, 0), (k, 0, 1)))
        edges.append(((i, abs(t) - 1, 3), (k, abs(twists[k]) - 1, 2)))

    label = {}
    for number, (a, b) in enumerate(edges, start=1):
        label[a] = number
        label[b] = number

    crossings = []
    for i, t in enumerate(twists):
        for j in range(abs(t)):
            ne, nw, sw, se = (label[(i, j, s)] for s in range(4))
            crossings.append((ne, nw, sw, se) if t > 0 else (nw, sw, se, ne))
    return KnotDiagram.from_unoriented(crossings, name=name)


def mirror(K: KnotDiagram) -> KnotDiagram:
    crossings = [
        (d, a, b, c) if sign > 0 else (b, c, d, a)
        for (a, b, c, d), sign in zip(K.pd, K.signs)
    ]
    return KnotDiagram.from_pd(crossings)


def reverse(K: KnotDiagram) -> KnotDiagram:
    return KnotDiagram.from_pd([(c, d, a, b) for a, b, c, d in K.pd])


def inverse(K: KnotDiagram) -> KnotDiagram:
    return mirror(reverse(K))


def connect_sum(K1: KnotDiagram, K2: KnotDiagram) -> KnotDiagram:
    """Splice arc 1 of K1 with arc 1 of K2."""
    if not K1.pd:
        return K2.model_copy(update={"name": None})
    if not K2.pd:
        return K1.model_copy(update={"name": None})

    shift = 2 * K1.crossing_count
    first = [list(x) for x in K1.pd]
    second = [[a + shift for a in x] for x in K2.pd]
    x_label, y_label = 1, shift + 1

    (c1, p1), _ = K1.orientation[1]
    (c2, p2), _ = K2.orientation[1]
    first[c1][p1] = y_label
    second[c2][p2] = x_label
    return KnotDiagram.from_pd(first + second)


def connect_sum_all(knots: Iterable[KnotDiagram]) -> KnotDiagram:
    result = KnotDiagram.unknot()
    for K in knots:
        result = connect_sum(result, K)
    return result


def crossing_signs(K: KnotDiagram) -> list[int]:
    return list(K.signs)


def writhe(K: KnotDiagram) -> int:
    return K.writhe()


def serialize(K: KnotDiagram) -> str:
    return K.serialize()


def fingerprint(K: KnotDiagram) -> str:
    return K.fingerprint()
