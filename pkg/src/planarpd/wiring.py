"""Double wiring diagrams, their chambers and the associated cluster quiver.

A diagram on ``n`` levels is a sequence of crossings; a crossing of color
``c`` at row ``k`` swaps the two lines of that color sitting at heights
``k`` and ``k + 1``.  Row ``k`` (``1 <= k <= n - 1``) is the band between
heights ``k`` and ``k + 1``; row ``n`` is the single region above all lines.

Line numbering: blue lines are numbered bottom to top by their *right*
endpoints, red lines bottom to top by their *left* endpoints.  With this
choice the chamber between the last blue and the first red crossing of
row ``k`` is labelled ``([1,k], [1,k])`` whenever blue precedes red.

Chamber spans use crossing indices; an unbounded side is ``-1`` on the
left and ``len(crossings)`` on the right.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .numeric import GaussianRational, Matrix, SizeMismatchError, minor


class Color(str, enum.Enum):
    BLUE = "b"
    RED = "r"


class InvalidDiagramError(ValueError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"crossing {index}: {message}")


@dataclass(frozen=True)
class Crossing:
    color: Color
    row: int

    def __post_init__(self):
        object.__setattr__(self, "color", Color(self.color))


def blue(row: int) -> Crossing:
    return Crossing(Color.BLUE, row)


def red(row: int) -> Crossing:
    return Crossing(Color.RED, row)


@dataclass(frozen=True)
class DoubleWiringDiagram:
    n: int
    crossings: tuple[Crossing, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a wiring diagram needs n >= 1")
        object.__setattr__(self, "crossings", tuple(self.crossings))

    def word(self, color: Color) -> tuple[int, ...]:
        return tuple(c.row for c in self.crossings if c.color is color)


@dataclass(frozen=True)
class Violation:
    index: int
    message: str


def validate_diagram(d: DoubleWiringDiagram) -> Violation | None:
    """``None`` if both color words are reduced words for the longest permutation.

    Lines are tracked through the crossings; a pair of same-colored lines
    crossing a second time is reported at that crossing.  A diagram that
    ends before every pair has crossed is reported at ``len(crossings)``.
    """
    n = d.n
    state = {c: list(range(n)) for c in Color}
    seen = {c: set() for c in Color}
    for idx, x in enumerate(d.crossings):
        if not 1 <= x.row <= n - 1:
            return Violation(idx, f"row {x.row} outside [1, {n - 1}]")
        pos = state[x.color]
        a, b = pos[x.row - 1], pos[x.row]
        pair = frozenset((a, b))
        if pair in seen[x.color]:
            return Violation(idx, f"{x.color.name.lower()} lines {a + 1} and {b + 1} cross twice")
        seen[x.color].add(pair)
        pos[x.row - 1], pos[x.row] = b, a
    full = n * (n - 1) // 2
    for c in Color:
        if len(seen[c]) != full:
            return Violation(
                len(d.crossings), f"{c.name.lower()} lines cross {len(seen[c])} times, expected {full}"
            )
    return None


def require_valid(d: DoubleWiringDiagram) -> None:
    v = validate_diagram(d)
    if v is not None:
        raise InvalidDiagramError(v.index, v.message)


@dataclass(frozen=True)
class Chamber:
    row: int
    left: int
    right: int
    I: tuple[int, ...]
    J: tuple[int, ...]
    left_color: Color | None = None
    right_color: Color | None = None

    @property
    def bounded(self) -> bool:
        return self.left_color is not None and self.right_color is not None

    @property
    def label(self) -> str:
        return f"{','.join(map(str, self.I))}|{','.join(map(str, self.J))}"

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.I, self.J


def _line_numbers(d: DoubleWiringDiagram) -> dict[Color, list[int]]:
    """Number carried by the line that starts at each height (0-based), per color."""
    n = d.n
    pos = list(range(n))
    for x in d.crossings:
        if x.color is Color.BLUE:
            k = x.row - 1
            pos[k], pos[k + 1] = pos[k + 1], pos[k]
    blue_num = [0] * n
    for height, line in enumerate(pos):
        blue_num[line] = height + 1
    return {Color.BLUE: blue_num, Color.RED: [h + 1 for h in range(n)]}


def chambers(d: DoubleWiringDiagram) -> list[Chamber]:
    """The ``n**2`` nonempty chambers, by row then left to right.

    The empty region below every line (label ``(), ()``) is not listed.
    """
    require_valid(d)
    n, m = d.n, len(d.crossings)
    numbers = _line_numbers(d)
    out: list[Chamber] = []
    for k in range(1, n):
        state = {c: list(range(n)) for c in Color}

        def labels():
            return tuple(
                tuple(sorted(numbers[c][line] for line in state[c][:k])) for c in (Color.BLUE, Color.RED)
            )

        left, left_color = -1, None
        I, J = labels()
        for idx, x in enumerate(d.crossings):
            pos = state[x.color]
            r = x.row - 1
            pos[r], pos[r + 1] = pos[r + 1], pos[r]
            if x.row == k:
                out.append(Chamber(k, left, idx, I, J, left_color, x.color))
                left, left_color = idx, x.color
                I, J = labels()
        out.append(Chamber(k, left, m, I, J, left_color, None))
    full = tuple(range(1, n + 1))
    out.append(Chamber(n, -1, m, full, full))
    return out


def chamber_minors(d: DoubleWiringDiagram, M: Matrix) -> dict[Chamber, GaussianRational]:
    if not M.is_square or M.n_rows != d.n:
        raise SizeMismatchError(f"diagram has n={d.n} but matrix is {M.n_rows}x{M.n_cols}")
    return {c: minor(M, c.I, c.J) for c in chambers(d)}


@dataclass(frozen=True)
class WiringQuiver:
    diagram: DoubleWiringDiagram
    vertices: tuple[Chamber, ...]
    arrows: tuple[tuple[int, int, int], ...]  # (source index, target index, multiplicity)

    @property
    def mutable_flags(self) -> tuple[bool, ...]:
        return tuple(c.bounded for c in self.vertices)

    def index(self, I: Sequence[int], J: Sequence[int]) -> int:
        key = (tuple(I), tuple(J))
        for i, c in enumerate(self.vertices):
            if c.key == key:
                return i
        raise KeyError(key)

    @cached_property
    def arrow_counter(self) -> Counter:
        return Counter({(a, b): k for a, b, k in self.arrows})


def _inside(x: int, lo: int, hi: int) -> bool:
    return lo < x < hi


def _rule_arrows(c: Chamber, cp: Chamber) -> list[tuple[Chamber, Chamber]]:
    """Arrows between chambers in the same or adjacent rows (rules 1 to 4)."""
    out = []
    if c.row == cp.row:
        if c.right == cp.left:
            # the crossing between them: blue points left, red points right
            out.append((cp, c) if c.right_color is Color.BLUE else (c, cp))
        return out
    if abs(c.row - cp.row) != 1:
        return out
    # nested: cp has two boundaries of different colors and sits inside c's span
    if cp.bounded and cp.left_color is not cp.right_color and c.left < cp.left and cp.right < c.right:
        out.append((c, cp) if cp.left_color is Color.BLUE else (cp, c))
    if c.row + 1 == cp.row:
        # staggered, lower chamber c on the left
        if (
            cp.left_color is not None
            and c.right_color is not None
            and cp.left_color is c.right_color
            and _inside(cp.left, c.left, c.right)
            and _inside(c.right, cp.left, cp.right)
        ):
            out.append((c, cp) if cp.left_color is Color.BLUE else (cp, c))
        # staggered, upper chamber cp on the left
        if (
            cp.right_color is not None
            and c.left_color is not None
            and cp.right_color is c.left_color
            and _inside(cp.right, c.left, c.right)
            and _inside(c.left, cp.left, cp.right)
        ):
            out.append((cp, c) if cp.right_color is Color.BLUE else (c, cp))
    return out


def build_quiver(d: DoubleWiringDiagram) -> WiringQuiver:
    """Quiver on the nonempty chambers; bounded chambers are mutable.

    Opposite arrows produced by different rules cancel, so the result has
    no 2-cycles.
    """
    verts = chambers(d)
    idx = {c: i for i, c in enumerate(verts)}
    count: Counter = Counter()
    for c in verts:
        for cp in verts:
            if c is cp:
                continue
            for a, b in _rule_arrows(c, cp):
                count[idx[a], idx[b]] += 1
    arrows = []
    for (a, b), k in sorted(count.items()):
        net = k - count.get((b, a), 0)
        if net > 0:
            arrows.append((a, b, net))
    return WiringQuiver(d, tuple(verts), tuple(arrows))


def standard_pd_diagram(n: int) -> DoubleWiringDiagram:
    """Diagram in which every row has all blue crossings left of all red ones.

    Blue word ``(1..n-1, 1..n-2, ..., 1)`` followed by its mirror image
    ``k -> n - k`` in red.  For ``n = 3`` this is ``b1 b2 b1 r2 r1 r2``.
    The postcondition (one blue-left/red-right chamber per row, labelled
    by the leading principal index sets) is checked before returning.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    word = [lvl for top in range(n - 1, 0, -1) for lvl in range(1, top + 1)]
    d = DoubleWiringDiagram(n, tuple(blue(k) for k in word) + tuple(red(n - k) for k in word))
    check_standard_postcondition(d)
    return d


def leading_chambers(d: DoubleWiringDiagram) -> list[Chamber]:
    """Chambers with a blue left boundary and a red right boundary."""
    return [c for c in chambers(d) if c.left_color is Color.BLUE and c.right_color is Color.RED]


def check_standard_postcondition(d: DoubleWiringDiagram) -> None:
    n = d.n
    found = leading_chambers(d)
    rows = sorted(c.row for c in found)
    if rows != list(range(1, n)):
        raise AssertionError(f"expected one blue-left/red-right chamber per row, got rows {rows}")
    for c in found:
        lead = tuple(range(1, c.row + 1))
        if c.I != lead or c.J != lead:
            raise AssertionError(f"row {c.row} middle chamber is {c.label}, expected leading principal")
    top = [c for c in chambers(d) if c.row == n]
    if len(top) != 1 or top[0].bounded:
        raise AssertionError("top chamber must exist and be frozen")


def reference_diagram_n3() -> DoubleWiringDiagram:
    """n = 3 diagram whose chamber minors are x31, x21, x11, x13, D23|12, D12|12, D12|13, D12|23, det."""
    return standard_pd_diagram(3)


def wiring_to_dot(q: WiringQuiver, name: str = "quiver") -> str:
    """Frozen vertices boxed, mutable ones oval, labels ``I|J``."""
    lines = [f"digraph {name} {{"]
    for i, c in enumerate(q.vertices):
        shape = "oval" if c.bounded else "box"
        lines.append(f'  v{i} [label="{c.label}", shape={shape}];')
    for a, b, k in q.arrows:
        for _ in range(k):
            lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_from_json(obj: Mapping) -> DoubleWiringDiagram:
    return DoubleWiringDiagram(
        int(obj["n"]), tuple(Crossing(Color(x["color"]), int(x["row"])) for x in obj["crossings"])
    )


def diagram_to_json(d: DoubleWiringDiagram) -> dict:
    return {"n": d.n, "crossings": [{"color": x.color.value, "row": x.row} for x in d.crossings]}
