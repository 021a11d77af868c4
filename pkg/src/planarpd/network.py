"""Planar networks built by concatenating chips.

Chips are laid out one per column, so the network is a grid DAG with
nodes ``(level, column)``, ``level`` in ``1..n`` (bottom to top) and
``column`` in ``0..len(chips)``.  Chip ``c`` (1-based) occupies the band
between columns ``c - 1`` and ``c``: every level gets a horizontal edge,
of weight 1 except for a diagonal chip's own level, and ascending or
descending chips add one slanted edge between adjacent levels.

Zero weights stay in the graph as edges of weight 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .jacobi import JacobiFactor, Kind, factorize_ldu_form, factor_to_matrix
from .numeric import (
    ONE,
    ZERO,
    FactorizationError,
    GaussianRational,
    Matrix,
    Reason,
    SizeMismatchError,
    format_scalar,
    is_hermitian,
)


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Chip:
    kind: Kind
    level: int
    weight: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "weight", GaussianRational.coerce(self.weight))

    def check_level(self, n: int) -> None:
        top = n if self.kind is Kind.DIAG else n - 1
        if not 1 <= self.level <= top:
            raise ValueError(f"{self.kind.value} chip level {self.level} out of range for n={n}")

    def edges(self, n: int) -> list[tuple[int, int, GaussianRational]]:
        """``(from_level, to_level, weight)`` for every edge crossing the chip."""
        out = []
        for k in range(1, n + 1):
            w = self.weight if (self.kind is Kind.DIAG and k == self.level) else ONE
            out.append((k, k, w))
        if self.kind is Kind.ASC:
            out.append((self.level, self.level + 1, self.weight))
        elif self.kind is Kind.DESC:
            out.append((self.level + 1, self.level, self.weight))
        return out


def chip_from_factor(f: JacobiFactor) -> Chip:
    return Chip(f.kind, f.level, f.param)


def chip_to_factor(c: Chip) -> JacobiFactor:
    return JacobiFactor(c.kind, c.level, c.weight)


@dataclass(frozen=True)
class PlanarNetwork:
    n: int
    chips: tuple[Chip, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a network needs at least one level")
        object.__setattr__(self, "chips", tuple(self.chips))
        for c in self.chips:
            c.check_level(self.n)

    @property
    def width(self) -> int:
        return len(self.chips)

    @cached_property
    def out_edges(self) -> tuple[dict[int, tuple[tuple[int, GaussianRational], ...]], ...]:
        """Per chip: ``from_level -> ((to_level, weight), ...)``."""
        table = []
        for chip in self.chips:
            adj: dict[int, list] = {}
            for a, b, w in chip.edges(self.n):
                adj.setdefault(a, []).append((b, w))
            table.append({k: tuple(v) for k, v in adj.items()})
        return tuple(table)

    def edges(self) -> Iterator[tuple[tuple[int, int], tuple[int, int], GaussianRational]]:
        for c, chip in enumerate(self.chips, start=1):
            for a, b, w in chip.edges(self.n):
                yield (a, c - 1), (b, c), w

    def factors(self) -> list[JacobiFactor]:
        return [chip_to_factor(c) for c in self.chips]


def network_from_factors(fs: Sequence[JacobiFactor], n: int) -> PlanarNetwork:
    return PlanarNetwork(n, tuple(chip_from_factor(f) for f in fs))


def chip_matrix(c: Chip, n: int) -> Matrix:
    return factor_to_matrix(chip_to_factor(c), n)


def weight_matrix(net: PlanarNetwork) -> Matrix:
    """Path sums source ``i`` -> sink ``j`` by a left-to-right sweep over the DAG."""
    n = net.n
    rows = []
    for src in range(1, n + 1):
        acc = {src: ONE}
        for adj in net.out_edges:
            nxt: dict[int, GaussianRational] = {}
            for a, val in acc.items():
                for b, w in adj[a]:
                    if w:
                        nxt[b] = nxt.get(b, ZERO) + val * w
            acc = {k: v for k, v in nxt.items() if v}
        rows.append([acc.get(j, ZERO) for j in range(1, n + 1)])
    return Matrix(rows)


def _check_sets(net: PlanarNetwork, I, J) -> tuple[tuple[int, ...], tuple[int, ...]]:
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise SizeMismatchError(f"|I| = {len(I)} but |J| = {len(J)}")
    for name, s in (("source", I), ("sink", J)):
        if any(not 1 <= x <= net.n for x in s):
            raise IndexError(f"{name} index outside [1, {net.n}]: {s}")
        if any(b <= a for a, b in zip(s, s[1:])):
            raise IndexError(f"{name} indices must be strictly increasing: {s}")
    return I, J


def minor_lgv(net: PlanarNetwork, I: Sequence[int], J: Sequence[int]) -> GaussianRational:
    """Sum of weights of vertex-disjoint path families from sources I to sinks J.

    The paths advance one column at a time together; the frontier (the
    tuple of their current levels) is the state, and families sharing a
    frontier are merged by summing their weights.  Planarity keeps the
    frontier sorted, so families can only end on ``J`` in order.
    """
    I, J = _check_sets(net, I, J)
    if not I:
        return ONE
    frontier: dict[tuple[int, ...], GaussianRational] = {I: ONE}
    for adj in net.out_edges:
        nxt: dict[tuple[int, ...], GaussianRational] = {}
        for state, val in frontier.items():
            for moves in itertools.product(*(adj[a] for a in state)):
                targets = tuple(b for b, _ in moves)
                if len(set(targets)) != len(targets):
                    continue
                w = val
                for _, wt in moves:
                    w = w * wt
                if w:
                    nxt[targets] = nxt.get(targets, ZERO) + w
        frontier = nxt
    return frontier.get(J, ZERO)


def path_families(net: PlanarNetwork, I: Sequence[int], J: Sequence[int]) -> Iterator[tuple[tuple[tuple[int, int], ...], ...]]:
    """Every vertex-disjoint family of paths I -> J, as tuples of grid nodes.

    Plain backtracking, one source at a time; meant for small networks and
    for cross-checking :func:`minor_lgv`.
    """
    I, J = _check_sets(net, I, J)
    width = net.width

    def paths(src: int, dst: int):
        def walk(level, col, trail):
            if col == width:
                if level == dst:
                    yield trail
                return
            for b, _ in net.out_edges[col][level]:
                yield from walk(b, col + 1, trail + ((b, col + 1),))

        yield from walk(src, 0, ((src, 0),))

    def extend(k, used, chosen):
        if k == len(I):
            yield tuple(chosen)
            return
        for p in paths(I[k], J[k]):
            if used.isdisjoint(p):
                yield from extend(k + 1, used | set(p), chosen + [p])

    yield from extend(0, frozenset(), [])


def path_weight(net: PlanarNetwork, path: Sequence[tuple[int, int]]) -> GaussianRational:
    w = ONE
    for (a, col), (b, _) in zip(path, path[1:]):
        w = w * dict(net.out_edges[col][a])[b]
    return w


def is_ldu_shape(net: PlanarNetwork) -> bool:
    order = {Kind.DESC: 0, Kind.DIAG: 1, Kind.ASC: 2}
    ranks = [order[c.kind] for c in net.chips]
    return all(a <= b for a, b in zip(ranks, ranks[1:]))


def line_weights(net: PlanarNetwork) -> tuple[GaussianRational, ...]:
    """Product of the horizontal weights on each level of a ``\\\\ -- //`` network."""
    if not is_ldu_shape(net):
        raise ShapeError("line weights are defined only for descending/diagonal/ascending networks")
    d = [ONE] * net.n
    for c in net.chips:
        if c.kind is Kind.DIAG:
            d[c.level - 1] = d[c.level - 1] * c.weight
    return tuple(d)


@dataclass(frozen=True)
class NetworkVerdict:
    is_pd: bool
    reason: Reason
    witness: int | None = None
    line_weights: tuple[GaussianRational, ...] | None = None
    network: PlanarNetwork | None = None


def pd_check_network(M: Matrix) -> NetworkVerdict:
    """Decide positive definiteness from the line weights of an LDU-shaped network."""
    if not is_hermitian(M):
        return NetworkVerdict(False, Reason.NOT_HERMITIAN)
    try:
        factors = factorize_ldu_form(M)
    except FactorizationError as exc:
        return NetworkVerdict(False, Reason.ZERO_LEADING_MINOR, getattr(exc, "k", None))
    net = network_from_factors(factors, M.n_rows)
    if weight_matrix(net) != M:
        raise AssertionError("network weight matrix does not reproduce the input")
    d = line_weights(net)
    for k, w in enumerate(d, start=1):
        if not w.is_real:
            raise AssertionError(f"line weight {k} of a Hermitian matrix is not real: {w}")
        if w.re <= 0:
            return NetworkVerdict(False, Reason.NON_POSITIVE_LINE_WEIGHT, k, d, net)
    return NetworkVerdict(True, Reason.POSITIVE_DEFINITE, None, d, net)


def staircase_word(n: int) -> list[int]:
    """Reduced word ``(n-1, ..., 1), (n-1, ..., 2), ..., (n-1)`` for the longest permutation."""
    return [lvl for start in range(1, n) for lvl in range(n - 1, start - 1, -1)]


def essential_tp_network(n: int, params: Sequence) -> PlanarNetwork:
    """The ``\\\\ -- //`` network with full staircases and ``n**2`` essential edges.

    ``params`` fill the descending staircase left to right, then the
    diagonal chips bottom to top, then the ascending staircase (the
    descending word reversed) left to right.
    """
    params = [GaussianRational.coerce(p) for p in params]
    if len(params) != n * n:
        raise ValueError(f"need {n * n} parameters, got {len(params)}")
    for p in params:
        if not p.is_positive():
            raise ValueError(f"essential weights must be positive rationals, got {p}")
    word = staircase_word(n)
    m = len(word)
    it = iter(params)
    chips = [Chip(Kind.DESC, lvl, next(it)) for lvl in word]
    chips += [Chip(Kind.DIAG, k, next(it)) for k in range(1, n + 1)]
    chips += [Chip(Kind.ASC, lvl, next(it)) for lvl in reversed(word)]
    assert len(chips) == 2 * m + n
    return PlanarNetwork(n, tuple(chips))


def network_to_dot(net: PlanarNetwork, name: str = "network") -> str:
    """Graphviz source; columns share a rank, weight-1 labels are omitted."""
    n, width = net.n, net.width

    def node(k, c):
        return f'"{k},{c}"'

    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=point];"]
    for c in range(width + 1):
        members = " ".join(node(k, c) for k in range(1, n + 1))
        lines.append(f"  {{ rank=same; {members} }}")
    for k in range(1, n + 1):
        lines.append(f'  s{k} [shape=circle, label="s{k}"];')
        lines.append(f'  t{k} [shape=doublecircle, label="t{k}"];')
        lines.append(f"  s{k} -> {node(k, 0)} [arrowhead=none];")
        lines.append(f"  {node(k, width)} -> t{k};")
    for (a, c0), (b, c1), w in net.edges():
        attr = f' [label="{format_scalar(w)}"]' if w != 1 else ""
        lines.append(f"  {node(a, c0)} -> {node(b, c1)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
