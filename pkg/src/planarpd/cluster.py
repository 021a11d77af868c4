"""Quiver and seed mutation, freezing, orbit exploration, and the cluster PD test.

Cluster variables are evaluated at a concrete matrix, so a seed carries
exact :class:`GaussianRational` values rather than rational functions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .numeric import GaussianRational, Matrix, Reason, is_hermitian
from .wiring import WiringQuiver, build_quiver, chamber_minors, standard_pd_diagram


class FrozenVertexError(ValueError):
    pass


class ZeroClusterValueError(ZeroDivisionError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"cluster value at vertex {vertex!r} is zero; cannot mutate")


class SubalgebraSpecError(ValueError):
    pass


class Quiver:
    """Cluster quiver: no loops, no 2-cycles, a mutable/frozen split.

    Arrows are held as net multiplicities ``(u, w) -> m > 0``; the
    skew-symmetric exchange matrix entry ``b(u, w)`` is ``m`` or ``-m``.
    """

    __slots__ = ("vertices", "mutable", "_arrows", "_key")

    def __init__(self, vertices: Iterable[Hashable], mutable: Iterable[Hashable], arrows: Iterable):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        vset = set(self.vertices)
        self.mutable = frozenset(mutable)
        if not self.mutable <= vset:
            raise ValueError("mutable vertices must be quiver vertices")
        if isinstance(arrows, Mapping):
            items = arrows.items()
        else:
            items = ((a, 1) if len(a) == 2 else ((a[0], a[1]), a[2]) for a in arrows)
        mult: dict[tuple, int] = {}
        for (u, w), k in items:
            if u not in vset or w not in vset:
                raise ValueError(f"arrow {u!r}->{w!r} uses an unknown vertex")
            if u == w:
                raise ValueError(f"loop at {u!r}")
            if k:
                mult[u, w] = mult.get((u, w), 0) + k
        for (u, w) in mult:
            if (w, u) in mult:
                raise ValueError(f"2-cycle between {u!r} and {w!r}")
        self._arrows = {p: k for p, k in mult.items() if k > 0}
        order = {v: i for i, v in enumerate(self.vertices)}
        self._key = (
            self.vertices,
            tuple(sorted(order[v] for v in self.mutable)),
            tuple(sorted((order[u], order[w], k) for (u, w), k in self._arrows.items())),
        )

    @property
    def arrows(self) -> dict[tuple, int]:
        return dict(self._arrows)

    @property
    def frozen(self) -> frozenset:
        return frozenset(self.vertices) - self.mutable

    def is_mutable(self, v) -> bool:
        return v in self.mutable

    def b(self, u, w) -> int:
        return self._arrows.get((u, w), 0) - self._arrows.get((w, u), 0)

    def arrow_list(self) -> list[tuple]:
        """Arrows with repetition, in vertex order."""
        order = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for (u, w), k in sorted(self._arrows.items(), key=lambda p: (order[p[0][0]], order[p[0][1]])):
            out.extend([(u, w)] * k)
        return out

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {sum(self._arrows.values())} arrows)"


def mutate_quiver(Q: Quiver, v) -> Quiver:
    """Compose paths through ``v``, reverse arrows at ``v``, cancel 2-cycles.

    No arrow is added between two frozen vertices.
    """
    if v not in Q.mutable:
        raise FrozenVertexError(f"cannot mutate at frozen vertex {v!r}")
    ins = [(u, k) for (u, w), k in Q._arrows.items() if w == v]
    outs = [(w, k) for (u, w), k in Q._arrows.items() if u == v]
    b: dict[tuple, int] = {}
    for (u, w), k in Q._arrows.items():
        if u == v or w == v:
            b[w, u] = b.get((w, u), 0) + k
        else:
            b[u, w] = b.get((u, w), 0) + k
    for u, ku in ins:
        for w, kw in outs:
            if u == w or (u not in Q.mutable and w not in Q.mutable):
                continue
            b[u, w] = b.get((u, w), 0) + ku * kw
    net: dict[tuple, int] = {}
    for (u, w), k in b.items():
        d = k - b.get((w, u), 0)
        if d > 0:
            net[u, w] = d
    return Quiver(Q.vertices, Q.mutable, net)


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    values: Mapping

    def __post_init__(self):
        vals = {v: GaussianRational.coerce(self.values[v]) for v in self.quiver.vertices}
        object.__setattr__(self, "values", vals)

    def value_tuple(self) -> tuple:
        return tuple(self.values[v] for v in self.quiver.vertices)

    def key(self) -> tuple:
        return (self.quiver._key, self.value_tuple())

    def __eq__(self, other):
        if not isinstance(other, Seed):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def mutable_values(self) -> dict:
        return {v: self.values[v] for v in self.quiver.vertices if v in self.quiver.mutable}

    @property
    def frozen_values(self) -> dict:
        return {v: self.values[v] for v in self.quiver.vertices if v not in self.quiver.mutable}


def exchange_value(t: Seed, v) -> GaussianRational:
    """``(prod of incoming values + prod of outgoing values) / value(v)``."""
    z = t.values[v]
    if not z:
        raise ZeroClusterValueError(v)
    pin = GaussianRational(1)
    pout = GaussianRational(1)
    for (a, b), k in t.quiver._arrows.items():
        if b == v:
            pin = pin * t.values[a] ** k
        elif a == v:
            pout = pout * t.values[b] ** k
    return (pin + pout) / z


def mutate_seed(t: Seed, v) -> Seed:
    if v not in t.quiver.mutable:
        raise FrozenVertexError(f"cannot mutate at frozen vertex {v!r}")
    new = exchange_value(t, v)
    values = dict(t.values)
    values[v] = new
    return Seed(mutate_quiver(t.quiver, v), values)


def freeze(t: Seed, S: Iterable) -> Seed:
    """Seed of the cluster subalgebra obtained by freezing the vertices in ``S``."""
    S = frozenset(S)
    if not S <= t.quiver.mutable:
        bad = sorted(map(repr, S - t.quiver.mutable))
        raise SubalgebraSpecError(f"not mutable: {', '.join(bad)}")
    q = t.quiver
    return Seed(Quiver(q.vertices, q.mutable - S, q._arrows), t.values)


@dataclass
class Exploration:
    seeds: list[Seed]
    depth: int
    # (mutation path, vertex) for each branch abandoned on a zero value
    zero_branches: list[tuple[tuple, object]] = field(default_factory=list)

    def values(self) -> set:
        return {z for t in self.seeds for z in t.values.values()}


def explore(t: Seed, depth: int) -> Exploration:
    """Breadth-first mutation closure up to ``depth`` steps, deduplicated."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    seen = {t.key(): t}
    found = [t]
    zero: list = []
    layer = deque([(t, ())])
    for _ in range(depth):
        nxt = deque()
        for seed, path in layer:
            for v in seed.quiver.vertices:
                if v not in seed.quiver.mutable:
                    continue
                if path and path[-1] == v:
                    continue  # involution: straight back to the parent
                try:
                    child = mutate_seed(seed, v)
                except ZeroClusterValueError:
                    zero.append((path, v))
                    continue
                k = child.key()
                if k in seen:
                    continue
                seen[k] = child
                found.append(child)
                nxt.append((child, path + (v,)))
        layer = nxt
    return Exploration(found, depth, zero)


# -- wiring seeds and the positive definiteness test ---------------------------

def wiring_seed(q: WiringQuiver, M: Matrix) -> Seed:
    """Seed on chamber labels ``"I|J"`` with chamber minors of ``M`` as values."""
    values = chamber_minors(q.diagram, M)
    ids = [c.label for c in q.vertices]
    quiver = Quiver(
        ids,
        [c.label for c in q.vertices if c.bounded],
        {(ids[a], ids[b]): k for a, b, k in q.arrows},
    )
    return Seed(quiver, {c.label: values[c] for c in q.vertices})


def leading_label(k: int) -> str:
    s = ",".join(map(str, range(1, k + 1)))
    return f"{s}|{s}"


@dataclass(frozen=True)
class ClusterVerdict:
    is_pd: bool
    reason: Reason
    witness: str | None = None
    checked_values: tuple[GaussianRational, ...] = ()
    explore_depth: int = 0
    seeds_reached: int = 0
    orbit_values_positive: bool | None = None
    frozen_report: Mapping[str, bool] = field(default_factory=dict)


def pd_subalgebra_seed(M: Matrix) -> Seed:
    """Standard-diagram seed with every mutable chamber frozen except the leading ones."""
    n = M.n_rows
    q = build_quiver(standard_pd_diagram(n))
    t = wiring_seed(q, M)
    keep = {leading_label(k) for k in range(1, n)}
    return freeze(t, t.quiver.mutable - keep)


def pd_check_cluster(M: Matrix, depth: int = 2) -> ClusterVerdict:
    """Positivity test on the cluster subalgebra of the standard diagram.

    The verdict is decided by the initial extended cluster: the ``n - 1``
    leading-principal cluster variables and the frozen determinant must be
    positive reals.  When ``depth > 0`` and the verdict is positive, the
    mutation orbit is explored and whether all reached cluster variables
    stay positive is reported; other frozen values are reported only.
    """
    if not is_hermitian(M):
        return ClusterVerdict(False, Reason.NOT_HERMITIAN)
    n = M.n_rows
    t = pd_subalgebra_seed(M)
    checked_labels = [leading_label(k) for k in range(1, n + 1)]
    checked = tuple(t.values[lab] for lab in checked_labels)
    frozen_report = {v: z.is_positive() for v, z in t.frozen_values.items()}
    for lab, z in zip(checked_labels, checked):
        assert z.is_real, f"leading principal minor {lab} of a Hermitian matrix is not real"
        if z.re == 0:
            return ClusterVerdict(False, Reason.ZERO_LEADING_MINOR, lab, checked, 0, 1, None, frozen_report)
        if z.re < 0:
            return ClusterVerdict(
                False, Reason.NON_POSITIVE_CLUSTER_VALUE, lab, checked, 0, 1, None, frozen_report
            )
    orbit_ok = None
    reached = 1
    if depth > 0:
        ex = explore(t, depth)
        reached = len(ex.seeds)
        orbit_ok = all(z.is_positive() for s in ex.seeds for z in s.mutable_values.values())
    return ClusterVerdict(
        True, Reason.POSITIVE_DEFINITE, None, checked, depth, reached, orbit_ok, frozen_report
    )
