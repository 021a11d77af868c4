"""Random generators, hypothesis strategies and independent oracles for the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from planarpd.cluster import Quiver
from planarpd.jacobi import Kind
from planarpd.network import Chip, PlanarNetwork
from planarpd.numeric import ONE, ZERO, GaussianRational, Matrix
from planarpd.wiring import Crossing, Color, DoubleWiringDiagram


# -- seeded generators ----------------------------------------------------

def rand_q(rng: random.Random, bound: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_pos_q(rng: random.Random, bound: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, den))


def rand_gr(rng: random.Random, complex_: bool = True, bound: int = 9) -> GaussianRational:
    return GaussianRational(rand_q(rng, bound), rand_q(rng, bound) if complex_ else 0)


def rand_matrix(rng: random.Random, n: int, complex_: bool = True, rank: int | None = None) -> Matrix:
    if rank is None:
        return Matrix([[rand_gr(rng, complex_) for _ in range(n)] for _ in range(n)])
    if rank == 0:
        return Matrix.zeros(n)
    A = Matrix([[rand_gr(rng, complex_, 4) for _ in range(rank)] for _ in range(n)])
    B = Matrix([[rand_gr(rng, complex_, 4) for _ in range(n)] for _ in range(rank)])
    return A @ B


def rand_hermitian(rng: random.Random, n: int) -> Matrix:
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(rand_q(rng))
        for j in range(i + 1, n):
            z = rand_gr(rng)
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return Matrix(rows)


def rand_pd(rng: random.Random, n: int) -> Matrix:
    A = rand_matrix(rng, n)
    return A.conjugate_transpose() @ A + Matrix.identity(n)


def rand_network(rng: random.Random, n: int, n_chips: int, complex_: bool = True) -> PlanarNetwork:
    chips = []
    for _ in range(n_chips):
        kinds = [Kind.DIAG] if n == 1 else list(Kind)
        kind = rng.choice(kinds)
        top = n if kind is Kind.DIAG else n - 1
        chips.append(Chip(kind, rng.randint(1, top), rand_gr(rng, complex_)))
    return PlanarNetwork(n, tuple(chips))


def rand_reduced_word(rng: random.Random, n: int) -> list[int]:
    """Random reduced word for the longest permutation: swap random ascents until reversed."""
    perm = list(range(n))
    word = []
    while True:
        ascents = [i for i in range(n - 1) if perm[i] < perm[i + 1]]
        if not ascents:
            return word
        i = rng.choice(ascents)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        word.append(i + 1)


def rand_diagram(rng: random.Random, n: int) -> DoubleWiringDiagram:
    b = [Crossing(Color.BLUE, k) for k in rand_reduced_word(rng, n)]
    r = [Crossing(Color.RED, k) for k in rand_reduced_word(rng, n)]
    slots = sorted(rng.sample(range(len(b) + len(r)), len(b)))
    out, bi, ri = [], iter(b), iter(r)
    for pos in range(len(b) + len(r)):
        out.append(next(bi) if pos in slots else next(ri))
    return DoubleWiringDiagram(n, tuple(out))


def rand_quiver(rng: random.Random, max_vertices: int = 8, max_mult: int = 3) -> Quiver:
    nv = rng.randint(2, max_vertices)
    verts = list(range(nv))
    arrows = {}
    for u, w in itertools.combinations(verts, 2):
        if rng.random() < 0.5:
            k = rng.randint(1, max_mult)
            arrows[(u, w) if rng.random() < 0.5 else (w, u)] = k
    mutable = [v for v in verts if rng.random() < 0.7] or [0]
    return Quiver(verts, mutable, arrows)


# -- fixed networks -------------------------------------------------------

def lettered_network(a, b, c, d, e, f, g, h, i):
    chips = [
        Chip(Kind.DESC, 2, a), Chip(Kind.DESC, 1, b), Chip(Kind.DESC, 2, c),
        Chip(Kind.DIAG, 1, d), Chip(Kind.DIAG, 2, e), Chip(Kind.DIAG, 3, f),
        Chip(Kind.ASC, 2, g), Chip(Kind.ASC, 1, h), Chip(Kind.ASC, 2, i),
    ]
    return PlanarNetwork(3, tuple(chips))


def lettered_closed_form(a, b, c, d, e, f, g, h, i):
    return Matrix([
        [d, d * h, d * h * i],
        [b * d, b * d * h + e, b * d * h * i + e * g + e * i],
        [a * b * d, a * b * d * h + a * e + c * e, a * b * d * h * i + (a + c) * e * (g + i) + f],
    ])


# -- hypothesis strategies -------------------------------------------------

fractions_st = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussian_st = st.builds(GaussianRational, fractions_st, fractions_st)


@st.composite
def matrices_st(draw, min_n: int = 1, max_n: int = 4):
    n = draw(st.integers(min_n, max_n))
    return Matrix([[draw(gaussian_st) for _ in range(n)] for _ in range(n)])


# -- independent oracles ---------------------------------------------------

def _perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows) -> GaussianRational:
    """Permutation-sum determinant; shares nothing with the library's elimination."""
    k = len(rows)
    total = ZERO
    for p in itertools.permutations(range(k)):
        term = ONE
        for i in range(k):
            term = term * rows[i][p[i]]
        total = total + term if _perm_sign(p) > 0 else total - term
    return total


def oracle_minor(M: Matrix, I, J) -> GaussianRational:
    return leibniz_det([[M.rows[i - 1][j - 1] for j in J] for i in I])


def naive_matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m, p = A.n_rows, A.n_cols, B.n_cols
    return Matrix([[sum((A.rows[i][k] * B.rows[k][j] for k in range(m)), ZERO) for j in range(p)] for i in range(n)])


def index_sets(n: int):
    for k in range(1, n + 1):
        for I in itertools.combinations(range(1, n + 1), k):
            for J in itertools.combinations(range(1, n + 1), k):
                yield I, J


def minor_table(M: Matrix) -> dict:
    return {oracle_minor(M, I, J): (I, J) for I, J in index_sets(M.n_rows)}
