"""Factorization of square matrices into generalized elementary Jacobi matrices.

A Jacobi factor differs from the identity in one entry on, just above or
just below the diagonal:

* ``Kind.ASC``  at level i:  ``I + t E[i, i+1]``
* ``Kind.DESC`` at level i:  ``I + t E[i+1, i]``
* ``Kind.DIAG`` at level i:  ``I + (t - 1) E[i, i]``  (t = 0 allowed)

Levels are 1-based.  Factor sequences are not canonical; the only contract
is that their product reproduces the input exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .numeric import (
    ONE,
    ZERO,
    GaussianRational,
    Matrix,
    SingularMatrixError,
    SizeMismatchError,
    ldu_decompose,
    rank_factorization,
)


class Kind(str, enum.Enum):
    ASC = "asc"
    DESC = "desc"
    DIAG = "diag"


@dataclass(frozen=True)
class JacobiFactor:
    kind: Kind
    level: int
    param: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "param", GaussianRational.coerce(self.param))
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level!r}")

    def check_level(self, n: int) -> None:
        top = n if self.kind is Kind.DIAG else n - 1
        if not 1 <= self.level <= top:
            raise ValueError(f"{self.kind.value} factor level {self.level} out of range for n={n}")

    def transpose(self) -> JacobiFactor:
        if self.kind is Kind.DIAG:
            return self
        flipped = Kind.DESC if self.kind is Kind.ASC else Kind.ASC
        return JacobiFactor(flipped, self.level, self.param)

    def __str__(self):
        sym = {Kind.ASC: "x{}", Kind.DESC: "x-{}", Kind.DIAG: "x({})"}[self.kind]
        return f"{sym.format(self.level)}[{self.param}]"


def asc(level, t) -> JacobiFactor:
    return JacobiFactor(Kind.ASC, level, t)


def desc(level, t) -> JacobiFactor:
    return JacobiFactor(Kind.DESC, level, t)


def diag(level, t) -> JacobiFactor:
    return JacobiFactor(Kind.DIAG, level, t)


def factor_to_matrix(f: JacobiFactor, n: int) -> Matrix:
    f.check_level(n)
    rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    i = f.level - 1
    if f.kind is Kind.ASC:
        rows[i][i + 1] = f.param
    elif f.kind is Kind.DESC:
        rows[i + 1][i] = f.param
    else:
        rows[i][i] = f.param
    return Matrix(rows)


def factors_product(factors: Iterable[JacobiFactor], n: int) -> Matrix:
    """Multiply factors left to right, applying each as a column operation."""
    a = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for f in factors:
        f.check_level(n)
        k, t = f.level - 1, f.param
        if f.kind is Kind.ASC:
            # right-multiplying by I + t E[k,k+1] adds t * col k to col k+1
            for row in a:
                if row[k]:
                    row[k + 1] = row[k + 1] + t * row[k]
        elif f.kind is Kind.DESC:
            for row in a:
                if row[k + 1]:
                    row[k] = row[k] + t * row[k + 1]
        else:
            for row in a:
                row[k] = row[k] * t
    return Matrix(a)


def verify_factorization(factors: Sequence[JacobiFactor], M: Matrix) -> bool:
    if not M.is_square:
        return False
    try:
        return factors_product(factors, M.n_rows) == M
    except ValueError:
        return False


def adjacent_chain_row_addition(i: int, j: int, t, n: int) -> list[JacobiFactor]:
    """Factors whose product is the transvection ``I + t E[i, j]``.

    For ``j = i + d`` with ``d > 1`` the identity
    ``I + tE[i,j] = (I + tE[i,j-1]) (I + E[j-1,j]) (I - tE[i,j-1]) (I - E[j-1,j])``
    is unfolded recursively, giving ``2^d + 2^(d-1) - 2`` factors.  Lower
    transvections are the transposed, reversed chain.
    """
    if i == j:
        raise ValueError("invalid transvection: i == j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"transvection indices ({i}, {j}) out of range for n={n}")
    t = GaussianRational.coerce(t)
    if i > j:
        return [f.transpose() for f in reversed(adjacent_chain_row_addition(j, i, t, n))]
    if j - i == 1:
        return [asc(i, t)]
    inner = adjacent_chain_row_addition(i, j - 1, t, n)
    inner_neg = adjacent_chain_row_addition(i, j - 1, -t, n)
    return inner + [asc(j - 1, ONE)] + inner_neg + [asc(j - 1, -ONE)]


def row_swap_chain(i: int, j: int, n: int) -> list[JacobiFactor]:
    """Factors for the permutation matrix exchanging rows ``i`` and ``j``.

    Uses ``(I - E[i,j]) (I + E[j,i]) (I - E[i,j]) (I - 2E[j,j])`` with the
    last term realized as the diagonal factor at ``j`` with parameter -1.
    """
    if i == j:
        raise ValueError("row swap needs i != j")
    return (
        adjacent_chain_row_addition(i, j, -ONE, n)
        + adjacent_chain_row_addition(j, i, ONE, n)
        + adjacent_chain_row_addition(i, j, -ONE, n)
        + [diag(j, -ONE)]
    )


def factorize_invertible(M: Matrix) -> list[JacobiFactor]:
    """Jacobi factors of an invertible matrix; no diagonal factor has parameter 0.

    Gauss-Jordan reduces ``M`` to the identity with row operations
    ``E_k ... E_1 M = I`` and returns the expansion of
    ``E_1^-1 ... E_k^-1``.
    """
    if not M.is_square:
        raise SizeMismatchError("factorization needs a square matrix")
    n = M.n_rows
    a = [list(r) for r in M.rows]
    out: list[JacobiFactor] = []
    for p in range(n):
        pr = next((r for r in range(p, n) if a[r][p]), None)
        if pr is None:
            raise SingularMatrixError()
        if pr != p:
            a[p], a[pr] = a[pr], a[p]
            out.extend(row_swap_chain(p + 1, pr + 1, n))
        piv = a[p][p]
        if piv != 1:
            a[p] = [x / piv for x in a[p]]
            out.append(diag(p + 1, piv))
        for r in range(n):
            c = a[r][p]
            if r == p or not c:
                continue
            a[r] = [x - c * y for x, y in zip(a[r], a[p])]
            out.extend(adjacent_chain_row_addition(r + 1, p + 1, c, n))
    return out


def factorize_general(M: Matrix) -> list[JacobiFactor]:
    """Generalized Jacobi factors of any square matrix, singular or not."""
    if not M.is_square:
        raise SizeMismatchError("factorization needs a square matrix")
    n = M.n_rows
    M1, r, M2 = rank_factorization(M)
    if r == n:
        return factorize_invertible(M)
    middle = [diag(s, ZERO) for s in range(r + 1, n + 1)]
    return factorize_invertible(M1) + middle + factorize_invertible(M2)


def _unit_lower_factors(L: Matrix) -> list[JacobiFactor]:
    # L = prod over columns j (ascending) of prod_i (I + l_ij E[i,j])
    n = L.n_rows
    out: list[JacobiFactor] = []
    for j in range(n):
        for i in range(j + 1, n):
            if L[i, j]:
                out.extend(adjacent_chain_row_addition(i + 1, j + 1, L[i, j], n))
    return out


def factorize_ldu_form(M: Matrix) -> list[JacobiFactor]:
    """Factors grouped as descending*, diagonal*, ascending* (``L``, ``D``, ``U``)."""
    L, D, U = ldu_decompose(M)
    n = M.n_rows
    lower = _unit_lower_factors(L)
    middle = [diag(k + 1, D[k, k]) for k in range(n) if D[k, k] != 1]
    upper = [f.transpose() for f in reversed(_unit_lower_factors(U.transpose()))]
    return lower + middle + upper


def is_grouped_ldu(factors: Sequence[JacobiFactor]) -> bool:
    order = {Kind.DESC: 0, Kind.DIAG: 1, Kind.ASC: 2}
    ranks = [order[f.kind] for f in factors]
    return all(a <= b for a, b in zip(ranks, ranks[1:]))


# x_1bar(2) x_2bar(-1) x_1bar(-4) x_2bar(1) x_1bar(4) x_(2)(2) x_(3)(2)
# x_1(4) x_2(1) x_1(-4) x_2(-1) x_1(2)
EXAMPLE_FACTORS = (
    desc(1, 2), desc(2, -1), desc(1, -4), desc(2, 1), desc(1, 4),
    diag(2, 2), diag(3, 2),
    asc(1, 4), asc(2, 1), asc(1, -4), asc(2, -1), asc(1, 2),
)
EXAMPLE_MATRIX = Matrix([[1, 2, 4], [2, 6, 8], [4, 8, 18]])
