"""Exact scalar and matrix arithmetic over the Gaussian rationals Q(i).

Every sign decision made elsewhere in the package (positivity of a minor,
of a line weight, of a cluster value) is a strict test, so nothing here
ever touches floating point.

Index conventions: ``Matrix[i, j]`` is 0-based like any Python container,
while the index sets handed to :func:`minor` are 1-based and strictly
increasing, matching the usual ``Delta_{I,J}`` labelling.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class ScalarSyntaxError(ValueError):
    """Raised for a malformed scalar literal; ``offset`` is the bad character."""

    def __init__(self, text: str, offset: int, message: str):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset} in {text!r}")


class SizeMismatchError(ValueError):
    pass


class FactorizationError(ArithmeticError):
    pass


class NoLDUError(FactorizationError):
    """The ``k``-th leading principal minor vanishes (``k`` is 1-based)."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"leading principal minor {k} is zero; no LDU decomposition")


class SingularMatrixError(FactorizationError):
    def __init__(self, k: int | None = None):
        self.k = k
        msg = "matrix is singular"
        if k is not None:
            msg += f" (leading principal minor {k} is zero)"
        super().__init__(msg)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class GaussianRational:
    """Complex number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("complex real part with nonzero imaginary part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact; use GaussianRational")
        return cls(x)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def sign(self) -> int:
        """Sign of a real value; undefined (``ValueError``) off the real axis."""
        if self.im != 0:
            raise ValueError(f"sign of non-real value {self}")
        return (self.re > 0) - (self.re < 0)

    def is_positive(self) -> bool:
        return self.im == 0 and self.re > 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if b == 0 and d == 0:
                return GaussianRational(a * c, 0)
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(i)")
        c, d = other.re, other.im
        if d == 0:
            return GaussianRational(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** -k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical text: ``"p/q"`` for reals, ``"a/b+c/di"`` otherwise."""
    if z.im == 0:
        return _fmt_fraction(z.re)
    sign = "-" if z.im < 0 else "+"
    return f"{_fmt_fraction(z.re)}{sign}{_fmt_fraction(abs(z.im))}i"


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``"3"``, ``"-1/2"``, ``"0+1/1i"``, ``"2-i"``, ``"1/3i"`` exactly."""
    s = text
    n = len(s)
    pos = 0

    def number(pos):
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        if pos == start:
            return None, pos
        num = int(s[start:pos])
        if pos < n and s[pos] == "/":
            pos += 1
            dstart = pos
            while pos < n and s[pos].isdigit():
                pos += 1
            if pos == dstart:
                raise ScalarSyntaxError(text, pos, "expected denominator digits")
            den = int(s[dstart:pos])
            if den == 0:
                raise ScalarSyntaxError(text, dstart, "zero denominator")
            return Fraction(num, den), pos
        return Fraction(num), pos

    if n == 0:
        raise ScalarSyntaxError(text, 0, "empty scalar")
    sign = 1
    if s[pos] in "+-":
        sign = -1 if s[pos] == "-" else 1
        pos += 1
    first, pos = number(pos)
    if pos == n:
        if first is None:
            raise ScalarSyntaxError(text, pos, "expected digits")
        return GaussianRational(sign * first)
    if s[pos] == "i":
        if pos + 1 != n:
            raise ScalarSyntaxError(text, pos + 1, "trailing characters")
        return GaussianRational(0, sign * (first if first is not None else 1))
    if first is None:
        raise ScalarSyntaxError(text, pos, "expected digits")
    if s[pos] not in "+-":
        raise ScalarSyntaxError(text, pos, f"unexpected character {s[pos]!r}")
    isign = -1 if s[pos] == "-" else 1
    pos += 1
    second, pos = number(pos)
    if pos >= n or s[pos] != "i":
        raise ScalarSyntaxError(text, pos, "expected 'i' after imaginary part")
    if pos + 1 != n:
        raise ScalarSyntaxError(text, pos + 1, "trailing characters")
    im = second if second is not None else Fraction(1)
    return GaussianRational(sign * first, isign * im)


class Matrix:
    """Immutable dense matrix of :class:`GaussianRational` entries."""

    __slots__ = ("n_rows", "n_cols", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "n_rows", len(data))
        object.__setattr__(self, "n_cols", width)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> Matrix:
        return cls([[ZERO] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        """Row-major flat view."""
        return tuple(itertools.chain.from_iterable(self.rows))

    def __getitem__(self, ij) -> GaussianRational:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.rows))
        return self._hash

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.n_cols != other.n_rows:
            raise SizeMismatchError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by {other.n_rows}x{other.n_cols}"
            )
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out_row = []
            for col in cols:
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out)

    def __add__(self, other: Matrix) -> Matrix:
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise SizeMismatchError("shape mismatch in addition")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise SizeMismatchError("shape mismatch in subtraction")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> Matrix:
        c = GaussianRational.coerce(c)
        return Matrix([[c * a for a in r] for r in self.rows])

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows))

    def conjugate_transpose(self) -> Matrix:
        return Matrix([[a.conjugate() for a in col] for col in zip(*self.rows)])

    def tolist(self) -> list[list[str]]:
        return [[format_scalar(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"


def product(matrices: Iterable[Matrix], n: int) -> Matrix:
    result = Matrix.identity(n)
    for m in matrices:
        result = result @ m
    return result


# -- determinants -----------------------------------------------------------

def det_laplace(rows: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Cofactor expansion along the first row (skips zero entries)."""
    k = len(rows)
    if k == 0:
        return ONE
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * det_laplace(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_bareiss(rows: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Fraction-free (Bareiss) elimination with row pivoting."""
    a = [list(r) for r in rows]
    k = len(a)
    if k == 0:
        return ONE
    sign = 1
    prev = ONE
    for p in range(k - 1):
        if not a[p][p]:
            for r in range(p + 1, k):
                if a[r][p]:
                    a[p], a[r] = a[r], a[p]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = a[p][p]
        for i in range(p + 1, k):
            aip = a[i][p]
            row_i, row_p = a[i], a[p]
            for j in range(p + 1, k):
                row_i[j] = (piv * row_i[j] - aip * row_p[j]) / prev
            row_i[p] = ZERO
        prev = piv
    d = a[k - 1][k - 1]
    return d if sign > 0 else -d


def determinant(M: Matrix) -> GaussianRational:
    if not M.is_square:
        raise SizeMismatchError("determinant of a non-square matrix")
    return det_laplace(M.rows) if M.n_rows <= 4 else det_bareiss(M.rows)


def _check_index_set(idx: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    idx = tuple(idx)
    for a in idx:
        if not isinstance(a, int) or not 1 <= a <= n:
            raise IndexError(f"{name} index {a!r} outside [1, {n}]")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise IndexError(f"{name} indices must be strictly increasing: {idx}")
    return idx


def submatrix_rows(M: Matrix, I: Sequence[int], J: Sequence[int]) -> list[list[GaussianRational]]:
    return [[M.rows[i - 1][j - 1] for j in J] for i in I]


def minor(M: Matrix, I: Sequence[int], J: Sequence[int]) -> GaussianRational:
    """``Delta_{I,J}(M)`` for 1-based, strictly increasing row/column sets.

    Laplace expansion up to size 4, Bareiss elimination above that.  The
    empty minor is 1.
    """
    if not M.is_square:
        raise SizeMismatchError("minor() expects a square matrix")
    I = _check_index_set(I, M.n_rows, "row")
    J = _check_index_set(J, M.n_cols, "column")
    if len(I) != len(J):
        raise SizeMismatchError(f"|I| = {len(I)} but |J| = {len(J)}")
    rows = submatrix_rows(M, I, J)
    return det_laplace(rows) if len(I) <= 4 else det_bareiss(rows)


def all_minors(M: Matrix) -> dict[tuple[tuple[int, ...], tuple[int, ...]], GaussianRational]:
    """Every nonempty minor, keyed by ``(I, J)``."""
    n = M.n_rows
    out = {}
    for k in range(1, n + 1):
        for I in itertools.combinations(range(1, n + 1), k):
            for J in itertools.combinations(range(1, n + 1), k):
                out[I, J] = minor(M, I, J)
    return out


def leading_principal_minors(M: Matrix) -> tuple[GaussianRational, ...]:
    if not M.is_square:
        raise SizeMismatchError("leading principal minors need a square matrix")
    return tuple(minor(M, range(1, k + 1), range(1, k + 1)) for k in range(1, M.n_rows + 1))


def is_hermitian(M: Matrix) -> bool:
    return M.is_square and M == M.conjugate_transpose()


# -- positive definiteness ---------------------------------------------------

class Reason(str, enum.Enum):
    POSITIVE_DEFINITE = "positive-definite"
    NOT_HERMITIAN = "not-hermitian"
    ZERO_MINOR = "zero-minor"
    NEGATIVE_MINOR = "negative-minor"
    ZERO_LEADING_MINOR = "zero-leading-minor"
    NON_POSITIVE_LINE_WEIGHT = "non-positive-line-weight"
    NON_POSITIVE_CLUSTER_VALUE = "non-positive-cluster-value"


@dataclass(frozen=True)
class OracleVerdict:
    is_pd: bool
    reason: Reason
    witness: int | None = None
    minors: tuple[GaussianRational, ...] = ()


def pd_oracle(M: Matrix) -> OracleVerdict:
    """Sylvester's criterion: Hermitian with every leading principal minor > 0."""
    if not is_hermitian(M):
        return OracleVerdict(False, Reason.NOT_HERMITIAN)
    minors = leading_principal_minors(M)
    for k, d in enumerate(minors, start=1):
        # minors of a Hermitian matrix are real
        assert d.is_real, f"non-real leading minor {d} of a Hermitian matrix"
        if d.re == 0:
            return OracleVerdict(False, Reason.ZERO_MINOR, k, minors)
        if d.re < 0:
            return OracleVerdict(False, Reason.NEGATIVE_MINOR, k, minors)
    return OracleVerdict(True, Reason.POSITIVE_DEFINITE, None, minors)


# -- factorizations ----------------------------------------------------------

def ldu_decompose(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Doolittle ``M = L D U`` with unit triangular ``L``, ``U``.

    Raises :class:`NoLDUError` at the first vanishing leading principal
    minor of an invertible matrix and :class:`SingularMatrixError` when
    ``M`` itself is singular.
    """
    if not M.is_square:
        raise SizeMismatchError("LDU needs a square matrix")
    n = M.n_rows
    a = [list(r) for r in M.rows]
    L = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    U = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    d = []
    for k in range(n):
        piv = a[k][k]
        if not piv:
            if not determinant(M):
                raise SingularMatrixError(k + 1)
            raise NoLDUError(k + 1)
        d.append(piv)
        for i in range(k + 1, n):
            L[i][k] = a[i][k] / piv
        for j in range(k + 1, n):
            U[k][j] = a[k][j] / piv
        for i in range(k + 1, n):
            lik = L[i][k]
            if not lik:
                continue
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - lik * a[k][j]
    return Matrix(L), Matrix.diagonal(d), Matrix(U)


def rank_factorization(M: Matrix) -> tuple[Matrix, int, Matrix]:
    """``M = M1 @ diag(I_r, 0) @ M2`` with ``M1``, ``M2`` invertible.

    Full Gauss-Jordan reduction; row operations are folded into ``M1`` and
    column operations into ``M2`` as their inverses, so the invariant
    ``M == M1 @ current @ M2`` holds at every step.
    """
    if not M.is_square:
        raise SizeMismatchError("rank factorization needs a square matrix")
    n = M.n_rows
    cur = [list(r) for r in M.rows]
    M1 = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    M2 = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    r = 0
    for p in range(n):
        pivot = next(((i, j) for i in range(p, n) for j in range(p, n) if cur[i][j]), None)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != p:
            # cur <- P cur ; M1 <- M1 P^-1 (P is its own inverse: swap columns of M1)
            cur[p], cur[pi] = cur[pi], cur[p]
            for row in M1:
                row[p], row[pi] = row[pi], row[p]
        if pj != p:
            # cur <- cur Q ; M2 <- Q^-1 M2 (swap rows of M2)
            for row in cur:
                row[p], row[pj] = row[pj], row[p]
            M2[p], M2[pj] = M2[pj], M2[p]
        piv = cur[p][p]
        # scale row p by 1/piv; M1 column p absorbs piv
        cur[p] = [x / piv for x in cur[p]]
        for row in M1:
            row[p] = row[p] * piv
        for i in range(n):
            if i == p or not cur[i][p]:
                continue
            c = cur[i][p]
            # row_i -= c * row_p ; M1 gains column_p += c * column_i
            cur[i] = [x - c * y for x, y in zip(cur[i], cur[p])]
            for row in M1:
                row[p] = row[p] + c * row[i]
        for j in range(p + 1, n):
            c = cur[p][j]
            if not c:
                continue
            # col_j -= c * col_p ; M2 gains row_p += c * row_j
            for row in cur:
                row[j] = row[j] - c * row[p]
            M2[p] = [x + c * y for x, y in zip(M2[p], M2[j])]
        r += 1
    return Matrix(M1), r, Matrix(M2)


def rank(M: Matrix) -> int:
    return rank_factorization(M)[1]
