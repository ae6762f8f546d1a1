"""Exact linear algebra over Q and over a real number field.

Rank and kernel computations run through fraction-free (Bareiss) Gaussian
elimination on integer rows, which keeps intermediate entries at the size of
minors of the input instead of letting fractions compound.  Systems with
number-field entries are handled by restriction of scalars: a K-linear
condition on a rational vector splits into `degree` rational conditions, one
per power-basis coordinate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .numberfield import AlgebraicReal, RealNumberField

_ZERO = Fraction(0)
_ONE = Fraction(1)


class QMatrix:
    """Immutable rational matrix (rows of Fractions)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix must be rectangular")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    def transpose(self) -> "QMatrix":
        return QMatrix(list(zip(*self.rows)))

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return QMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"


class KMatrix:
    """Immutable matrix over a real number field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: RealNumberField, rows):
        lifted = []
        for row in rows:
            out = []
            for x in row:
                if isinstance(x, AlgebraicReal):
                    if x.field != field:
                        raise ValueError("mixed number fields")
                    out.append(x)
                else:
                    out.append(field.from_rational(x))
            lifted.append(tuple(out))
        rows = tuple(lifted)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix must be rectangular")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def from_rational_rows(cls, field, rows) -> "KMatrix":
        return cls(field, rows)

    @classmethod
    def identity(cls, field, n: int) -> "KMatrix":
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def transpose(self) -> "KMatrix":
        return KMatrix(self.field, list(zip(*self.rows)))

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            other = KMatrix(self.field, other.rows)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        zero = self.field.zero()
        out = []
        for row in self.rows:
            out.append([sum((a * b for a, b in zip(row, col)), zero) for col in cols])
        return KMatrix(self.field, out)

    def __rmul__(self, other):
        if isinstance(other, QMatrix):
            return KMatrix(self.field, other.rows) * self
        return NotImplemented

    def __neg__(self):
        return KMatrix(self.field, [[-x for x in row] for row in self.rows])

    def apply(self, vec):
        vec = [
            v if isinstance(v, AlgebraicReal) else self.field.from_rational(v) for v in vec
        ]
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        zero = self.field.zero()
        return tuple(sum((a * b for a, b in zip(row, vec)), zero) for row in self.rows)

    def is_rational(self) -> bool:
        return all(x.is_rational() for row in self.rows for x in row)

    def to_qmatrix(self) -> QMatrix:
        return QMatrix([[x.as_rational() for x in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"KMatrix({self.nrows}x{self.ncols} over degree {self.field.degree})"


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------


def _integer_rows(matrix) -> list:
    """Clear denominators row by row; preserves rank and kernel."""
    rows = matrix.rows if isinstance(matrix, QMatrix) else matrix
    out = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_echelon(rows):
    """In-place fraction-free row echelon form; returns the pivot columns.

    Entries stay integral throughout: after step k every entry is a
    (k+1)x(k+1) minor of the input (Sylvester's identity), so the division by
    the previous pivot is exact.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            ri, rp = rows[i], rows[r]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - f * rp[j]) // prev
            ri[c] = 0
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(matrix) -> int:
    """Exact rank over Q."""
    rows = _integer_rows(matrix)
    if not rows:
        return 0
    return len(bareiss_echelon(rows))


def kernel_basis(matrix):
    """Basis of the right kernel over Q, in the canonical echelon form.

    Each free column yields one vector with a 1 in that slot and zeros in the
    other free slots; pivot slots are back-substituted.  Deterministic for a
    given matrix.
    """
    rows = _integer_rows(matrix)
    ncols = len(rows[0]) if rows else 0
    pivots = bareiss_echelon(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [_ZERO] * ncols
        vec[free] = _ONE
        for i in reversed(range(len(pivots))):
            p = pivots[i]
            s = sum((Fraction(rows[i][j]) * vec[j] for j in range(p + 1, ncols)), _ZERO)
            vec[p] = -s / rows[i][p]
        basis.append(tuple(vec))
    return basis


def solve(matrix, rhs):
    """One rational solution of M x = b, or None if inconsistent.

    Plain Gaussian elimination over Q; used for small coordinate systems, not
    hot paths.
    """
    rows = matrix.rows if isinstance(matrix, QMatrix) else matrix
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    nrows = len(aug)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = _ONE / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    sol = [_ZERO] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return tuple(sol)


def restrict_scalars(matrix: KMatrix) -> QMatrix:
    """Rational matrix with the same kernel on rational vectors.

    For a rational vector v, (M v)_i has `degree` power-basis coordinates,
    each a rational linear form in v; stacking those coordinate blocks gives
    a (degree * nrows) x ncols rational matrix.
    """
    d = matrix.field.degree
    blocks = []
    for k in range(d):
        for row in matrix.rows:
            blocks.append([x.coeffs[k] for x in row])
    return QMatrix(blocks)


def primitive_integer_vector(vec):
    """Scale a nonzero rational vector by a positive rational to a primitive
    integer vector (content 1).  The direction is preserved."""
    den = lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in ints)
