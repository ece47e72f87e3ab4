"""Exact square matrices and univariate polynomials over the toolkit's fields.

Polynomials in ``X`` are coefficient tuples ``(c_0, ..., c_n)`` in increasing
degree.  The characteristic polynomial uses Berkowitz's division-free
recursion, so it is valid in every characteristic.
"""

from __future__ import annotations

from .errors import BadShape, NonzeroRemainder, SingularMatrix


class Matrix:
    """Immutable ``dim x dim`` matrix with entries in ``field``."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field, rows):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise BadShape("matrix must be square")
        self.field = field
        self.rows = rows
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls.diag(field, [field.one] * n)

    @classmethod
    def diag(cls, field, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls(field, [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        field = blocks[0].field
        n = sum(b.dim for b in blocks)
        rows = [[field.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.dim
        return cls(field, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]!r})"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=0)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows)) if self.dim else self

    @property
    def T(self):
        return self.transpose()

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, [[c * x for x in r] for r in self.rows])

    def __add__(self, other):
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other):
        if self.dim != other.dim:
            raise BadShape(f"dimension mismatch {self.dim} vs {other.dim}")
        cols = list(zip(*other.rows))
        zero = self.field.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.field, out)

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inverse() ** (-e)
        out = Matrix.identity(self.field, self.dim)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse; raises SingularMatrix."""
        n = self.dim
        F = self.field
        a = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            a[col], a[piv] = a[piv], a[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    c = a[r][col]
                    a[r] = [x - c * y for x, y in zip(a[r], a[col])]
        return Matrix(F, [r[n:] for r in a])

    def det(self):
        c = charpoly(self)
        return c[0] if self.dim % 2 == 0 else -c[0]

    def is_invertible(self) -> bool:
        return bool(self.det())

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.dim) for j in range(self.dim) if i != j)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def map(self, fn, field) -> "Matrix":
        return Matrix(field, [[fn(x) for x in r] for r in self.rows])


def charpoly(M: Matrix) -> tuple:
    """Coefficients ``(c_0, ..., c_n)`` of det(X*I - M), with ``c_n = 1``.

    Berkowitz: peel off the first row and column, ``M = [[a, R], [C, A]]``;
    the characteristic vector of ``M`` is the lower-triangular Toeplitz matrix
    with first column ``(1, -a, -RC, -RAC, -RA^2C, ...)`` times that of ``A``.
    """
    n = M.dim
    F = M.field
    rows = M.rows
    # highest-degree-first vector of the trailing 0x0 block
    vec = [F.one]
    for k in range(n - 1, -1, -1):
        size = n - k  # size of current trailing block rows[k:], cols[k:]
        a = rows[k][k]
        R = rows[k][k + 1:]
        C = [rows[i][k] for i in range(k + 1, n)]
        A = [r[k + 1:] for r in rows[k + 1:]]
        toep = [F.one, -a]
        w = C
        for _ in range(size - 1):
            s = F.zero
            for x, y in zip(R, w):
                s = s + x * y
            toep.append(-s)
            w = [sum((A[i][j] * w[j] for j in range(len(w))), F.zero) for i in range(len(w))]
        # new vector has length size+1
        new = []
        for i in range(size + 1):
            acc = F.zero
            for j in range(min(i, size - 1) + 1):
                acc = acc + toep[i - j] * vec[j]
            new.append(acc)
        vec = new
    return tuple(reversed(vec))


# -- coefficient-tuple polynomials --

def poly_trim(p) -> tuple:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_mul(a, b, zero) -> tuple:
    if not a or not b:
        return ()
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def poly_from_roots(roots, one) -> tuple:
    """Coefficients of prod (X - r)."""
    p = (one,)
    zero = one - one
    for r in roots:
        p = poly_mul(p, (-r, one), zero)
    return p


def poly_divmod(P, C) -> tuple[tuple, tuple]:
    """Long division by the monic ``C``; returns (quotient, remainder)."""
    if not C or C[-1] != 1:
        raise ValueError("divisor must be monic")
    P = list(P)
    d = len(C) - 1
    if len(P) - 1 < d:
        return (), poly_trim(P)
    zero = P[-1] - P[-1]
    Q = [zero] * (len(P) - d)
    for k in range(len(P) - 1 - d, -1, -1):
        c = P[k + d]
        Q[k] = c
        if c:
            for i in range(d + 1):
                P[k + i] = P[k + i] - c * C[i]
    return tuple(Q), poly_trim(P[:d])


def divide_exact(P, C) -> tuple:
    """Quotient ``Q`` with ``P = Q*C``; raises NonzeroRemainder otherwise.

    Forward substitution on the unipotent band system whose columns are shifts
    of ``C`` is exactly this long division.
    """
    if len(C) > len(P):
        raise BadShape("deg C must not exceed deg P")
    Q, rem = poly_divmod(P, C)
    if rem:
        raise NonzeroRemainder(f"remainder {rem!r} is nonzero")
    return Q
