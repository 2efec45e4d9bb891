"""Exact dense linear algebra over the integers and rationals.

This module is the arithmetic substrate for the rest of the package:
Hermite and Smith normal forms together with the transformation matrices
that witness them, integer kernel lattices in a canonical basis, lattice
saturation, deterministic rational solves, greedy column selection and
exact inverses.

Everything is a pure function on immutable values, and all arithmetic is
arbitrary precision (Python ints and ``fractions.Fraction``); nothing here
ever rounds.  Matrices are small and dense, so the classical quadratic
algorithms are used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence


def _identity_lists(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _sub_row(rows: list[list[int]], i: int, j: int, f: int) -> None:
    """rows[i] -= f * rows[j], in place."""
    if f:
        rows[i] = [a - f * b for a, b in zip(rows[i], rows[j])]


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable row-major matrix over the integers.

    Entries are plain Python ints, so the intermediate growth that occurs
    during normal form computations can never overflow.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(f"expected rows of width {self.cols}, got {len(row)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("cannot infer the column count of an empty matrix; pass cols")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def take(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "IntegerMatrix":
        """Submatrix with the given rows and columns, in the given order."""
        data = tuple(tuple(self.entries[i][j] for j in col_indices) for i in row_indices)
        return IntegerMatrix(len(row_indices), len(col_indices), data)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError(f"expected a vector of length {self.cols}, got {len(v)}")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        data = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows)
        )
        return IntegerMatrix(self.rows, other.cols, data)

    def to_rational(self) -> "RationalMatrix":
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(tuple(Fraction(x) for x in row) for row in self.entries),
        )

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable row-major matrix over the rationals.

    ``fractions.Fraction`` keeps entries in lowest terms with positive
    denominators, which is exactly the normalization wanted here.
    """

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(f"expected rows of width {self.cols}, got {len(row)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]], cols: Optional[int] = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("cannot infer the column count of an empty matrix; pass cols")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def __matmul__(self, other: "RationalMatrix | IntegerMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        data = tuple(
            tuple(sum((self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                      start=Fraction(0))
                  for j in range(other.cols))
            for i in range(self.rows)
        )
        return RationalMatrix(self.rows, other.cols, data)


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a sublattice of Z^n in a canonical echelon form.

    The stored vectors are the nonzero rows of the Hermite normal form of
    any spanning set, so two equal lattices always have identical
    representations and lattice equality is plain ``==``.  Build instances
    through :meth:`spanning`.
    """

    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError(f"expected vectors of length {self.ambient_dim}, got {len(v)}")

    @classmethod
    def spanning(cls, vectors: Sequence[Sequence[int]], ambient_dim: int) -> "LatticeBasis":
        """Canonical basis of the lattice generated by ``vectors``."""
        mat = IntegerMatrix.from_rows(vectors, cols=ambient_dim)
        h, _ = hermite_normal_form(mat)
        return cls(ambient_dim, tuple(row for row in h.entries if any(row)))

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def contains(self, v: Sequence[int]) -> bool:
        """Exact membership test against the echelon basis."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"expected a vector of length {self.ambient_dim}, got {len(v)}")
        w = [int(x) for x in v]
        for row in self.vectors:
            pivot_col = next(k for k, x in enumerate(row) if x)
            q, rem = divmod(w[pivot_col], row[pivot_col])
            if rem:
                return False
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return not any(w)


@dataclass(frozen=True)
class SmithDecomposition:
    """Smith normal form ``D = P @ M @ Q`` of an integer matrix ``M``.

    ``P`` and ``Q`` are unimodular, ``D`` is diagonal with non-negative
    entries satisfying the divisibility chain d1 | d2 | ... with zeros
    trailing.
    """

    D: IntegerMatrix
    P: IntegerMatrix
    Q: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for k in range(min(self.D.rows, self.D.cols)) if self.D.entries[k][k])


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form with its unimodular witness.

    Returns ``(H, U)`` with ``U @ M == H``, ``|det U| == 1``, ``H`` in upper
    echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  This form is unique for the row lattice
    of ``M``, which is what makes it usable as a canonical representative.
    """
    h = [list(row) for row in m.entries]
    u = _identity_lists(m.rows)
    pivot_row = 0
    for col in range(m.cols):
        # Euclid on the column: shrink entries at and below pivot_row until
        # a single nonzero survives in the pivot position.
        while True:
            nonzero = [r for r in range(pivot_row, m.rows) if h[r][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda r: (abs(h[r][col]), r))
            if best != pivot_row:
                h[pivot_row], h[best] = h[best], h[pivot_row]
                u[pivot_row], u[best] = u[best], u[pivot_row]
            clean = True
            for r in range(pivot_row + 1, m.rows):
                if h[r][col]:
                    f = h[r][col] // h[pivot_row][col]
                    _sub_row(h, r, pivot_row, f)
                    _sub_row(u, r, pivot_row, f)
                    if h[r][col]:
                        clean = False
            if clean:
                break
        if pivot_row < m.rows and h[pivot_row][col]:
            if h[pivot_row][col] < 0:
                h[pivot_row] = [-x for x in h[pivot_row]]
                u[pivot_row] = [-x for x in u[pivot_row]]
            for r in range(pivot_row):
                f = h[r][col] // h[pivot_row][col]
                _sub_row(h, r, pivot_row, f)
                _sub_row(u, r, pivot_row, f)
            pivot_row += 1
    H = IntegerMatrix.from_rows(h, cols=m.cols)
    U = IntegerMatrix.from_rows(u, cols=m.rows)
    return H, U


def smith_normal_form(m: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with both unimodular transformations.

    The returned decomposition satisfies ``D == P @ M @ Q`` exactly; the
    function asserts this before returning.
    """
    nrows, ncols = m.rows, m.cols
    d = [list(row) for row in m.entries]
    p = _identity_lists(nrows)
    q = _identity_lists(ncols)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            d[i], d[j] = d[j], d[i]
            p[i], p[j] = p[j], p[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in q:
                row[i], row[j] = row[j], row[i]

    def col_sub(i: int, j: int, f: int) -> None:
        # col_i -= f * col_j
        if f:
            for row in d:
                row[i] -= f * row[j]
            for row in q:
                row[i] -= f * row[j]

    def pivot_to(t: int) -> bool:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        return True

    def diagonalize(start: int) -> None:
        t = start
        while t < min(nrows, ncols):
            if not pivot_to(t):
                break
            while True:
                dirty = False
                for i in range(t + 1, nrows):
                    if d[i][t]:
                        f = d[i][t] // d[t][t]
                        _sub_row(d, i, t, f)
                        _sub_row(p, i, t, f)
                        if d[i][t]:
                            dirty = True
                for j in range(t + 1, ncols):
                    if d[t][j]:
                        col_sub(j, t, d[t][j] // d[t][t])
                        if d[t][j]:
                            dirty = True
                if not dirty:
                    break
                pivot_to(t)
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                p[t] = [-x for x in p[t]]
            t += 1

    diagonalize(0)
    rank_ = sum(1 for k in range(min(nrows, ncols)) if d[k][k])
    # Enforce the divisibility chain; each fix replaces a violating pair
    # with (gcd, lcm), so the loop terminates.
    while True:
        for k in range(rank_ - 1):
            if d[k + 1][k + 1] % d[k][k]:
                col_sub(k, k + 1, -1)
                diagonalize(k)
                break
        else:
            break

    D = IntegerMatrix.from_rows(d, cols=ncols)
    P = IntegerMatrix.from_rows(p, cols=nrows)
    Q = IntegerMatrix.from_rows(q, cols=ncols)
    assert (P @ m) @ Q == D
    assert abs(determinant(P)) == 1 and abs(determinant(Q)) == 1
    return SmithDecomposition(D, P, Q)


class _RationalEchelon:
    """Incremental fully reduced echelon over Q, for rank-growth tests.

    Stored rows keep the Gauss-Jordan invariant (zero at every other
    stored pivot), so candidate reduction is order independent.
    """

    def __init__(self) -> None:
        self.rows: list[tuple[int, list[Fraction]]] = []

    def try_add(self, vec: Sequence[int]) -> bool:
        v = [Fraction(x) for x in vec]
        for pivot_col, row in self.rows:
            f = v[pivot_col]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        pivot_col = next((k for k, x in enumerate(v) if x), None)
        if pivot_col is None:
            return False
        inv = v[pivot_col]
        new_row = [x / inv for x in v]
        for idx, (pc, row) in enumerate(self.rows):
            f = row[pivot_col]
            if f:
                self.rows[idx] = (pc, [a - f * b for a, b in zip(row, new_row)])
        self.rows.append((pivot_col, new_row))
        return True


def rank(m: IntegerMatrix) -> int:
    """Rank over the rationals."""
    echelon = _RationalEchelon()
    return sum(1 for i in range(m.rows) if echelon.try_add(m.entries[i]))


def independent_rows(m: IntegerMatrix) -> tuple[int, ...]:
    """Greedy row basis: keep rows in increasing index while the rank grows."""
    echelon = _RationalEchelon()
    return tuple(i for i in range(m.rows) if echelon.try_add(m.entries[i]))


def kernel_lattice(m: IntegerMatrix) -> LatticeBasis:
    """Canonical basis of the integer kernel ``{u : M u = 0}``.

    The kernel of an integer matrix is automatically saturated; the basis
    is read off the right Smith transformation and has ``cols - rank(M)``
    vectors.
    """
    snf = smith_normal_form(m)
    r = snf.rank
    vectors = [snf.Q.column(j) for j in range(r, m.cols)]
    return LatticeBasis.spanning(vectors, m.cols)


def saturate_lattice(basis: LatticeBasis) -> LatticeBasis:
    """Saturation ``span_Q(L) intersect Z^n`` of a lattice ``L``.

    Computed as the integer kernel of a matrix whose rows span the
    rational annihilator of the lattice, so the result contains the input
    with finite index and the operation is idempotent.
    """
    n = basis.ambient_dim
    vectors_as_rows = IntegerMatrix.from_rows(basis.vectors, cols=n)
    annihilator = kernel_lattice(vectors_as_rows)
    a = IntegerMatrix.from_rows(annihilator.vectors, cols=n)
    return kernel_lattice(a)


def solve_row_rational(
    a: IntegerMatrix,
    rhs: Sequence[Fraction | int],
    column_mask: Optional[Iterable[int]] = None,
) -> Optional[tuple[Fraction, ...]]:
    """Solve ``(omega @ A)[i] == rhs[i]`` for ``i`` in the mask.

    Args:
        a: coefficient matrix; omega ranges over row vectors of length
           ``a.rows``.
        rhs: one value per column of ``a`` (only masked entries are read).
        column_mask: column indices that constrain the solution; defaults
           to all columns.

    Returns:
        The deterministic particular solution with free coordinates set to
        zero, or None when the system is inconsistent.
    """
    m = a.rows
    if column_mask is None:
        mask = list(range(a.cols))
    else:
        mask = sorted(set(column_mask))
        for c in mask:
            if not 0 <= c < a.cols:
                raise ValueError(f"column index {c} out of range")
    if len(rhs) != a.cols:
        raise ValueError(f"expected a right-hand side of length {a.cols}, got {len(rhs)}")

    rows = [[Fraction(a.entries[k][c]) for k in range(m)] + [Fraction(rhs[c])] for c in mask]
    pivots: list[int] = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][m]:
            return None
    omega = [Fraction(0)] * m
    for idx, c in enumerate(pivots):
        omega[c] = rows[idx][m]
    return tuple(omega)


def extend_to_basis(a: IntegerMatrix, i: int) -> tuple[int, ...]:
    """Extend column ``i`` to a nonsingular column selection.

    Requires ``rank(a) == a.rows`` and a nonzero column ``i``.  The scan is
    deterministic: start from ``{i}`` and walk the remaining columns in
    increasing index order, keeping a column iff it increases the rank.
    The returned tuple lists ``i`` first and then the kept columns in
    increasing order.
    """
    if not 0 <= i < a.cols:
        raise ValueError(f"column index {i} out of range")
    if not any(a.column(i)):
        raise ValueError(f"column {i} is zero and cannot be extended to a basis")
    if rank(a) != a.rows:
        raise ValueError(f"matrix rank is below its row count {a.rows}")
    echelon = _RationalEchelon()
    echelon.try_add(a.column(i))
    selected = [i]
    for j in range(a.cols):
        if len(selected) == a.rows:
            break
        if j == i:
            continue
        if echelon.try_add(a.column(j)):
            selected.append(j)
    assert len(selected) == a.rows
    return tuple(selected)


def inverse_and_clear(a: IntegerMatrix) -> tuple[RationalMatrix, int]:
    """Exact inverse of a nonsingular square matrix, with its denominator.

    Returns ``(B, q)`` where ``B = a^{-1}`` over Q and ``q`` is the least
    common multiple of the denominators of ``B`` (so ``q * B`` is integral;
    callers that multiply ``B`` by something else may be able to clear with
    a smaller factor, see :func:`clear_denominators`).
    """
    if a.rows != a.cols:
        raise ValueError("only square matrices can be inverted")
    n = a.rows
    aug = [[Fraction(x) for x in a.entries[i]] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    inverse = RationalMatrix.from_rows([row[n:] for row in aug], cols=n)
    q = 1
    for row in inverse.entries:
        for x in row:
            q = lcm(q, x.denominator)
    return inverse, q


def clear_denominators(m: RationalMatrix) -> tuple[IntegerMatrix, int]:
    """Least positive integer ``c`` with ``c * m`` integral, and that product."""
    c = 1
    for row in m.entries:
        for x in row:
            c = lcm(c, x.denominator)
    cleared = IntegerMatrix(
        m.rows,
        m.cols,
        tuple(tuple(int(x * c) for x in row) for row in m.entries),
    )
    return cleared, c
