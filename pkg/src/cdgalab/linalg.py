"""Exact dense linear algebra over a cyclotomic field.

Everything is deterministic: Gauss-Jordan with first-nonzero pivoting, free
variables set to zero in particular solutions.  Internally rows are handed to
the arithmetic kernel in flat integer form; see ``_kernel_py`` for the layout.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from ._backend import kernel
from .field import CycloField, FieldElement


def _inv_cv(field: CycloField):
    def inv(cv):
        return FieldElement(field, cv).inverse().cv
    return inv


def _flatten(field, elements) -> list:
    row = []
    for e in elements:
        row.extend(e.cv)
    return row


def _unflatten(field, flat, ncols) -> list[FieldElement]:
    w = field.phi + 1
    return [FieldElement(field, tuple(flat[j * w:(j + 1) * w])) for j in range(ncols)]


class Matrix:
    """Dense row-major matrix of field elements."""

    def __init__(self, field: CycloField, nrows: int, ncols: int, entries):
        entries = list(entries)
        if len(entries) != nrows * ncols:
            raise ValueError("entry count does not match the shape")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def from_rows(cls, field: CycloField, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(field.element(e) for e in r)
        return cls(field, len(rows), ncols, flat)

    @classmethod
    def zero(cls, field: CycloField, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [field.zero] * (nrows * ncols))

    @classmethod
    def identity(cls, field: CycloField, n: int) -> "Matrix":
        m = cls.zero(field, n, n)
        for i in range(n):
            m.entries[i * n + i] = field.one
        return m

    def entry(self, i: int, j: int) -> FieldElement:
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> list[FieldElement]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def rows(self) -> list[list[FieldElement]]:
        return [self.row(i) for i in range(self.nrows)]

    def col(self, j: int) -> list[FieldElement]:
        return [self.entries[i * self.ncols + j] for i in range(self.nrows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows,
                      [self.entry(i, j) for j in range(self.ncols) for i in range(self.nrows)])

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            for j in range(other.ncols):
                s = self.field.zero
                for k in range(self.ncols):
                    a = self.entry(i, k)
                    if a.is_zero():
                        continue
                    s = s + a * other.entry(k, j)
                out.append(s)
        return Matrix(self.field, self.nrows, other.ncols, out)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.entries == other.entries)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over Q(zeta_{self.field.n}))"

    def _flat_rows(self) -> list[list[int]]:
        return [_flatten(self.field, self.row(i)) for i in range(self.nrows)]


class RrefResult(NamedTuple):
    rank: int
    reduced: Matrix
    pivots: list[int]


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form (Gauss-Jordan, deterministic pivot choice)."""
    field = m.field
    flat = m._flat_rows()
    rank, pivots = kernel.rref(flat, m.ncols, m.ncols, field.phi, field.red,
                               _inv_cv(field))
    entries = []
    for row in flat:
        entries.extend(_unflatten(field, row, m.ncols))
    return RrefResult(rank, Matrix(field, m.nrows, m.ncols, entries), pivots)


class Eliminator:
    """Row-space machinery for a matrix A: one elimination of [A | I] gives
    the image basis, the left kernel, and repeated solves of x * A = b."""

    def __init__(self, a: Matrix):
        self.field = a.field
        self.ncols = a.ncols
        self.nrows = a.nrows
        field = a.field
        phi = field.phi
        w = phi + 1
        ident = [0] * (a.nrows * w)
        for j in range(a.nrows):
            ident[j * w + phi] = 1  # canonical zero cv has denominator 1
        rows = []
        for i in range(a.nrows):
            row = _flatten(field, a.row(i))
            aug = list(ident)
            aug[i * w] = 1
            rows.append(row + aug)
        self.width = a.ncols + a.nrows
        self.rank, self.pivots = kernel.rref(
            rows, self.width, a.ncols, phi, field.red, _inv_cv(field))
        self._rows = rows

    def _r_part(self, i: int) -> list[int]:
        w = self.field.phi + 1
        return self._rows[i][: self.ncols * w]

    def _e_part(self, i: int) -> list[int]:
        w = self.field.phi + 1
        return self._rows[i][self.ncols * w:]

    def image_basis(self) -> list[list[FieldElement]]:
        """Echelon basis of the row space of A."""
        return [_unflatten(self.field, self._r_part(i), self.ncols)
                for i in range(self.rank)]

    def kernel_basis(self) -> list[list[FieldElement]]:
        """Basis of the left kernel {x : x * A = 0}."""
        return [_unflatten(self.field, self._e_part(i), self.nrows)
                for i in range(self.rank, self.nrows)]

    def solve_left(self, b) -> Optional[list[FieldElement]]:
        """One x with x * A = b, or None; free coefficients are zero."""
        field = self.field
        phi = field.phi
        rem = _flatten(field, [field.element(e) for e in b])
        if len(rem) != self.ncols * (phi + 1):
            raise ValueError("dimension mismatch")
        coeffs = kernel.reduce_against(
            rem, [self._r_part(i) for i in range(self.rank)], self.pivots,
            self.ncols, phi, field.red)
        if not kernel.row_is_zero(rem, self.ncols, phi):
            return None
        w = phi + 1
        out = [0] * (self.nrows * w)
        for j in range(self.nrows):
            out[j * w + phi] = 1
        for c, i in zip(coeffs, range(self.rank)):
            kernel.row_axpy(out, self._e_part(i), c, self.nrows, phi, field.red)
        return _unflatten(field, out, self.nrows)

    def coordinates(self, b) -> Optional[list[FieldElement]]:
        """Coefficients of b against the echelon image basis, or None."""
        field = self.field
        phi = field.phi
        rem = _flatten(field, [field.element(e) for e in b])
        coeffs = kernel.reduce_against(
            rem, [self._r_part(i) for i in range(self.rank)], self.pivots,
            self.ncols, phi, field.red)
        if not kernel.row_is_zero(rem, self.ncols, phi):
            return None
        return [FieldElement(field, c) for c in coeffs]


def solve(a: Matrix, b) -> Optional[list[FieldElement]]:
    """One exact solution of A x = b (columns are the unknowns), or None.

    Free variables are set to zero under the deterministic pivot order.
    """
    return Eliminator(a.transpose()).solve_left(b)


def kernel_basis(a: Matrix) -> list[list[FieldElement]]:
    """Basis of the right null space {x : A x = 0}."""
    return Eliminator(a.transpose()).kernel_basis()


class Subspace:
    """Subspace of F^n held as an echelon (rref) row basis."""

    def __init__(self, field: CycloField, ambient_dim: int, basis: Matrix):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_vectors(cls, field: CycloField, ambient_dim: int, vectors) -> "Subspace":
        vectors = list(vectors)
        if not vectors:
            return cls(field, ambient_dim, Matrix.zero(field, 0, ambient_dim))
        m = Matrix.from_rows(field, vectors)
        if m.ncols != ambient_dim:
            raise ValueError("vector length does not match the ambient dimension")
        rank, red, _ = rref(m)
        rows = [red.row(i) for i in range(rank)]
        return cls(field, ambient_dim, Matrix.from_rows(field, rows)
                   if rows else Matrix.zero(field, 0, ambient_dim))

    @classmethod
    def full(cls, field: CycloField, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _pivots(self) -> list[int]:
        pivots = []
        for i in range(self.basis.nrows):
            for j in range(self.basis.ncols):
                if not self.basis.entry(i, j).is_zero():
                    pivots.append(j)
                    break
        return pivots

    def reduce(self, v) -> tuple[list[FieldElement], list[FieldElement]]:
        """(coefficients, remainder) of v against the echelon basis."""
        field = self.field
        phi = field.phi
        v = [field.element(e) for e in v]
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if self.dim == 0:
            return [], v
        rem = _flatten(field, v)
        rows = [_flatten(field, self.basis.row(i)) for i in range(self.dim)]
        coeffs = kernel.reduce_against(rem, rows, self._pivots(),
                                       self.ambient_dim, phi, field.red)
        return ([FieldElement(field, c) for c in coeffs],
                _unflatten(field, rem, self.ambient_dim))

    def coordinates(self, v) -> Optional[list[FieldElement]]:
        if self.is_full():
            return [self.field.element(e) for e in v]
        coeffs, rem = self.reduce(v)
        if any(not e.is_zero() for e in rem):
            return None
        return coeffs

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def row_vectors(self) -> list[list[FieldElement]]:
        return [self.basis.row(i) for i in range(self.dim)]


def membership(s: Subspace, v) -> bool:
    """Whether v lies in the subspace."""
    return s.contains(v)


def quotient_basis(big: Subspace, small: Subspace) -> Subspace:
    """Echelon representatives of a complement of `small` inside `big`.

    Fails loudly when `small` is not contained in `big`.
    """
    if big.ambient_dim != small.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for row in small.row_vectors():
        if not big.contains(row):
            raise ValueError("small subspace is not contained in the big one")
    rem_rows = []
    for row in big.row_vectors():
        _, rem = small.reduce(row)
        if any(not e.is_zero() for e in rem):
            rem_rows.append(rem)
    out = Subspace.from_vectors(big.field, big.ambient_dim, rem_rows)
    assert out.dim == big.dim - small.dim
    return out
