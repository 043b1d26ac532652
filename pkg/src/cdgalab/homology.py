"""Cohomology of a finite commutative differential graded algebra.

A ``CochainComplex`` is the whole algebra or a differential-stable family of
subspaces (one per degree, e.g. the invariants of a group action).  The
degree-by-degree computation produces exact Betti numbers, echelon-chosen
representatives, coordinates of classes, exactness witnesses, cup products
and the top-degree pairing scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import DGA, Algebra, Differential, GradedElement, apply_d, wedge
from .linalg import Eliminator, Matrix, Subspace


class CochainComplex:
    """A finite complex carved out of an algebra by per-degree subspaces.

    ``subspaces`` is None for the full algebra.  Coordinates of an element in
    degree k are taken in the subspace basis (the word basis when full).
    """

    def __init__(self, dga: DGA, subspaces: Optional[list[Subspace]] = None):
        self.dga = dga
        self.algebra = dga.algebra
        self.differential = dga.differential
        self.top = dga.algebra.top
        if subspaces is not None and len(subspaces) != self.top + 1:
            raise ValueError("need one subspace per degree 0..top")
        self.subspaces = subspaces
        self._d_matrices: dict[int, Matrix] = {}
        self._d_eliminators: dict[int, Eliminator] = {}

    # --- coordinates ---

    def dim(self, k: int) -> int:
        if k < 0 or k > self.top:
            return 0
        if self.subspaces is None:
            return self.algebra.dim(k)
        return self.subspaces[k].dim

    def is_full(self) -> bool:
        return self.subspaces is None

    def to_coords(self, x: GradedElement, k: int) -> list:
        """Coordinates of x in the degree-k basis of the complex; raises when
        x does not lie in the complex."""
        ambient = x.to_coords(k)
        if self.subspaces is None:
            return ambient
        coords = self.subspaces[k].coordinates(ambient)
        if coords is None:
            raise ValueError(f"element of degree {k} does not lie in the complex")
        return coords

    def contains(self, x: GradedElement, k: Optional[int] = None) -> bool:
        if x.is_zero():
            return True
        if k is None:
            k = x.degree()
            if k is None:
                return all(self.contains(x.homogeneous_part(j), j)
                           for j in range(self.top + 1))
        try:
            self.to_coords(x, k)
        except ValueError:
            return False
        return True

    def from_coords(self, k: int, coords) -> GradedElement:
        alg = self.algebra
        if self.subspaces is None:
            return GradedElement.from_coords(alg, k, coords)
        rows = self.subspaces[k].row_vectors()
        out = alg.zero()
        for c, row in zip(coords, rows):
            if not c.is_zero():
                out = out + GradedElement.from_coords(alg, k, row).scale(c)
        return out

    def basis_elements(self, k: int) -> list[GradedElement]:
        if self.subspaces is None:
            return [self.algebra.word_element(w) for w in self.algebra.basis(k)]
        return [GradedElement.from_coords(self.algebra, k, row)
                for row in self.subspaces[k].row_vectors()]

    # --- the differential in complex coordinates ---

    def d_matrix(self, k: int) -> Matrix:
        """Rows are the images of the degree-k basis, in degree-(k+1) coords."""
        if k not in self._d_matrices:
            field = self.algebra.field
            target_dim = self.dim(k + 1)
            rows = []
            for e in self.basis_elements(k):
                de = apply_d(self.differential, e)
                if de.is_zero():
                    rows.append([field.zero] * target_dim)
                else:
                    rows.append(self.to_coords(de, k + 1))
            if not rows:
                self._d_matrices[k] = Matrix.zero(field, 0, target_dim)
            else:
                self._d_matrices[k] = Matrix.from_rows(field, rows) \
                    if target_dim else Matrix.zero(field, len(rows), 0)
        return self._d_matrices[k]

    def d_eliminator(self, k: int) -> Eliminator:
        if k not in self._d_eliminators:
            self._d_eliminators[k] = Eliminator(self.d_matrix(k))
        return self._d_eliminators[k]

    def d(self, x: GradedElement) -> GradedElement:
        return apply_d(self.differential, x)


@dataclass
class CohomologyClass:
    table: "CohomologyTable"
    degree: int
    coords: tuple

    def representative(self) -> GradedElement:
        reps = self.table.representatives(self.degree)
        out = self.table.complex.algebra.zero()
        for c, r in zip(self.coords, reps):
            if not c.is_zero():
                out = out + r.scale(c)
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, CohomologyClass)
                and self.table is other.table
                and self.degree == other.degree
                and list(self.coords) == list(other.coords))


class CohomologyTable:
    """Betti numbers, representatives and witness solvers of a complex."""

    def __init__(self, complex_: CochainComplex):
        self.complex = complex_
        field = complex_.algebra.field
        self.betti: list[int] = []
        self._cocycles: list[Subspace] = []
        self._coboundaries: list[Subspace] = []
        self._reps: list[list[GradedElement]] = []
        self._class_eliminators: dict[int, Eliminator] = {}
        top = complex_.top
        for k in range(top + 1):
            dim_k = complex_.dim(k)
            el_k = complex_.d_eliminator(k)
            cocycles = Subspace.from_vectors(field, dim_k, el_k.kernel_basis()) \
                if dim_k else Subspace.from_vectors(field, 0, [])
            if k == 0:
                cob = Subspace.from_vectors(field, dim_k, [])
            else:
                el_prev = complex_.d_eliminator(k - 1)
                cob = Subspace.from_vectors(field, dim_k, el_prev.image_basis())
            from .linalg import quotient_basis
            q = quotient_basis(cocycles, cob)
            self._cocycles.append(cocycles)
            self._coboundaries.append(cob)
            self.betti.append(q.dim)
            self._reps.append(
                [complex_.from_coords(k, row) for row in q.row_vectors()])

    # --- tables ---

    @property
    def top(self) -> int:
        return self.complex.top

    def cocycles(self, k: int) -> Subspace:
        return self._cocycles[k]

    def coboundaries(self, k: int) -> Subspace:
        return self._coboundaries[k]

    def representatives(self, k: int) -> list[GradedElement]:
        return self._reps[k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    # --- classes ---

    def _check_closed(self, x: GradedElement, k: int):
        dx = self.complex.d(x)
        if not dx.is_zero():
            raise ValueError(f"element is not closed: d(x) = {dx}")
        if not self.complex.contains(x, k):
            raise ValueError("element does not lie in the complex")

    def _class_eliminator(self, k: int) -> Eliminator:
        # rows: coboundary basis then representatives; unique coefficients
        if k not in self._class_eliminators:
            field = self.complex.algebra.field
            rows = list(self._coboundaries[k].row_vectors())
            for r in self._reps[k]:
                rows.append(self.complex.to_coords(r, k))
            m = Matrix.from_rows(field, rows) if rows \
                else Matrix.zero(field, 0, self.complex.dim(k))
            self._class_eliminators[k] = Eliminator(m)
        return self._class_eliminators[k]

    def class_coords(self, x: GradedElement, degree: Optional[int] = None) -> tuple:
        """Coordinates of [x] in the representative basis of its degree."""
        field = self.complex.algebra.field
        if x.is_zero():
            if degree is None:
                raise ValueError("the zero element needs an explicit degree")
            return tuple([field.zero] * self.betti[degree])
        k = degree if degree is not None else x.degree()
        if k is None:
            raise ValueError("class_coords needs a homogeneous element")
        self._check_closed(x, k)
        sol = self._class_eliminator(k).solve_left(self.complex.to_coords(x, k))
        assert sol is not None, "closed element must reduce against cocycles"
        ncob = self._coboundaries[k].dim
        return tuple(sol[ncob:])

    def class_of(self, x: GradedElement, degree: Optional[int] = None) -> CohomologyClass:
        k = degree if degree is not None else x.degree()
        return CohomologyClass(self, k, self.class_coords(x, k))

    def class_representative(self, x: GradedElement, degree: Optional[int] = None) -> GradedElement:
        return self.class_of(x, degree).representative()

    def is_exact(self, x: GradedElement, degree: Optional[int] = None) -> Optional[GradedElement]:
        """A primitive xi with d(xi) = x, or None when [x] != 0.

        The primitive is the deterministic pivot solution inside the complex.
        """
        if x.is_zero():
            return self.complex.algebra.zero()
        k = degree if degree is not None else x.degree()
        if k is None:
            raise ValueError("is_exact needs a homogeneous element")
        self._check_closed(x, k)
        if k == 0:
            return None
        el = self.complex.d_eliminator(k - 1)
        sol = el.solve_left(self.complex.to_coords(x, k))
        if sol is None:
            return None
        return self.complex.from_coords(k - 1, sol)

    def cup(self, c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
        """Product of classes via representatives."""
        if c1.table is not self or c2.table is not self:
            raise ValueError("classes come from a different table")
        prod = wedge(c1.representative(), c2.representative())
        return self.class_of(prod, c1.degree + c2.degree)


def cohomology(dga_or_complex) -> CohomologyTable:
    """Cohomology table of a DGA or of a prepared cochain complex."""
    if isinstance(dga_or_complex, CochainComplex):
        return CohomologyTable(dga_or_complex)
    if isinstance(dga_or_complex, DGA):
        return CohomologyTable(CochainComplex(dga_or_complex))
    raise TypeError("expected a DGA or a CochainComplex")


def top_scalar(x: GradedElement, volume: GradedElement):
    """Coefficient of ``x`` on the declared volume element.

    ``volume`` must be a single-term element of the top degree; the scalar is
    reported relative to that term as written (its sign and coefficient are
    divided out), so conventions follow the declaration, not the internal
    basis order.
    """
    alg = x.algebra
    if volume.algebra is not alg:
        raise ValueError("algebra mismatch")
    if len(volume.terms) != 1:
        raise ValueError("volume must be a single basis word")
    (word, coeff), = volume.terms.items()
    k = alg.word_degree(word)
    if not x.is_zero() and x.degree() != k:
        raise ValueError(f"degree mismatch: expected homogeneous degree {k}")
    return x.coefficient(word) / coeff
