"""Non-formality obstructions of triple-Massey type.

Given closed degree-2 elements a, b1, b2, b3 of a complex with each a*b_i
exact, the degree-8 class of

    x1*x2*b3 + x2*x3*b1 + x3*x1*b2,       d(x_i) = a*b_i,

is closed; when H^3 of the complex vanishes it does not depend on any of the
choices, and a nonzero value certifies non-formality.  The module computes the
class with deterministic primitives, the general triple Massey product with
its indeterminacy, and a one-sided certificate search over the degree-2
representative basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import GradedElement, wedge
from .homology import CochainComplex, CohomologyClass, CohomologyTable, cohomology, top_scalar
from .linalg import Subspace


class ObstructionInputError(ValueError):
    """A precondition on the obstruction data failed."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class ObstructionInput:
    complex: CochainComplex
    alpha: GradedElement
    betas: tuple
    volume: GradedElement

    def __post_init__(self):
        if len(self.betas) != 3:
            raise ValueError("exactly three beta inputs are required")


@dataclass
class ObstructionResult:
    primitives: tuple
    element: GradedElement
    class_coords: tuple
    scalar: object
    h3_dim: int

    def is_nonzero(self) -> bool:
        return any(not c.is_zero() for c in self.class_coords)

    def certifies_nonformality(self) -> bool:
        return self.h3_dim == 0 and self.is_nonzero()


def _require_closed(table: CohomologyTable, x: GradedElement, label: str, degree: int):
    cx = table.complex
    if not x.is_zero():
        if x.degree() != degree:
            raise ObstructionInputError(f"{label} must be homogeneous of degree {degree}")
        if not cx.contains(x, degree):
            raise ObstructionInputError(f"{label} does not lie in the working complex")
    dx = cx.d(x)
    if not dx.is_zero():
        raise ObstructionInputError(f"{label} is not closed", dx)


def obstruction(inp: ObstructionInput, table: Optional[CohomologyTable] = None,
                primitives=None) -> ObstructionResult:
    """Compute the obstruction class for validated input data.

    By default the primitives are the deterministic pivot solutions inside
    the working complex; independence from those choices is a theorem when
    h3_dim = 0 and is exercised by the test suite, not assumed here.  An
    explicit ``primitives`` triple is accepted and validated instead.
    """
    cx = inp.complex
    if table is None:
        table = cohomology(cx)
    _require_closed(table, inp.alpha, "alpha", 2)
    for i, b in enumerate(inp.betas):
        _require_closed(table, b, f"beta_{i + 1}", 2)

    if primitives is not None:
        primitives = list(primitives)
        if len(primitives) != 3:
            raise ObstructionInputError("exactly three primitives are required")
        for i, (xi, b) in enumerate(zip(primitives, inp.betas)):
            if not cx.contains(xi, 3):
                raise ObstructionInputError(
                    f"xi_{i + 1} does not lie in the working complex")
            diff = cx.d(xi) - wedge(inp.alpha, b)
            if not diff.is_zero():
                raise ObstructionInputError(
                    f"d(xi_{i + 1}) != alpha*beta_{i + 1}", diff)
    else:
        primitives = []
        for i, b in enumerate(inp.betas):
            prod = wedge(inp.alpha, b)
            xi = table.is_exact(prod, degree=4)
            if xi is None:
                cls = table.class_coords(prod, 4)
                raise ObstructionInputError(
                    f"alpha*beta_{i + 1} is not exact; its class has coordinates "
                    f"({', '.join(str(c) for c in cls)})", prod)
            primitives.append(xi)

    x1, x2, x3 = primitives
    b1, b2, b3 = inp.betas
    element = wedge(wedge(x1, x2), b3) + wedge(wedge(x2, x3), b1) + wedge(wedge(x3, x1), b2)
    residue = cx.d(element)
    assert residue.is_zero(), f"obstruction element failed to close: {residue}"

    top = cx.top
    coords = table.class_coords(element, top)
    rep = CohomologyClass(table, top, coords).representative()
    scalar = top_scalar(rep, inp.volume)
    return ObstructionResult(tuple(primitives), element, coords, scalar, table.betti[3])


@dataclass
class MasseyResult:
    class_coords: tuple
    representative: GradedElement
    indeterminacy: Subspace


def massey_triple(table: CohomologyTable, x: CohomologyClass, y: CohomologyClass,
                  z: CohomologyClass) -> MasseyResult:
    """Triple Massey product <x, y, z> with its indeterminacy subspace.

    Requires x.y = 0 and y.z = 0.  The representative is
    xi*z' - (-1)^|x| x'*zeta with d(xi) = x'*y', d(zeta) = y'*z'; the
    indeterminacy is x.H^(|y|+|z|-1) + H^(|x|+|y|-1).z.
    """
    for c in (x, y, z):
        if c.table is not table:
            raise ValueError("classes come from a different table")
    if not table.cup(x, y).is_zero():
        raise ValueError("x.y != 0: the Massey product is undefined")
    if not table.cup(y, z).is_zero():
        raise ValueError("y.z != 0: the Massey product is undefined")

    xr, yr, zr = x.representative(), y.representative(), z.representative()
    xi = table.is_exact(wedge(xr, yr), degree=x.degree + y.degree)
    zeta = table.is_exact(wedge(yr, zr), degree=y.degree + z.degree)
    assert xi is not None and zeta is not None
    rep = wedge(xi, zr)
    cross = wedge(xr, zeta)
    if x.degree % 2:
        rep = rep + cross
    else:
        rep = rep - cross
    out_deg = x.degree + y.degree + z.degree - 1
    coords = table.class_coords(rep, out_deg)

    field = table.complex.algebra.field
    rows = []
    for h in table.representatives(y.degree + z.degree - 1):
        rows.append(table.class_coords(wedge(xr, h), out_deg))
    for h in table.representatives(x.degree + y.degree - 1):
        rows.append(table.class_coords(wedge(h, zr), out_deg))
    indet = Subspace.from_vectors(field, table.betti[out_deg], rows)
    return MasseyResult(coords, rep, indet)


@dataclass
class Certificate:
    alpha_index: int
    beta_indices: tuple
    result: ObstructionResult


@dataclass
class FormalityReport:
    """One-sided verdict: a certificate proves non-formality, its absence
    proves nothing."""
    certificate: Optional[Certificate]
    tried: int
    h3_dim: int
    notes: list = dc_field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "nonformal" if self.certificate else "inconclusive"


def formality_verdict(cx: CochainComplex, search_budget: int,
                      volume: Optional[GradedElement] = None) -> FormalityReport:
    """Scan (alpha, beta1, beta2, beta3) over the H^2 representative basis.

    Candidates are enumerated in lexicographic index order; each one whose
    products alpha*beta_i are all exact is evaluated, and the first nonzero
    obstruction on a complex with H^3 = 0 is returned as a certificate.  The
    budget bounds the number of candidate tuples examined.
    """
    table = cohomology(cx)
    h3 = table.betti[3]
    if volume is None:
        top_words = cx.algebra.basis(cx.top)
        if len(top_words) != 1:
            raise ValueError("an explicit volume element is required")
        volume = cx.algebra.word_element(top_words[0])
    reps = table.representatives(2)
    n = len(reps)
    notes = []
    if h3 != 0:
        notes.append("H^3 of the complex is nonzero; the obstruction class is "
                     "choice-dependent, so no certificate can be issued")
        return FormalityReport(None, 0, h3, notes)

    # pre-tabulated exactness of representative pairs
    exact_pair = [[table.is_exact(wedge(a, b), degree=4) is not None for b in reps]
                  for a in reps]
    tried = 0
    for ia in range(n):
        for i1 in range(n):
            if not exact_pair[ia][i1]:
                continue
            for i2 in range(n):
                if not exact_pair[ia][i2]:
                    continue
                for i3 in range(n):
                    if not exact_pair[ia][i3]:
                        continue
                    if tried >= search_budget:
                        return FormalityReport(None, tried, h3, notes)
                    tried += 1
                    inp = ObstructionInput(
                        cx, reps[ia], (reps[i1], reps[i2], reps[i3]), volume)
                    result = obstruction(inp, table)
                    if result.is_nonzero():
                        return FormalityReport(
                            Certificate(ia, (i1, i2, i3), result), tried, h3, notes)
    return FormalityReport(None, tried, h3, notes)
