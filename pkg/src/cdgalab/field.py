"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored in the power basis ``1, z, ..., z**(phi(n)-1)`` modulo
the n-th cyclotomic polynomial, as an integer coordinate vector over a single
positive denominator, fully reduced.  The representation is canonical, so
equality is coordinate-wise and elements hash cheaply.  ``n = 1`` gives plain
rationals.

Scalars print as polynomials in ``z`` with rational coefficients in
decreasing power order (``1/2*z^3 - 2``); the zero element prints as ``0``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._backend import kernel

Rational = Fraction  # exact rational scalars; arbitrary precision


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials known to divide exactly."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q[k] = c // den[-1]
        if q[k]:
            for j, d in enumerate(den):
                num[k + j] -= q[k] * d
    assert all(v == 0 for v in num)
    return q


_cyclo_cache: dict[int, list[int]] = {}


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, low power first, monic."""
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    _cyclo_cache[n] = poly
    return poly


class CycloField:
    """Descriptor of Q(zeta_n): conductor, degree and reduction tables."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"conductor must be >= 1, got {n}")
        self.n = n
        self.poly = tuple(cyclotomic_polynomial(n))
        self.phi = len(self.poly) - 1
        self.red = self._reduction_rows()
        self.pow_table = self._power_table()
        self.units = tuple(k for k in range(1, n + 1) if gcd(k, n) == 1)
        self._zero = FieldElement(self, (0,) * self.phi + (1,))
        self._one = FieldElement(self, (1,) + (0,) * (self.phi - 1) + (1,))

    def _reduction_rows(self):
        # red[k] = integer coords of z^(phi+k); Phi_n is monic so these are integral
        phi = self.phi
        base = tuple(-c for c in self.poly[:phi])
        rows = []
        row = base
        for _ in range(phi - 1):
            rows.append(row)
            shifted = [0] + list(row[: phi - 1])
            carry = row[phi - 1]
            row = tuple(s + carry * b for s, b in zip(shifted, base))
        return tuple(rows)

    def _power_table(self):
        phi = self.phi
        table = []
        row = (1,) + (0,) * (phi - 1)
        for _ in range(self.n):
            table.append(row)
            shifted = [0] + list(row[: phi - 1])
            carry = row[phi - 1]
            if carry and phi > 1:
                row = tuple(s + carry * b for s, b in zip(shifted, self.red[0]))
            elif carry:  # phi == 1: z == root of linear poly
                row = (carry * -self.poly[0],)
            else:
                row = tuple(shifted)
        return tuple(table)

    # --- constructors ---

    @property
    def zero(self) -> "FieldElement":
        return self._zero

    @property
    def one(self) -> "FieldElement":
        return self._one

    def rational(self, p, q=1) -> "FieldElement":
        f = Fraction(p, q)
        nums = [f.numerator] + [0] * (self.phi - 1)
        return FieldElement(self, kernel.cv_normalize(nums, f.denominator))

    def zeta(self, k: int = 1) -> "FieldElement":
        """The root-of-unity power z**k."""
        return FieldElement(self, self.pow_table[k % self.n] + (1,))

    def imaginary_unit(self) -> "FieldElement":
        if self.n % 4 != 0:
            raise ValueError(f"i is not available: conductor {self.n} is not divisible by 4")
        return self.zeta(self.n // 4)

    def from_coords(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.phi:
            raise ValueError(f"expected {self.phi} coordinates, got {len(coords)}")
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in coords]
        return FieldElement(self, kernel.cv_normalize(nums, den))

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field.n != self.n:
                raise ValueError(f"conductor mismatch: {value.field.n} vs {self.n}")
            return value
        return self.rational(value)

    def __repr__(self):
        return f"CycloField(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.n == self.n

    def __hash__(self):
        return hash(("CycloField", self.n))


_field_cache: dict[int, CycloField] = {}


def make_field(n: int) -> CycloField:
    """Descriptor of Q(zeta_n) with its cyclotomic polynomial and tables."""
    if n not in _field_cache:
        _field_cache[n] = CycloField(n)
    return _field_cache[n]


class FieldElement:
    """Immutable element of Q(zeta_n) in canonical power-basis form."""

    __slots__ = ("field", "cv")

    def __init__(self, field: CycloField, cv):
        self.field = field
        self.cv = tuple(cv)

    # --- coercion ---

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field.n != self.field.n:
                raise ValueError(
                    f"conductor mismatch: {self.field.n} vs {other.field.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    # --- ring operations ---

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, kernel.cv_add(self.cv, o.cv))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, kernel.cv_sub(self.cv, o.cv))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, kernel.cv_sub(o.cv, self.cv))

    def __neg__(self):
        return FieldElement(self.field, kernel.cv_neg(self.cv))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, kernel.cv_mul(self.cv, o.cv, self.field.red))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero field element")
        f = self.field
        if f.phi == 1:
            return f.rational(self.cv[1], self.cv[0])
        # norm trick: a^-1 = (prod of conjugates) / N(a), all integer arithmetic
        c = f.one
        for k in f.units[1:]:
            c = c * self.galois(k)
        nrm = self * c
        assert nrm.is_rational(), "norm of a field element must be rational"
        p, q = nrm.cv[0], nrm.cv[-1]
        return c * Fraction(q, p)

    def galois(self, k: int) -> "FieldElement":
        """The automorphism z -> z**k (k coprime to the conductor)."""
        f = self.field
        if gcd(k, f.n) != 1:
            raise ValueError(f"{k} is not coprime to the conductor {f.n}")
        nums = [0] * f.phi
        for j, a in enumerate(self.cv[:-1]):
            if a:
                row = f.pow_table[(j * k) % f.n]
                for t in range(f.phi):
                    if row[t]:
                        nums[t] += a * row[t]
        return FieldElement(f, kernel.cv_normalize(nums, self.cv[-1]))

    def conjugate(self) -> "FieldElement":
        """Complex conjugation, the automorphism z -> z**-1."""
        if self.field.n <= 2:
            return self
        return self.galois(self.field.n - 1)

    # --- predicates and views ---

    def is_zero(self) -> bool:
        return kernel.cv_is_zero(self.cv)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(v == 0 for v in self.cv[1:-1])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.cv[0], self.cv[-1])

    @property
    def coords(self) -> tuple[Fraction, ...]:
        den = self.cv[-1]
        return tuple(Fraction(v, den) for v in self.cv[:-1])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field.n == other.field.n and self.cv == other.cv

    def __hash__(self):
        return hash((self.field.n, self.cv))

    def prints_negative(self) -> bool:
        """Sign of the leading printed term (highest power)."""
        for v in reversed(self.cv[:-1]):
            if v:
                return v < 0
        return False

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"FieldElement(n={self.field.n}, {format_scalar(self)!r})"


def format_scalar(a: FieldElement) -> str:
    """Canonical textual form: z-polynomial, decreasing powers, no zero terms."""
    coords = a.coords
    parts = []
    for power in range(len(coords) - 1, -1, -1):
        c = coords[power]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if power == 0:
            body = str(mag)
        else:
            zpow = "z" if power == 1 else f"z^{power}"
            body = zpow if mag == 1 else f"{mag}*{zpow}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"
