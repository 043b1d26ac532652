"""Pure-Python arithmetic kernels.

Twin of the compiled extension ``cdgalab._kernel``; both implement the same
contracts on the same data layout, so every result is bit-identical whichever
backend is loaded.

Data layout: a field value ("cv") is a sequence of ``phi + 1`` integers
``(n0, ..., n_{phi-1}, den)`` meaning the vector ``n_j / den`` in the power
basis of the cyclotomic field, with ``den > 0`` and
``gcd(n0, ..., n_{phi-1}, den) = 1``; zero is all-zero coordinates with
denominator 1.  A matrix row is a flat list of ``ncols * (phi + 1)`` ints.

``red`` is the reduction table: ``red[k]`` gives the integer coordinates of
``z**(phi + k)`` in the power basis, for ``k = 0 .. phi - 2``.
"""

from math import gcd

BACKEND = "python"


def cv_normalize(nums, den):
    """Lowest terms, positive denominator; returns a tuple cv."""
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    g = den
    for v in nums:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        den //= g
        nums = [v // g for v in nums]
    return tuple(nums) + (den,)


def cv_is_zero(a):
    for v in a[:-1]:
        if v:
            return False
    return True


def cv_neg(a):
    return tuple(-v for v in a[:-1]) + (a[-1],)


def cv_add(a, b):
    da = a[-1]
    db = b[-1]
    if da == db:
        return cv_normalize([x + y for x, y in zip(a[:-1], b[:-1])], da)
    return cv_normalize([x * db + y * da for x, y in zip(a[:-1], b[:-1])], da * db)


def cv_sub(a, b):
    da = a[-1]
    db = b[-1]
    if da == db:
        return cv_normalize([x - y for x, y in zip(a[:-1], b[:-1])], da)
    return cv_normalize([x * db - y * da for x, y in zip(a[:-1], b[:-1])], da * db)


def cv_mul(a, b, red):
    phi = len(a) - 1
    if phi == 1:
        return cv_normalize([a[0] * b[0]], a[1] * b[1])
    conv = [0] * (2 * phi - 1)
    for i in range(phi):
        ai = a[i]
        if not ai:
            continue
        for j in range(phi):
            bj = b[j]
            if bj:
                conv[i + j] += ai * bj
    # Powers z^phi .. z^(2 phi - 2) fold back via the reduction table.
    for e in range(phi, 2 * phi - 1):
        c = conv[e]
        if not c:
            continue
        row = red[e - phi]
        for j in range(phi):
            r = row[j]
            if r:
                conv[j] += c * r
    return cv_normalize(conv[:phi], a[-1] * b[-1])


# --- flat-row helpers -------------------------------------------------------

def row_entry(row, j, phi):
    w = phi + 1
    return tuple(row[j * w:(j + 1) * w])


def row_set_entry(row, j, phi, cv):
    w = phi + 1
    row[j * w:(j + 1) * w] = cv


def entry_is_zero(row, j, phi):
    base = j * (phi + 1)
    for v in row[base:base + phi]:
        if v:
            return False
    return True


def row_is_zero(row, ncols, phi):
    for j in range(ncols):
        if not entry_is_zero(row, j, phi):
            return False
    return True


def row_scale(row, c, ncols, phi, red):
    """row <- c * row, entrywise."""
    for j in range(ncols):
        if not entry_is_zero(row, j, phi):
            row_set_entry(row, j, phi, cv_mul(row_entry(row, j, phi), c, red))


def row_axpy(target, src, c, ncols, phi, red):
    """target <- target + c * src, entrywise."""
    if cv_is_zero(c):
        return
    for j in range(ncols):
        if entry_is_zero(src, j, phi):
            continue
        p = cv_mul(row_entry(src, j, phi), c, red)
        row_set_entry(target, j, phi, cv_add(row_entry(target, j, phi), p))


def rref(rows, ncols, limit, phi, red, inv):
    """In-place reduced row echelon form with deterministic pivoting.

    Pivots are searched in column order over the first ``limit`` columns
    (row operations span all ``ncols`` columns, so callers may augment).
    ``inv`` maps a nonzero cv to its multiplicative inverse cv.
    Returns ``(rank, pivot_columns)``.
    """
    one = (1,) + (0,) * (phi - 1) + (1,)
    nrows = len(rows)
    pivots = []
    piv = 0
    for col in range(limit):
        r = piv
        while r < nrows and entry_is_zero(rows[r], col, phi):
            r += 1
        if r == nrows:
            continue
        if r != piv:
            rows[piv], rows[r] = rows[r], rows[piv]
        p = row_entry(rows[piv], col, phi)
        if p != one:
            row_scale(rows[piv], inv(p), ncols, phi, red)
        for r2 in range(nrows):
            if r2 == piv:
                continue
            c = row_entry(rows[r2], col, phi)
            if not cv_is_zero(c):
                row_axpy(rows[r2], rows[piv], cv_neg(c), ncols, phi, red)
        pivots.append(col)
        piv += 1
        if piv == nrows:
            break
    return piv, pivots


def reduce_against(row, rrows, pivots, ncols, phi, red):
    """Reduce ``row`` (mutated to the remainder) against rref rows.

    Returns the list of cv coefficients, one per pivot row, such that
    original_row = sum(coeff_i * rrows[i]) + remainder.
    """
    coeffs = []
    for i, col in enumerate(pivots):
        c = row_entry(row, col, phi)
        coeffs.append(c)
        if not cv_is_zero(c):
            row_axpy(row, rrows[i], cv_neg(c), ncols, phi, red)
    return coeffs
