# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels.

Twin of ``cdgalab._kernel_py`` (same contracts, same data layout, bit-identical
results); coefficients stay arbitrary-precision Python ints, the win is the
tight C dispatch of the inner loops.
"""

from math import gcd

BACKEND = "cython"


def cv_normalize(nums, den):
    """Lowest terms, positive denominator; returns a tuple cv."""
    cdef Py_ssize_t k, n
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    g = den
    n = len(nums)
    for k in range(n):
        v = nums[k]
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        den //= g
        nums = [v // g for v in nums]
    return tuple(nums) + (den,)


def cv_is_zero(a):
    cdef Py_ssize_t k, n = len(a) - 1
    for k in range(n):
        if a[k]:
            return False
    return True


def cv_neg(a):
    cdef Py_ssize_t n = len(a) - 1
    return tuple([-a[k] for k in range(n)]) + (a[n],)


def cv_add(a, b):
    cdef Py_ssize_t k, n = len(a) - 1
    da = a[n]
    db = b[n]
    if da == db:
        return cv_normalize([a[k] + b[k] for k in range(n)], da)
    return cv_normalize([a[k] * db + b[k] * da for k in range(n)], da * db)


def cv_sub(a, b):
    cdef Py_ssize_t k, n = len(a) - 1
    da = a[n]
    db = b[n]
    if da == db:
        return cv_normalize([a[k] - b[k] for k in range(n)], da)
    return cv_normalize([a[k] * db - b[k] * da for k in range(n)], da * db)


def cv_mul(a, b, red):
    cdef Py_ssize_t i, j, e, phi = len(a) - 1
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
                conv[i + j] = conv[i + j] + ai * bj
    for e in range(phi, 2 * phi - 1):
        c = conv[e]
        if not c:
            continue
        row = red[e - phi]
        for j in range(phi):
            r = row[j]
            if r:
                conv[j] = conv[j] + c * r
    return cv_normalize(conv[:phi], a[phi] * b[phi])


def row_entry(row, Py_ssize_t j, Py_ssize_t phi):
    cdef Py_ssize_t w = phi + 1
    return tuple(row[j * w:(j + 1) * w])


def row_set_entry(row, Py_ssize_t j, Py_ssize_t phi, cv):
    cdef Py_ssize_t w = phi + 1
    row[j * w:(j + 1) * w] = cv


def entry_is_zero(row, Py_ssize_t j, Py_ssize_t phi):
    cdef Py_ssize_t base = j * (phi + 1), k
    for k in range(base, base + phi):
        if row[k]:
            return False
    return True


def row_is_zero(row, Py_ssize_t ncols, Py_ssize_t phi):
    cdef Py_ssize_t j
    for j in range(ncols):
        if not entry_is_zero(row, j, phi):
            return False
    return True


def row_scale(row, c, Py_ssize_t ncols, Py_ssize_t phi, red):
    cdef Py_ssize_t j, w = phi + 1
    for j in range(ncols):
        if not entry_is_zero(row, j, phi):
            row[j * w:(j + 1) * w] = cv_mul(tuple(row[j * w:(j + 1) * w]), c, red)


def row_axpy(target, src, c, Py_ssize_t ncols, Py_ssize_t phi, red):
    cdef Py_ssize_t j, w = phi + 1
    if cv_is_zero(c):
        return
    for j in range(ncols):
        if entry_is_zero(src, j, phi):
            continue
        p = cv_mul(tuple(src[j * w:(j + 1) * w]), c, red)
        t = tuple(target[j * w:(j + 1) * w])
        target[j * w:(j + 1) * w] = cv_add(t, p)


def rref(rows, Py_ssize_t ncols, Py_ssize_t limit, Py_ssize_t phi, red, inv):
    """In-place reduced row echelon form with deterministic pivoting; see the
    pure twin for the contract."""
    cdef Py_ssize_t nrows = len(rows), piv = 0, col, r, r2
    one = (1,) + (0,) * (phi - 1) + (1,)
    pivots = []
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


def reduce_against(row, rrows, pivots, Py_ssize_t ncols, Py_ssize_t phi, red):
    """Reduce ``row`` (mutated to the remainder) against rref rows; returns
    the cv coefficients taken off each pivot row."""
    cdef Py_ssize_t i, n = len(pivots)
    coeffs = []
    for i in range(n):
        c = row_entry(row, pivots[i], phi)
        coeffs.append(c)
        if not cv_is_zero(c):
            row_axpy(row, rrows[i], cv_neg(c), ncols, phi, red)
    return coeffs
