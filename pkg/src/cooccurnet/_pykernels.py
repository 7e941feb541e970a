"""Pure-Python fallback for the hot intersection kernels.

Same contracts as the compiled twin in ``_ckernels.pyx``: inputs are
ascending int64 ``array.array('q')`` (or any sorted int sequence), output
is a fresh ascending ``array.array('q')``.
"""

from array import array


def intersect_sorted(a, b):
    """Common elements of two sorted integer sequences."""
    out = array("q")
    i, j = 0, 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va, vb = a[i], b[j]
        if va < vb:
            i += 1
        elif va > vb:
            j += 1
        else:
            out.append(va)
            i += 1
            j += 1
    return out


def offset_intersect(a, b, delta):
    """Elements x of sorted ``a`` such that ``x + delta`` occurs in sorted ``b``."""
    out = array("q")
    i, j = 0, 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va = a[i] + delta
        vb = b[j]
        if va < vb:
            i += 1
        elif va > vb:
            j += 1
        else:
            out.append(a[i])
            i += 1
            j += 1
    return out
