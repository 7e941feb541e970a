# cython: boundscheck=False, wraparound=False
"""Compiled intersection kernels for posting-list and position joins.

Mirrors ``_pykernels``: sorted int64 arrays in, fresh sorted
``array.array('q')`` out.
"""

from cpython cimport array
import array


def intersect_sorted(a, b):
    """Common elements of two sorted integer sequences."""
    cdef array.array aa = a if isinstance(a, array.array) else array.array("q", a)
    cdef array.array bb = b if isinstance(b, array.array) else array.array("q", b)
    cdef long long[:] va = aa
    cdef long long[:] vb = bb
    cdef Py_ssize_t na = va.shape[0], nb = vb.shape[0]
    cdef array.array out = array.array("q")
    array.resize(out, min(na, nb))
    cdef long long[:] vo = out
    cdef Py_ssize_t i = 0, j = 0, k = 0
    while i < na and j < nb:
        if va[i] < vb[j]:
            i += 1
        elif va[i] > vb[j]:
            j += 1
        else:
            vo[k] = va[i]
            k += 1
            i += 1
            j += 1
    array.resize(out, k)
    return out


def offset_intersect(a, b, long long delta):
    """Elements x of sorted ``a`` such that ``x + delta`` occurs in sorted ``b``."""
    cdef array.array aa = a if isinstance(a, array.array) else array.array("q", a)
    cdef array.array bb = b if isinstance(b, array.array) else array.array("q", b)
    cdef long long[:] va = aa
    cdef long long[:] vb = bb
    cdef Py_ssize_t na = va.shape[0], nb = vb.shape[0]
    cdef array.array out = array.array("q")
    array.resize(out, min(na, nb))
    cdef long long[:] vo = out
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef long long shifted
    while i < na and j < nb:
        shifted = va[i] + delta
        if shifted < vb[j]:
            i += 1
        elif shifted > vb[j]:
            j += 1
        else:
            vo[k] = va[i]
            k += 1
            i += 1
            j += 1
    array.resize(out, k)
    return out
