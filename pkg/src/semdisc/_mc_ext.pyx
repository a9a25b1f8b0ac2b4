# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tally kernels for Monte-Carlo assignment inference.

Both kernels accumulate sums in the same index order as the numpy
fallback in `semdisc._mc_pure`, so the two backends produce bit-identical
tallies for identical input draws.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def tally_argmax(double[:, :, ::1] draws, long[:, ::1] perm_cols, long[::1] counts):
    """For each sample, find the permutation with the largest merit total
    (first maximum wins) and increment its count."""
    cdef Py_ssize_t s, p, i
    cdef Py_ssize_t n_samples = draws.shape[0]
    cdef Py_ssize_t k = draws.shape[1]
    cdef Py_ssize_t n_perms = perm_cols.shape[0]
    cdef double total, best
    cdef Py_ssize_t best_p
    with nogil:
        for s in range(n_samples):
            best = -1e308
            best_p = 0
            for p in range(n_perms):
                total = 0.0
                for i in range(k):
                    total = total + draws[s, i, perm_cols[p, i]]
                if total > best:
                    best = total
                    best_p = p
            counts[best_p] += 1


def count_positive_2x2(double[:, ::1] draws):
    """Number of samples whose 2x2 decision variable
    (d0 + d3) - (d1 + d2) is strictly positive."""
    cdef Py_ssize_t s
    cdef Py_ssize_t n_samples = draws.shape[0]
    cdef long count = 0
    with nogil:
        for s in range(n_samples):
            if (draws[s, 0] + draws[s, 3]) - (draws[s, 1] + draws[s, 2]) > 0.0:
                count += 1
    return count
