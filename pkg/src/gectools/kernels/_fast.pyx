# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled character distance kernels.

Semantics must stay in lockstep with the pure-Python twin in _pure.py:
the test suite asserts byte-identical results between the two backends.
"""

from libc.stdlib cimport free, malloc


cdef int _dl(str a, str b, int cutoff) except -2:
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(b)
    cdef Py_ssize_t i, j
    cdef int cost, val, best, t
    cdef Py_UCS4 ca
    cdef int *prev2
    cdef int *prev
    cdef int *cur
    cdef int *tmp

    if n == 0:
        return <int> m
    if m == 0:
        return <int> n
    if cutoff >= 0:
        t = <int> (n - m if n > m else m - n)
        if t > cutoff:
            return cutoff + 1

    prev2 = <int *> malloc(sizeof(int) * (m + 1))
    prev = <int *> malloc(sizeof(int) * (m + 1))
    cur = <int *> malloc(sizeof(int) * (m + 1))
    if prev2 == NULL or prev == NULL or cur == NULL:
        free(prev2)
        free(prev)
        free(cur)
        raise MemoryError()

    for j in range(m + 1):
        prev[j] = <int> j
        prev2[j] = 0
        cur[j] = 0

    for i in range(1, n + 1):
        ca = a[i - 1]
        cur[0] = <int> i
        best = <int> i
        for j in range(1, m + 1):
            cost = 0 if ca == b[j - 1] else 1
            val = prev[j - 1] + cost
            if prev[j] + 1 < val:
                val = prev[j] + 1
            if cur[j - 1] + 1 < val:
                val = cur[j - 1] + 1
            if i > 1 and j > 1 and ca == b[j - 2] and a[i - 2] == b[j - 1]:
                if prev2[j - 2] + 1 < val:
                    val = prev2[j - 2] + 1
            cur[j] = val
            if val < best:
                best = val
        if cutoff >= 0 and best > cutoff:
            free(prev2)
            free(prev)
            free(cur)
            return cutoff + 1
        tmp = prev2
        prev2 = prev
        prev = cur
        cur = tmp

    val = prev[m]
    free(prev2)
    free(prev)
    free(cur)
    return val


def dl_distance(str a, str b, int cutoff=-1):
    """Restricted Damerau-Levenshtein distance between two strings.

    Unit costs for insertion, deletion, substitution and transposition of
    adjacent characters.  With cutoff >= 0 the scan may stop early; any
    return value greater than cutoff only means the true distance exceeds
    cutoff.
    """
    return _dl(a, b, cutoff)


def lcs_length(str a, str b):
    """Length of the longest common subsequence of two strings."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(b)
    cdef Py_ssize_t i, j
    cdef int val
    cdef Py_UCS4 ca
    cdef int *prev
    cdef int *cur
    cdef int *tmp

    if n == 0 or m == 0:
        return 0
    prev = <int *> malloc(sizeof(int) * (m + 1))
    cur = <int *> malloc(sizeof(int) * (m + 1))
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    for j in range(m + 1):
        prev[j] = 0
        cur[j] = 0
    for i in range(1, n + 1):
        ca = a[i - 1]
        for j in range(1, m + 1):
            if ca == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = prev[j] if prev[j] >= cur[j - 1] else cur[j - 1]
        tmp = prev
        prev = cur
        cur = tmp
    val = prev[m]
    free(prev)
    free(cur)
    return val


def scan_distances(str word, list candidates, int max_dist):
    """Distances from word to every candidate within max_dist.

    Returns (candidate, distance) pairs in candidate order, keeping only
    those with dl_distance(word, candidate) <= max_dist.
    """
    cdef list out = []
    cdef int d
    for cand in candidates:
        d = _dl(word, <str> cand, max_dist)
        if d <= max_dist:
            out.append((cand, d))
    return out
