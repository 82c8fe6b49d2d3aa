# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense BFS kernel; same contract as the pure version.

Handles n <= 64 and nominal state counts below 2**63; the caller guards
both (the dense bitmap guard is far stricter anyway).
"""

from cpython.bytearray cimport PyByteArray_AS_STRING
from libc.stdint cimport int64_t, uint8_t, uint64_t

STATUS_FOUND = 1
STATUS_EXHAUSTED = 0
STATUS_CAP = -1


def bfs_reach_dense(object indptr, object indices, int palette,
                    object start_digits, object target_digits):
    cdef int n = len(start_digits)
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 nodes")

    cdef int m = len(indices)
    cdef int[64 + 1] ip
    cdef int v, j
    for v in range(n + 1):
        ip[v] = indptr[v]
    cdef list idx_list = list(indices)
    cdef int* idx = NULL
    cdef bytearray idx_buf = bytearray(4 * (m if m else 1))
    idx = <int*> PyByteArray_AS_STRING(idx_buf)
    for j in range(m):
        idx[j] = idx_list[j]

    cdef uint64_t[64] weights
    cdef uint64_t w = 1
    for v in range(n):
        weights[v] = w
        w *= <uint64_t> palette
    cdef uint64_t nominal = w

    cdef uint64_t start = 0, target = 0
    for v in range(n - 1, -1, -1):
        start = start * palette + <uint64_t> start_digits[v]
        target = target * palette + <uint64_t> target_digits[v]
    if start == target:
        return STATUS_FOUND, 1, 0

    cdef bytearray visited_buf = bytearray((nominal + 7) // 8)
    cdef uint8_t* visited = <uint8_t*> PyByteArray_AS_STRING(visited_buf)
    visited[start >> 3] |= <uint8_t> (1 << (start & 7))

    from array import array
    frontier = array("Q", [start])
    cdef int64_t explored = 1
    cdef int dist = 0

    cdef int[64] digits
    cdef uint64_t code, tmp, base, new_code
    cdef int old, nd, u, clash
    cdef uint64_t[:] fr
    cdef Py_ssize_t fi

    while len(frontier) > 0:
        dist += 1
        nxt = array("Q")
        fr = frontier
        for fi in range(fr.shape[0]):
            code = fr[fi]
            tmp = code
            for v in range(n):
                digits[v] = <int> (tmp % <uint64_t> palette)
                tmp //= <uint64_t> palette
            for v in range(n):
                old = digits[v]
                base = code - <uint64_t> old * weights[v]
                for nd in range(palette):
                    if nd == old:
                        continue
                    clash = 0
                    for j in range(ip[v], ip[v + 1]):
                        u = idx[j]
                        if digits[u] == nd:
                            clash = 1
                            break
                    if clash:
                        continue
                    new_code = base + <uint64_t> nd * weights[v]
                    if visited[new_code >> 3] >> (new_code & 7) & 1:
                        continue
                    if new_code == target:
                        return STATUS_FOUND, explored + 1, dist
                    visited[new_code >> 3] |= <uint8_t> (1 << (new_code & 7))
                    explored += 1
                    nxt.append(new_code)
        frontier = nxt
    return STATUS_EXHAUSTED, explored, -1
