# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled group kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def dimino_extend(const int[:, ::1] table, members, gens, long g):
    cdef cnp.ndarray[cnp.int32_t, ndim=1] mem = np.ascontiguousarray(members, dtype=np.int32)
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t h = mem.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t i, j, k, count
    for i in range(h):
        mask[mem[i]] = 1
    if mask[g]:
        return mem.copy()
    gl = [int(s) for s in gens] + [int(g)]
    cdef Py_ssize_t ng = len(gl)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] gv = np.array(gl, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] reps = np.empty(n // h + 1, dtype=np.int32)
    cdef Py_ssize_t nreps = 0
    cdef int r, x
    for i in range(h):
        out[i] = mem[i]
    count = h
    reps[0] = g
    nreps = 1
    for i in range(h):
        x = table[mem[i], g]
        mask[x] = 1
        out[count] = x
        count += 1
    k = 0
    while k < nreps:
        r = reps[k]
        for j in range(ng):
            x = table[r, gv[j]]
            if not mask[x]:
                reps[nreps] = x
                nreps += 1
                for i in range(h):
                    mask[table[mem[i], x]] = 1
                    out[count] = table[mem[i], x]
                    count += 1
        k += 1
    return out[:count].copy()


def normalizing_mask(const int[:, ::1] table, const int[::1] inv, member_mask, gens):
    cdef Py_ssize_t n = table.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mm = np.ascontiguousarray(member_mask, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok = np.ones(n, dtype=np.uint8)
    cdef Py_ssize_t x
    cdef int hh
    for hv in gens:
        hh = hv
        for x in range(n):
            if ok[x] and not mm[table[table[x, hh], inv[x]]]:
                ok[x] = 0
    return ok.astype(bool)


def conjugation_labels(const int[:, ::1] table, const int[::1] inv, gens):
    cdef Py_ssize_t n = table.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] parent = np.arange(n, dtype=np.int64)
    cdef Py_ssize_t a, ra, rb, b, t
    cdef int s
    for sv in gens:
        s = sv
        for a in range(n):
            b = table[table[s, a], inv[s]]
            ra = a
            while parent[ra] != ra:
                ra = parent[ra]
            rb = b
            while parent[rb] != rb:
                rb = parent[rb]
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    for a in range(n):
        ra = a
        while parent[ra] != ra:
            ra = parent[ra]
        parent[a] = ra
    return parent
