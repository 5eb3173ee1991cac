# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: OpenMP workers, lock-free CAS on 64-bit cells."""

from cython.parallel cimport prange
from libc.stdint cimport uint32_t, uint64_t, int64_t

cimport openmp

BACKEND = "compiled"


cdef extern from "_atomic.h" nogil:
    uint64_t tmt_load(uint64_t *p)
    void tmt_store(uint64_t *p, uint64_t w)
    int tmt_cas(uint64_t *p, uint64_t expected, uint64_t desired)


cdef inline bint less(const double *f, uint64_t a, uint64_t b) noexcept nogil:
    return f[a] < f[b] or (f[a] == f[b] and a < b)


cdef uint64_t _merge(const double *f, uint64_t *T, uint64_t u, uint64_t s, uint64_t v,
                     uint64_t *failures) noexcept nogil:
    """Returns the number of CAS attempts; bumps failures in place."""
    cdef uint64_t cu, cv, s_u, s_v, u_next, v_next, tmp
    cdef uint64_t attempts = 0
    while True:
        cu = tmt_load(&T[u])
        s_u = cu >> 32
        u_next = cu & 0xFFFFFFFFULL
        if u_next != u and less(f, s_u, s):
            u = u_next
            continue
        cv = tmt_load(&T[v])
        s_v = cv >> 32
        v_next = cv & 0xFFFFFFFFULL
        if v_next != v and less(f, s_v, s):
            v = v_next
            continue
        if u == v:
            return attempts
        if less(f, v, u):
            tmp = u; u = v; v = tmp
            tmp = cu; cu = cv; cv = tmp
            tmp = s_u; s_u = s_v; s_v = tmp
            tmp = u_next; u_next = v_next; v_next = tmp
        attempts += 1
        if tmt_cas(&T[v], cv, (s << 32) | u):
            if v_next == v:
                return attempts
            s = s_v
            v = v_next
        else:
            failures[0] += 1


cdef inline uint64_t _merge_edge(const double *f, uint64_t *T, uint64_t a, uint64_t b,
                                 uint64_t *failures) noexcept nogil:
    if a == b:
        return 0
    if less(f, b, a):
        return _merge(f, T, a, a, b, failures)
    return _merge(f, T, b, b, a, failures)


cdef inline bint _key_le(const double *f, uint64_t s, double a_value, int64_t a_tie) noexcept nogil:
    return f[s] < a_value or (f[s] == a_value and <int64_t>s <= a_tie)


cdef uint64_t _representative(const double *f, uint64_t *T, uint64_t u,
                              double a_value, int64_t a_tie) noexcept nogil:
    cdef uint64_t w = tmt_load(&T[u])
    cdef uint64_t s = w >> 32
    cdef uint64_t v = w & 0xFFFFFFFFULL
    while s != v and _key_le(f, s, a_value, a_tie):
        u = v
        w = tmt_load(&T[u])
        s = w >> 32
        v = w & 0xFFFFFFFFULL
    return u


cdef inline void _repair(const double *f, uint64_t *T, uint64_t u) noexcept nogil:
    cdef uint64_t w = tmt_load(&T[u])
    cdef uint64_t s = w >> 32
    cdef uint64_t rep = _representative(f, T, u, f[s], <int64_t>s)
    if rep != u:
        tmt_store(&T[u], (s << 32) | rep)


def init_cells(uint64_t[::1] out, int workers=1):
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t u
    if n == 0:
        return
    for u in prange(n, nogil=True, num_threads=workers, schedule="static"):
        out[u] = (<uint64_t>u << 32) | <uint64_t>u


def merge_grid(const double[::1] values, uint64_t[::1] out,
               Py_ssize_t nx, Py_ssize_t ny, Py_ssize_t nz, int workers=1):
    """Merge all 6-neighbour edges of the grid; returns (attempts, failures)."""
    cdef Py_ssize_t n = nx * ny * nz
    cdef Py_ssize_t u, x, y, z
    cdef Py_ssize_t nxy = nx * ny
    cdef uint64_t attempts = 0
    cdef uint64_t failures = 0
    cdef uint64_t fail_local
    cdef const double *f
    cdef uint64_t *T
    if n == 0:
        return 0, 0
    f = &values[0]
    T = &out[0]
    for u in prange(n, nogil=True, num_threads=workers, schedule="dynamic", chunksize=4096):
        fail_local = 0
        x = u % nx
        y = (u // nx) % ny
        z = u // nxy
        if x + 1 < nx:
            attempts += _merge_edge(f, T, u, u + 1, &fail_local)
        if y + 1 < ny:
            attempts += _merge_edge(f, T, u, u + nx, &fail_local)
        if z + 1 < nz:
            attempts += _merge_edge(f, T, u, u + nxy, &fail_local)
        failures += fail_local
    return attempts, failures


def merge_edge_list(const double[::1] values, uint64_t[::1] out,
                    const uint32_t[:, ::1] edges, int workers=1):
    cdef Py_ssize_t m = edges.shape[0]
    cdef Py_ssize_t i
    cdef uint64_t attempts = 0
    cdef uint64_t failures = 0
    cdef uint64_t fail_local
    cdef const double *f
    cdef uint64_t *T
    if m == 0:
        return 0, 0
    f = &values[0]
    T = &out[0]
    for i in prange(m, nogil=True, num_threads=workers, schedule="dynamic", chunksize=1024):
        fail_local = 0
        attempts += _merge_edge(f, T, edges[i, 0], edges[i, 1], &fail_local)
        failures += fail_local
    return attempts, failures


def repair_all(const double[::1] values, uint64_t[::1] out, int workers=1):
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t u
    if n == 0:
        return
    for u in prange(n, nogil=True, num_threads=workers, schedule="dynamic", chunksize=4096):
        _repair(&values[0], &out[0], u)


def merge_triplet_once(const double[::1] values, uint64_t[::1] out,
                       uint64_t u, uint64_t s, uint64_t v):
    cdef uint64_t failures = 0
    cdef uint64_t attempts = _merge(&values[0], &out[0], u, s, v, &failures)
    return attempts, failures


def merge_edge_once(const double[::1] values, uint64_t[::1] out, uint64_t a, uint64_t b):
    cdef uint64_t failures = 0
    cdef uint64_t attempts = _merge_edge(&values[0], &out[0], a, b, &failures)
    return attempts, failures


def representative_once(const double[::1] values, uint64_t[::1] out,
                        uint64_t u, double a_value, int64_t a_tie):
    return _representative(&values[0], &out[0], u, a_value, a_tie)


def repair_once(const double[::1] values, uint64_t[::1] out, uint64_t u):
    _repair(&values[0], &out[0], u)


def max_threads():
    return openmp.omp_get_max_threads()
