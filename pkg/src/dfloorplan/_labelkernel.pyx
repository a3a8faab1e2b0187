# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled label rewriting kernel.

Same byte encoding and results as ``_kernel_py``; see that module.
"""
from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memcmp, memcpy

cdef enum:
    DOTV = 255


cdef inline int _axis(const unsigned char* w, int d) noexcept nogil:
    cdef int j
    for j in range(d):
        if w[j] == DOTV:
            return j
    return -1


cdef inline int _less(const unsigned char* a, int axa, const unsigned char* b, int axb, int d) noexcept nogil:
    if axa != axb:
        return axa < axb
    return memcmp(a, b, d) < 0


cdef int _rewrite(const unsigned char* key, int m, int d, int idx,
                  unsigned char* work, int* axes, int* order,
                  unsigned char* out) except -1:
    """Write the child label of ``key`` for vector ``idx`` into ``out``.

    ``work`` must hold (m + d) * d bytes; ``axes``/``order`` m + d ints.
    Returns the number of vectors written.
    """
    cdef const unsigned char* v = key + idx * d
    cdef const unsigned char* w
    cdef int i = _axis(v, d)
    cdef int t, j, ia, cnt = 0, top = -1, shadowed, k, r, a
    cdef unsigned char rank[256]
    cdef unsigned char* row

    for t in range(m):
        w = key + t * d
        ia = _axis(w, d)
        shadowed = 0
        for j in range(d):
            if j != i and j != ia and w[j] > v[j]:
                shadowed = 1
                break
        if shadowed:
            continue
        memcpy(work + cnt * d, w, d)
        axes[cnt] = ia
        cnt += 1
        if ia != i and w[i] > top:
            top = w[i]
    top += 1
    if top >= DOTV:
        raise OverflowError("label rank exceeds 254")
    for j in range(d):
        if j == i:
            continue
        row = work + cnt * d
        memcpy(row, v, d)
        row[i] = <unsigned char>top
        row[j] = DOTV
        axes[cnt] = j
        cnt += 1

    # dense re-rank per coordinate
    for j in range(d):
        for r in range(256):
            rank[r] = 0
        for t in range(cnt):
            rank[work[t * d + j]] = 1
        k = 0
        for r in range(255):
            if rank[r]:
                rank[r] = <unsigned char>k
                k += 1
        rank[DOTV] = DOTV
        for t in range(cnt):
            work[t * d + j] = rank[work[t * d + j]]

    # insertion sort of row indices by (axis, entries)
    for t in range(cnt):
        order[t] = t
    for t in range(1, cnt):
        a = order[t]
        k = t - 1
        while k >= 0 and _less(work + a * d, axes[a], work + order[k] * d, axes[order[k]], d):
            order[k + 1] = order[k]
            k -= 1
        order[k + 1] = a

    r = 0
    for t in range(cnt):
        a = order[t]
        if r > 0 and memcmp(out + (r - 1) * d, work + a * d, d) == 0:
            continue
        memcpy(out + r * d, work + a * d, d)
        r += 1
    return r


cdef class _Workspace:
    cdef unsigned char* work
    cdef unsigned char* out
    cdef int* axes
    cdef int* order
    cdef int cap
    cdef int width

    def __cinit__(self):
        self.cap = 0
        self.width = 0
        self.work = NULL
        self.out = NULL
        self.axes = NULL
        self.order = NULL

    cdef int ensure(self, int rows, int d) except -1:
        if rows <= self.cap and d <= self.width:
            return 0
        self.release()
        self.cap = rows * 2
        self.width = d
        self.work = <unsigned char*>malloc(self.cap * d)
        self.out = <unsigned char*>malloc(self.cap * d)
        self.axes = <int*>malloc(self.cap * sizeof(int))
        self.order = <int*>malloc(self.cap * sizeof(int))
        if not (self.work and self.out and self.axes and self.order):
            raise MemoryError()
        return 0

    cdef void release(self):
        free(self.work)
        free(self.out)
        free(self.axes)
        free(self.order)
        self.work = NULL
        self.out = NULL
        self.axes = NULL
        self.order = NULL
        self.cap = 0

    def __dealloc__(self):
        self.release()


cdef _Workspace _ws = _Workspace()


def rewrite_key(bytes key, int d, int idx):
    cdef int m = len(key) // d
    if idx < 0 or idx >= m:
        raise IndexError(idx)
    _ws.ensure(m + d, d)
    cdef int r = _rewrite(<const unsigned char*>PyBytes_AS_STRING(key), m, d, idx,
                          _ws.work, _ws.axes, _ws.order, _ws.out)
    return PyBytes_FromStringAndSize(<char*>_ws.out, r * d)


def expand_key(bytes key, int d):
    cdef int m = len(key) // d
    cdef int t
    return [rewrite_key(key, d, t) for t in range(m)]


def expand_frontier(dict frontier, int d):
    cdef dict out = {}
    cdef bytes key, child
    cdef int m, t, r
    cdef const unsigned char* kp
    for key, count in frontier.items():
        m = len(key) // d
        _ws.ensure(m + d, d)
        kp = <const unsigned char*>PyBytes_AS_STRING(key)
        for t in range(m):
            r = _rewrite(kp, m, d, t, _ws.work, _ws.axes, _ws.order, _ws.out)
            child = PyBytes_FromStringAndSize(<char*>_ws.out, r * d)
            prev = out.get(child)
            out[child] = count if prev is None else prev + count
    return out
