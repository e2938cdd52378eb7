# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel on int64 with overflow detection.

Performs exactly the elementary operations of ``kkcalc._snf_py.snf_kernel``.
Every multiply/add is checked; on overflow ``OverflowError`` is raised and the
caller re-runs the pure-Python bigint kernel, so results are always exact.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libc.limits cimport LLONG_MIN

cdef extern from *:
    """
    static int kk_mul_add(long long a, long long q, long long b, long long *out) {
        /* out = a + q*b, returns nonzero on overflow */
        long long t;
        if (__builtin_mul_overflow(q, b, &t)) return 1;
        return __builtin_add_overflow(a, t, out);
    }
    static int kk_neg(long long a, long long *out) {
        return __builtin_sub_overflow((long long)0, a, out);
    }
    """
    int kk_mul_add(long long a, long long q, long long b, long long *out) noexcept nogil
    int kk_neg(long long a, long long *out) noexcept nogil


cdef inline long long floordiv(long long a, long long b) noexcept nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long nearest_quotient(long long a, long long b) noexcept nogil:
    # |b| >= 1 and b != LLONG_MIN are guaranteed by the caller (pivot choice)
    cdef long long q = floordiv(a, b)
    cdef long long r = a - q * b
    cdef long long ar = r if r >= 0 else -r
    cdef long long ab = b if b >= 0 else -b
    if ar > ab - ar:
        q += 1
    return q


cdef inline long long absll(long long a) noexcept nogil:
    return -a if a < 0 else a


cdef class _Work:
    cdef long long *D
    cdef long long *U
    cdef long long *Ui
    cdef long long *V
    cdef long long *Vi
    cdef Py_ssize_t m, n

    def __cinit__(self, Py_ssize_t m, Py_ssize_t n):
        self.m = m
        self.n = n
        self.D = <long long *> malloc(max(m * n, 1) * sizeof(long long))
        self.U = <long long *> malloc(max(m * m, 1) * sizeof(long long))
        self.Ui = <long long *> malloc(max(m * m, 1) * sizeof(long long))
        self.V = <long long *> malloc(max(n * n, 1) * sizeof(long long))
        self.Vi = <long long *> malloc(max(n * n, 1) * sizeof(long long))
        if not (self.D and self.U and self.Ui and self.V and self.Vi):
            raise MemoryError()
        memset(self.U, 0, max(m * m, 1) * sizeof(long long))
        memset(self.Ui, 0, max(m * m, 1) * sizeof(long long))
        memset(self.V, 0, max(n * n, 1) * sizeof(long long))
        memset(self.Vi, 0, max(n * n, 1) * sizeof(long long))
        cdef Py_ssize_t i
        for i in range(m):
            self.U[i * m + i] = 1
            self.Ui[i * m + i] = 1
        for i in range(n):
            self.V[i * n + i] = 1
            self.Vi[i * n + i] = 1

    def __dealloc__(self):
        free(self.D)
        free(self.U)
        free(self.Ui)
        free(self.V)
        free(self.Vi)

    cdef void swap_rows(self, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
        cdef Py_ssize_t k
        cdef long long t
        cdef Py_ssize_t m = self.m, n = self.n
        for k in range(n):
            t = self.D[i * n + k]; self.D[i * n + k] = self.D[j * n + k]; self.D[j * n + k] = t
        for k in range(m):
            t = self.U[i * m + k]; self.U[i * m + k] = self.U[j * m + k]; self.U[j * m + k] = t
        for k in range(m):
            t = self.Ui[k * m + i]; self.Ui[k * m + i] = self.Ui[k * m + j]; self.Ui[k * m + j] = t

    cdef void swap_cols(self, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
        cdef Py_ssize_t k
        cdef long long t
        cdef Py_ssize_t m = self.m, n = self.n
        for k in range(m):
            t = self.D[k * n + i]; self.D[k * n + i] = self.D[k * n + j]; self.D[k * n + j] = t
        for k in range(n):
            t = self.V[k * n + i]; self.V[k * n + i] = self.V[k * n + j]; self.V[k * n + j] = t
        for k in range(n):
            t = self.Vi[i * n + k]; self.Vi[i * n + k] = self.Vi[j * n + k]; self.Vi[j * n + k] = t

    cdef int add_row(self, Py_ssize_t dst, Py_ssize_t src, long long q) noexcept nogil:
        cdef Py_ssize_t k
        cdef Py_ssize_t m = self.m, n = self.n
        cdef long long nq
        for k in range(n):
            if kk_mul_add(self.D[dst * n + k], q, self.D[src * n + k], &self.D[dst * n + k]):
                return 1
        for k in range(m):
            if kk_mul_add(self.U[dst * m + k], q, self.U[src * m + k], &self.U[dst * m + k]):
                return 1
        if kk_neg(q, &nq):
            return 1
        for k in range(m):
            if kk_mul_add(self.Ui[k * m + src], nq, self.Ui[k * m + dst], &self.Ui[k * m + src]):
                return 1
        return 0

    cdef int add_col(self, Py_ssize_t dst, Py_ssize_t src, long long q) noexcept nogil:
        cdef Py_ssize_t k
        cdef Py_ssize_t m = self.m, n = self.n
        cdef long long nq
        for k in range(m):
            if kk_mul_add(self.D[k * n + dst], q, self.D[k * n + src], &self.D[k * n + dst]):
                return 1
        for k in range(n):
            if kk_mul_add(self.V[k * n + dst], q, self.V[k * n + src], &self.V[k * n + dst]):
                return 1
        if kk_neg(q, &nq):
            return 1
        for k in range(n):
            if kk_mul_add(self.Vi[src * n + k], nq, self.Vi[dst * n + k], &self.Vi[src * n + k]):
                return 1
        return 0

    cdef int negate_row(self, Py_ssize_t t) noexcept nogil:
        cdef Py_ssize_t k
        cdef Py_ssize_t m = self.m, n = self.n
        for k in range(n):
            if kk_neg(self.D[t * n + k], &self.D[t * n + k]):
                return 1
        for k in range(m):
            if kk_neg(self.U[t * m + k], &self.U[t * m + k]):
                return 1
        for k in range(m):
            if kk_neg(self.Ui[k * m + t], &self.Ui[k * m + t]):
                return 1
        return 0

    cdef int run(self) noexcept nogil:
        cdef Py_ssize_t m = self.m, n = self.n
        cdef Py_ssize_t t = 0, i, j, bi, bj, bad
        cdef long long best, x, p, q, ax
        cdef long long *D = self.D
        cdef int found
        while t < m and t < n:
            found = 0
            best = 0
            bi = 0
            bj = 0
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i * n + j]
                    if x != 0:
                        if x == LLONG_MIN:
                            return 1
                        ax = absll(x)
                        if not found or ax < best:
                            found = 1
                            best = ax
                            bi = i
                            bj = j
            if not found:
                break
            if bi != t:
                self.swap_rows(t, bi)
            if bj != t:
                self.swap_cols(t, bj)

            while True:
                p = D[t * n + t]
                for i in range(t + 1, m):
                    if D[i * n + t] != 0:
                        q = nearest_quotient(D[i * n + t], p)
                        if kk_neg(q, &q):
                            return 1
                        if self.add_row(i, t, q):
                            return 1
                for j in range(t + 1, n):
                    if D[t * n + j] != 0:
                        q = nearest_quotient(D[t * n + j], p)
                        if kk_neg(q, &q):
                            return 1
                        if self.add_col(j, t, q):
                            return 1

                found = 0
                best = 0
                bi = -1
                bj = -1
                for i in range(t + 1, m):
                    x = D[i * n + t]
                    if x != 0:
                        ax = absll(x)
                        if not found or ax < best:
                            found = 1
                            best = ax
                            bi = i
                            bj = -1
                for j in range(t + 1, n):
                    x = D[t * n + j]
                    if x != 0:
                        ax = absll(x)
                        if not found or ax < best:
                            found = 1
                            best = ax
                            bi = -1
                            bj = j
                if found:
                    if bi >= 0:
                        self.swap_rows(t, bi)
                    else:
                        self.swap_cols(t, bj)
                    continue

                bad = -1
                if p == 1 or p == -1:
                    break
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i * n + j] % p != 0:
                            bad = i
                            break
                    if bad >= 0:
                        break
                if bad >= 0:
                    if self.add_row(t, bad, 1):
                        return 1
                    continue
                break

            if D[t * n + t] < 0:
                if self.negate_row(t):
                    return 1
            t += 1
        return 0


def snf_kernel(a, Py_ssize_t m, Py_ssize_t n):
    """Same contract as the pure kernel; raises OverflowError outside int64."""
    cdef _Work w = _Work(m, n)
    cdef Py_ssize_t i, j
    cdef int status
    for i in range(m):
        row = a[i]
        for j in range(n):
            w.D[i * n + j] = <long long> row[j]
    with nogil:
        status = w.run()
    if status:
        raise OverflowError("int64 range exceeded in Smith normal form kernel")
    D = [[w.D[i * n + j] for j in range(n)] for i in range(m)]
    U = [[w.U[i * m + j] for j in range(m)] for i in range(m)]
    Ui = [[w.Ui[i * m + j] for j in range(m)] for i in range(m)]
    V = [[w.V[i * n + j] for j in range(n)] for i in range(n)]
    Vi = [[w.Vi[i * n + j] for j in range(n)] for i in range(n)]
    return U, D, V, Ui, Vi
