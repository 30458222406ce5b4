# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled filtering kernel.  Same contract as :mod:`msetord._kernel_py`."""

from cpython cimport array
from libc.stdlib cimport malloc, free, calloc
import array as _array

cdef array.array _QTEMPLATE = _array.array("q")

BACKEND = "cython"


cdef inline int _sign(long long x) nogil:
    return (x > 0) - (x < 0)


def compare_bound_msets(const long long[::1] vals_a, const long long[::1] vars_a,
                        const long long[::1] mult_a, const long long[::1] vals_b,
                        const long long[::1] vars_b, const long long[::1] mult_b,
                        long long lo, Py_ssize_t width):
    cdef long long* diff = <long long*>calloc(width, sizeof(long long))
    cdef Py_ssize_t i, u
    cdef int result = 0
    if diff == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(vars_a.shape[0]):
                diff[vals_a[vars_a[i]] - lo] += mult_a[i]
            for i in range(vars_b.shape[0]):
                diff[vals_b[vars_b[i]] - lo] -= mult_b[i]
            u = width - 1
            while u >= 0:
                if diff[u] != 0:
                    result = _sign(diff[u])
                    break
                u -= 1
    finally:
        free(diff)
    return result


cdef array.array _copy_out(long long* src, Py_ssize_t n):
    cdef array.array out = array.clone(_QTEMPLATE, n, zero=False)
    cdef Py_ssize_t i
    for i in range(n):
        out.data.as_longlongs[i] = src[i]
    return out


cdef struct _State:
    long long* diff
    Py_ssize_t* prev_nz
    Py_ssize_t top


cdef inline int _swap_sign(_State* s, Py_ssize_t p, Py_ssize_t q, long long k) nogil:
    cdef long long t
    cdef Py_ssize_t w
    if s.top > p:
        return _sign(s.diff[s.top])
    if s.top == p:
        t = s.diff[p] + k
        if t != 0:
            return _sign(t)
    else:
        return 1
    w = s.prev_nz[p]
    if w > q:
        return _sign(s.diff[w])
    if w == q:
        t = s.diff[q] - k
        if t != 0:
            return _sign(t)
        w = s.prev_nz[q]
        if w >= 0:
            return _sign(s.diff[w])
        return 0
    return -1


cdef inline bint _accept(int s, bint strict) nogil:
    if strict:
        return s < 0
    return s <= 0


def msetord_filter(const long long[::1] mins, const long long[::1] maxs,
                   const long long[::1] xvars, const long long[::1] xmult,
                   const long long[::1] yvars, const long long[::1] ymult,
                   long long lo, Py_ssize_t width, bint strict):
    cdef _State s
    cdef Py_ssize_t i, u, top, f, c, below, ub, lb
    cdef Py_ssize_t nx = xvars.shape[0], ny = yvars.shape[0]
    cdef long long k, t, v
    cdef Py_ssize_t n_xp = 0, n_yp = 0
    cdef long long* xp_var
    cdef long long* xp_bound
    cdef long long* yp_var
    cdef long long* yp_bound
    cdef bint ok

    s.diff = <long long*>calloc(width, sizeof(long long))
    s.prev_nz = <Py_ssize_t*>malloc(width * sizeof(Py_ssize_t))
    xp_var = <long long*>malloc((nx + 1) * sizeof(long long))
    xp_bound = <long long*>malloc((nx + 1) * sizeof(long long))
    yp_var = <long long*>malloc((ny + 1) * sizeof(long long))
    yp_bound = <long long*>malloc((ny + 1) * sizeof(long long))
    try:
        if (s.diff == NULL or s.prev_nz == NULL or xp_var == NULL or xp_bound == NULL
                or yp_var == NULL or yp_bound == NULL):
            raise MemoryError()
        with nogil:
            for i in range(nx):
                s.diff[mins[xvars[i]] - lo] += xmult[i]
            for i in range(ny):
                s.diff[maxs[yvars[i]] - lo] -= ymult[i]
            top = -1
            for u in range(width):
                s.prev_nz[u] = top
                if s.diff[u] != 0:
                    top = u
            s.top = top
            if top >= 0:
                ok = _accept(_sign(s.diff[top]), strict)
            else:
                ok = _accept(0, strict)

            if ok:
                for i in range(nx):
                    v = xvars[i]
                    f = mins[v] - lo
                    if top < 0 or f >= top:
                        ub = f
                    elif _accept(_swap_sign(&s, top, f, xmult[i]), strict):
                        ub = top
                    else:
                        ub = top - 1
                    if ub + lo < maxs[v]:
                        xp_var[n_xp] = v
                        xp_bound[n_xp] = ub + lo
                        n_xp += 1

                for i in range(ny):
                    v = yvars[i]
                    k = ymult[i]
                    c = maxs[v] - lo
                    if top < 0 or c > top:
                        lb = c
                    elif c < top:
                        continue
                    else:
                        t = s.diff[top] + k
                        if t < 0:
                            continue
                        if t > 0:
                            lb = c
                        else:
                            below = s.prev_nz[top]
                            if below < 0 or s.diff[below] < 0:
                                continue
                            if _accept(_swap_sign(&s, top, below, k), strict):
                                lb = below
                            else:
                                lb = below + 1
                    if lb + lo > mins[v]:
                        yp_var[n_yp] = v
                        yp_bound[n_yp] = lb + lo
                        n_yp += 1

        if not ok:
            return False, None
        return True, (_copy_out(xp_var, n_xp), _copy_out(xp_bound, n_xp),
                      _copy_out(yp_var, n_yp), _copy_out(yp_bound, n_yp))
    finally:
        free(s.diff)
        free(s.prev_nz)
        free(xp_var)
        free(xp_bound)
        free(yp_var)
        free(yp_bound)
