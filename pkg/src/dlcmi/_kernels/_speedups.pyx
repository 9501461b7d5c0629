# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled congruence-closure and witness-scan kernels.

Signatures and results mirror ``pure.py`` exactly; tables arrive as flat
row-major buffers (array('i')).
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def principal_closure(int m, int[:] meet, int[:] join, int[:] prod, int[:] imp, int a, int b):
    cdef int* parent = <int*> malloc(m * sizeof(int))
    # at most m-1 merges ever get pushed, plus the seed pair
    cdef int* stack = <int*> malloc(2 * (m + 1) * sizeof(int))
    cdef int* least = <int*> malloc(m * sizeof(int))
    if parent == NULL or stack == NULL or least == NULL:
        free(parent); free(stack); free(least)
        raise MemoryError()
    cdef int i, x, y, xm, ym, c, u, v, ru, rv, top, r
    cdef int[:] t
    try:
        for i in range(m):
            parent[i] = i
        top = 0
        ru = _find(parent, a)
        rv = _find(parent, b)
        if ru != rv:
            parent[rv] = ru
            stack[0] = a
            stack[1] = b
            top = 1
        while top > 0:
            top -= 1
            x = stack[2 * top]
            y = stack[2 * top + 1]
            xm = x * m
            ym = y * m
            for i in range(4):
                if i == 0:
                    t = meet
                elif i == 1:
                    t = join
                elif i == 2:
                    t = prod
                else:
                    t = imp
                for c in range(m):
                    u = t[xm + c]
                    v = t[ym + c]
                    ru = _find(parent, u)
                    rv = _find(parent, v)
                    if ru != rv:
                        parent[rv] = ru
                        stack[2 * top] = u
                        stack[2 * top + 1] = v
                        top += 1
                    u = t[c * m + x]
                    v = t[c * m + y]
                    ru = _find(parent, u)
                    rv = _find(parent, v)
                    if ru != rv:
                        parent[rv] = ru
                        stack[2 * top] = u
                        stack[2 * top + 1] = v
                        top += 1
        for i in range(m):
            least[i] = -1
        for i in range(m):
            r = _find(parent, i)
            if least[r] < 0:
                least[r] = i
        out = [0] * m
        for i in range(m):
            out[i] = least[_find(parent, i)]
        return out
    finally:
        free(parent)
        free(stack)
        free(least)


def r_witness_grid(int m, int[:] prod, int[:] leq, int[:] cmeets, int[:] cjoins,
                   int[:] bii, int[:] tpows, int ncnt, int kcnt):
    cdef int c, d, mc, jc, md, jd, bi, hit, n, k, t, tm, base
    out = [-1] * (m * m)
    for c in range(m):
        mc = cmeets[c]
        jc = cjoins[c]
        for d in range(m):
            md = cmeets[d]
            jd = cjoins[d]
            bi = bii[c * m + d]
            hit = -1
            for n in range(ncnt):
                base = n * kcnt
                for k in range(kcnt):
                    t = tpows[base + k]
                    tm = t * m
                    if (leq[prod[tm + mc] * m + md]
                            and leq[prod[tm + md] * m + mc]
                            and leq[prod[tm + jc] * m + jd]
                            and leq[prod[tm + jd] * m + jc]
                            and leq[tm + bi]):
                        hit = base + k
                        break
                if hit >= 0:
                    break
            out[c * m + d] = hit
    return out
