"""Pure-Python kernels; the reference implementation of the hot loops.

The compiled twin in ``_speedups.pyx`` must match these functions exactly;
``tests/test_kernels.py`` asserts parity on random inputs.
"""

from __future__ import annotations

BACKEND = "python"


def principal_closure(m, meet, join, prod, imp, a, b):
    """Leaders of the least congruence containing (a, b).

    Seeds the pair and closes under the unary translations x -> op(x, c) and
    x -> op(c, x) of the four basic operations until fixpoint.  Tables are
    flat row-major sequences of length m*m.  Returns a list mapping each
    element to the least element of its block.
    """
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[ry] = rx
        return True

    stack = []
    if union(a, b):
        stack.append((a, b))
    tables = (meet, join, prod, imp)
    while stack:
        x, y = stack.pop()
        xm, ym = x * m, y * m
        for t in tables:
            for c in range(m):
                u, v = t[xm + c], t[ym + c]
                if union(u, v):
                    stack.append((u, v))
                cm = c * m
                u, v = t[cm + x], t[cm + y]
                if union(u, v):
                    stack.append((u, v))
    leader = [0] * m
    least = {}
    for x in range(m):
        r = find(x)
        if r not in least:
            least[r] = x
    for x in range(m):
        leader[x] = least[find(x)]
    return leader


def r_witness_grid(m, prod, leq, cmeets, cjoins, bii, tpows, ncnt, kcnt):
    """Least witness indices for the three-condition membership test.

    For a fixed generator pair, ``tpows`` holds the ncnt*kcnt candidate
    t-power values, ``cmeets[c]`` / ``cjoins[c]`` the meets/joins of c with
    the generators, and ``bii`` the flat biimplication table.  Returns a flat
    m*m list with entry n*kcnt + k for the lexicographically least witness,
    or -1 when no candidate satisfies all conditions.
    """
    out = [-1] * (m * m)
    for c in range(m):
        mc, jc = cmeets[c], cjoins[c]
        for d in range(m):
            md, jd = cmeets[d], cjoins[d]
            bi = bii[c * m + d]
            hit = -1
            for n in range(ncnt):
                base = n * kcnt
                for k in range(kcnt):
                    t = tpows[base + k]
                    tm = t * m
                    if (
                        leq[prod[tm + mc] * m + md]
                        and leq[prod[tm + md] * m + mc]
                        and leq[prod[tm + jc] * m + jd]
                        and leq[prod[tm + jd] * m + jc]
                        and leq[tm + bi]
                    ):
                        hit = base + k
                        break
                if hit >= 0:
                    break
            out[c * m + d] = hit
    return out
